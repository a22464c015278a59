#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flattori/forms.hpp"

namespace flattori {

using Codeword = std::vector<std::int64_t>;

struct LinearCode {
    std::int64_t q = 2;
    std::size_t n = 0;
    std::vector<Codeword> generators;

    LinearCode() = default;
    // reduces generators into [0, q)
    LinearCode(std::int64_t q, std::size_t n, std::vector<Codeword> gens);
};

inline constexpr std::size_t kDefaultCodewordCap = std::size_t{1} << 20;

/// Sorted, deduplicated span of the generators over Z/qZ.
std::vector<Codeword> codewords(const LinearCode& code, std::size_t cap = kDefaultCodewordCap);

/// Basis of {x in Z^n : x mod q in C}.
LatticeBasis construction_a(const LinearCode& code);

/// Code of an integer lattice L with qZ^n in L. Without q the modulus is vol(L).
LinearCode code_of_integer_lattice(const LatticeBasis& basis, std::optional<std::int64_t> q = std::nullopt);

bool same_weight_distribution(const LinearCode& c1, const LinearCode& c2);

using Pairing = std::vector<std::pair<Codeword, Codeword>>;
/// Bijection C1 -> C2 with (c2)_k = +-(c1)_k mod q in every coordinate, if one exists.
std::optional<Pairing> absolute_pairing(const LinearCode& c1, const LinearCode& c2);

}  // namespace flattori
