#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "flattori/forms.hpp"

namespace flattori {

/// Integer entries and even diagonal.
bool is_even(const QuadraticForm& q);
/// Smallest positive integer c with cQ even, and cQ.
std::pair<BigInt, QuadraticForm> even_rescale(const QuadraticForm& q);
/// Smallest N with N Q^-1 even.
BigInt level(const QuadraticForm& q);
/// N prod_{p | N} (1 + 1/p)
Rat mu0(const BigInt& n);
/// floor(mu0(N) k / 12) + 1 with k = dim / 2.
BigInt sturm_cutoff(std::size_t dim, const BigInt& n);
/// diag(2, Q)
QuadraticForm pad_to_even_dim(const QuadraticForm& q);

enum class Verdict { Isospectral, NotIsospectral, NotApplicable };
std::string verdict_name(Verdict v);

struct Certificate {
    bool det_equal = false;
    BigInt scale = 0;  // common even-rescaling constant
    bool padded = false;
    BigInt level = 0;
    BigInt cutoff = 0;
    Rat checked_to = 0;  // largest value x^T Q x compared, on the rescaled forms
    Verdict verdict = Verdict::NotApplicable;
    std::string reason;
    // first differing value on the rescaled forms, with both multiplicities
    Rat mismatch_value = 0;
    std::uint64_t mismatch_m1 = 0, mismatch_m2 = 0;
    // the cutoff assumes a real-valued character
    bool assumes_real_character = true;
};

Certificate certify_isospectral(const QuadraticForm& p, const QuadraticForm& q);

}  // namespace flattori
