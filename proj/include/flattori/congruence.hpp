#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flattori/forms.hpp"

namespace flattori {

/// det(Q) / U^(n-1) with U the largest absolute row sum; never exceeds the smallest eigenvalue.
Rat lambda_min_lower_bound(const QuadraticForm& q);

/// Unimodular B with B^T Q1 B = Q2, or nullopt after an exhaustive search.
std::optional<IntMat> integral_equivalence(const QuadraticForm& q1, const QuadraticForm& q2);

struct CongruenceResult {
    bool congruent = false;
    std::optional<IntMat> witness;  // B with gram(A1)[B] = gram(A2)
};
CongruenceResult lattice_congruent(const LatticeBasis& a1, const LatticeBasis& a2);

struct VectorProfile {
    std::size_t count = 0;
    // pairwise dot products over ordered pairs (a, b), both of squared length s
    std::vector<std::pair<Rat, std::uint64_t>> dots;

    bool operator==(const VectorProfile& o) const { return count == o.count && dots == o.dots; }
};
VectorProfile shortest_vector_profile(const LatticeBasis& basis, const Rat& s);

}  // namespace flattori
