#pragma once

#include <array>
#include <utility>
#include <vector>

#include "flattori/forms.hpp"

namespace flattori {

/// (q11, q22, q33, q12, q13, q23)
using Form3Vec = std::array<Rat, 6>;

Form3Vec to_form3(const QuadraticForm& q);
QuadraticForm from_form3(const Form3Vec& v);

/// Linear condition over form coordinates (diagonal first, then q_ij for i<j
/// in lexicographic order): coeffs . q >= 0, or > 0 when strict.
struct LinearCondition {
    IntRay coeffs;
    bool strict = false;
};

std::vector<LinearCondition> minkowski_conditions(std::size_t n);
bool is_minkowski_reduced(const QuadraticForm& q);

/// Coordinates of q in the order used by minkowski_conditions.
std::vector<Rat> form_coordinates(const QuadraticForm& q);

/// Successive minima lambda_1..lambda_n and a sign-normalized vector realizing each.
std::vector<std::pair<Rat, IntVec>> successive_minima(const QuadraticForm& q);

LatticeBasis greedy_reduce_basis(const LatticeBasis& basis);
/// LLL (delta = 3/4) on the form itself: unimodular U with U^T Q U reduced.
std::pair<QuadraticForm, IntMat> lll_reduce(const QuadraticForm& q);

bool is_schiemann_reduced(const Form3Vec& v);

/// The unique Schiemann-reduced representative of the class of q (dim 3).
Form3Vec schiemann_reduce(const QuadraticForm& q);

struct ConstraintCatalog {
    std::vector<IntRay> Aset;
    std::vector<IntRay> Bset;
    std::vector<std::pair<IntRay, IntRay>> Cpairs;
    std::vector<IntRay> Medges;
    // the closed system describing the closure of the reduced domain
    std::vector<IntRay> closure_system;
};

const ConstraintCatalog& schiemann_catalog();

}  // namespace flattori
