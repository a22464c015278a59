#pragma once

#include <string>
#include <variant>

#include "flattori/codes.hpp"
#include "flattori/forms.hpp"

namespace flattori::catalog {

struct BasisPair {
    LatticeBasis first, second;
};
struct FormPair {
    QuadraticForm first, second;
};
struct CodePair {
    LinearCode first, second;
};

LatticeBasis dn(std::size_t n);
// n divisible by 4
LatticeBasis en(std::size_t n);
BasisPair milnor_pair();  // E8 x E8, E16
BasisPair kneser_pair();  // D12, E8 x D4
FormPair schiemann4d_pair();
IntMat conway_sloane_t(bool plus);
/// Gram forms (1/12) T+-^T diag(a,b,c,d) T+-.
FormPair conway_sloane(const Rat& a, const Rat& b, const Rat& c, const Rat& d);
BasisPair prop6dim_pair();
CodePair prop6dim_codes();
LatticeBasis vdw_basis(std::size_t n);

struct Entry {
    std::string name;
    std::variant<LatticeBasis, QuadraticForm, BasisPair, FormPair, CodePair> payload;
};

/// Lookup by name, e.g. "dn(4)", "milnor_pair", "conway_sloane(1,7,13,19)".
Entry get(const std::string& name);

}  // namespace flattori::catalog
