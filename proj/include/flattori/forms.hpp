#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "flattori/linalg.hpp"

namespace flattori {

class QuadraticForm {
public:
    QuadraticForm() = default;
    explicit QuadraticForm(RatMat q);

    std::size_t dim() const { return q_.rows(); }
    const RatMat& matrix() const { return q_; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return q_(i, j); }
    Rat value(const IntVec& x) const { return quad_value(q_, x); }
    bool operator==(const QuadraticForm& o) const { return q_ == o.q_; }

private:
    RatMat q_;
};

class LatticeBasis {
public:
    LatticeBasis() = default;
    explicit LatticeBasis(RatMat a);

    std::size_t dim() const { return a_.rows(); }
    const RatMat& matrix() const { return a_; }
    Rat volume() const;

private:
    RatMat a_;
};

struct RepSpectrum {
    Rat cutoff;
    std::vector<std::pair<Rat, std::uint64_t>> entries;

    std::uint64_t at(const Rat& t) const;
    bool operator==(const RepSpectrum& o) const { return cutoff == o.cutoff && entries == o.entries; }
};

enum class DomainTag { FullInteger, ZStar, ZStarMinusE1Line, ZStarMinusE1E2Plane, ZStarMinusUnionPlanes };

struct EnumerationDomain {
    DomainTag tag = DomainTag::FullInteger;
    std::set<IntVec> removed;

    bool contains(const IntVec& x) const;
};

bool in_zstar(const IntVec& x);

QuadraticForm gram(const LatticeBasis& basis);
LatticeBasis dual_basis(const LatticeBasis& basis);
LatticeBasis direct_product(const LatticeBasis& b1, const LatticeBasis& b2);
QuadraticForm direct_sum(const QuadraticForm& q1, const QuadraticForm& q2);
bool is_positive_definite(const QuadraticForm& q);

using VectorSink = std::function<void(const IntVec&, const Rat&)>;

/// All x in the domain with q(x) <= tmax, ordered lexicographically with the
/// last coordinate most significant.
void enumerate_up_to(const QuadraticForm& q, const Rat& tmax, const EnumerationDomain& domain,
                     const VectorSink& sink);
std::vector<std::pair<IntVec, Rat>> enumerate_vectors(const QuadraticForm& q, const Rat& tmax,
                                                      const EnumerationDomain& domain = {});

RepSpectrum representation_numbers(const QuadraticForm& q, const Rat& tmax, const EnumerationDomain& domain = {});
RepSpectrum theta_coefficients(const LatticeBasis& basis, const Rat& tmax);
RepSpectrum convolve(const RepSpectrum& a, const RepSpectrum& b, const Rat& cutoff);

struct SpectralComparison {
    bool equal = true;
    Rat value;
    std::uint64_t m1 = 0, m2 = 0;
};
SpectralComparison compare_spectra(const RepSpectrum& a, const RepSpectrum& b);
SpectralComparison isospectral_up_to(const QuadraticForm& q1, const QuadraticForm& q2, const Rat& tmax);

struct PoissonResult {
    double lhs = 0, rhs = 0, rel_err = 0;
};
/// Dual-side heat sum against the scaled primal-side sum, both truncated to
/// lattice vectors of Euclidean length at most radius.
PoissonResult poisson_check(const LatticeBasis& basis, double t, double radius);

}  // namespace flattori
