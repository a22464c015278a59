#include "flattori/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace flattori {

QuadraticForm::QuadraticForm(RatMat q) : q_(std::move(q)) {
    if (!is_symmetric(q_)) throw DomainError("form matrix is not symmetric");
}

LatticeBasis::LatticeBasis(RatMat a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw DomainError("basis matrix is not square");
    if (det(a_) == 0) throw DomainError("basis matrix is singular");
}

Rat LatticeBasis::volume() const { return abs(det(a_)); }

std::uint64_t RepSpectrum::at(const Rat& t) const {
    for (const auto& [v, m] : entries)
        if (v == t) return m;
    return 0;
}

bool in_zstar(const IntVec& x) {
    BigInt g = 0;
    int last_sign = 0;
    for (const auto& c : x) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (c != 0) last_sign = sgn(c);
    }
    return g == 1 && last_sign > 0;
}

bool EnumerationDomain::contains(const IntVec& x) const {
    if (tag != DomainTag::FullInteger) {
        if (!in_zstar(x)) return false;
        if (tag != DomainTag::ZStar) {
            if (x.size() != 3) throw DomainError("plane-removed domains are three-dimensional");
            switch (tag) {
                case DomainTag::ZStarMinusE1Line:
                    if (x[1] == 0 && x[2] == 0) return false;
                    break;
                case DomainTag::ZStarMinusE1E2Plane:
                    if (x[2] == 0) return false;
                    break;
                case DomainTag::ZStarMinusUnionPlanes:
                    if (x[2] == 0 || x[1] == 0) return false;
                    break;
                default:
                    break;
            }
        }
    }
    return !removed.count(x);
}

QuadraticForm gram(const LatticeBasis& basis) { return QuadraticForm(basis.matrix().transpose() * basis.matrix()); }

LatticeBasis dual_basis(const LatticeBasis& basis) { return LatticeBasis(inverse(basis.matrix()).transpose()); }

namespace {

RatMat block_diag(const RatMat& a, const RatMat& b) {
    RatMat m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

}  // namespace

LatticeBasis direct_product(const LatticeBasis& b1, const LatticeBasis& b2) {
    return LatticeBasis(block_diag(b1.matrix(), b2.matrix()));
}

QuadraticForm direct_sum(const QuadraticForm& q1, const QuadraticForm& q2) {
    return QuadraticForm(block_diag(q1.matrix(), q2.matrix()));
}

bool is_positive_definite(const QuadraticForm& q) {
    try {
        auto f = ldlt(q.matrix());
        for (const auto& d : f.D)
            if (d <= 0) return false;
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

namespace {

// Largest integer x with d (x + c)^2 <= r, assuming the feasible set is nonempty
// around -c. Float guesses are corrected by exact checks.
struct Bounds {
    long lo, hi;
    bool empty;
};

Bounds integer_range(const Rat& d, const Rat& c, const Rat& r) {
    if (r < 0) return {0, -1, true};
    auto fits = [&](long x) {
        Rat u = c + x;
        return d * u * u <= r;
    };
    double s = std::sqrt(std::max(0.0, r.get_d() / d.get_d()));
    double cd = c.get_d();
    long hi = static_cast<long>(std::floor(-cd + s));
    long lo = static_cast<long>(std::ceil(-cd - s));
    while (fits(hi + 1)) ++hi;
    while (hi >= lo && !fits(hi)) --hi;
    while (fits(lo - 1)) --lo;
    while (lo <= hi && !fits(lo)) ++lo;
    if (lo > hi) {
        // float guess may have missed a narrow window; probe the rounded center
        long m = static_cast<long>(std::llround(-cd));
        for (long x = m - 1; x <= m + 1; ++x)
            if (fits(x)) {
                lo = hi = x;
                while (fits(lo - 1)) --lo;
                while (fits(hi + 1)) ++hi;
                return {lo, hi, false};
            }
        return {0, -1, true};
    }
    return {lo, hi, false};
}

class Enumerator {
public:
    Enumerator(const QuadraticForm& q, const Rat& tmax, const EnumerationDomain& dom, const VectorSink& sink)
        : n_(q.dim()), tmax_(tmax), dom_(dom), sink_(sink), x_(n_, 0), xb_(n_) {
        if (!is_positive_definite(q)) throw DomainError("form is not positive definite");
        auto f = ldlt(q.matrix());
        L_ = std::move(f.L);
        D_ = std::move(f.D);
        zstar_ = dom.tag != DomainTag::FullInteger;
    }

    void run() {
        if (tmax_ < 0) return;
        if (n_ == 0) {
            IntVec z;
            if (dom_.contains(z)) sink_(z, Rat(0));
            return;
        }
        descend(n_ - 1, Rat(0), true);
    }

private:
    void descend(std::size_t i, const Rat& used, bool tail_zero) {
        Rat c = 0;
        for (std::size_t j = i + 1; j < n_; ++j)
            if (x_[j] != 0) c += L_(j, i) * x_[j];
        Bounds b = integer_range(D_[i], c, tmax_ - used);
        if (b.empty) return;
        long lo = b.lo;
        // on Z^n_* the last nonzero coordinate is positive
        if (zstar_ && tail_zero && lo < 0) lo = 0;
        for (long v = lo; v <= b.hi; ++v) {
            x_[i] = v;
            Rat u = c + v;
            Rat val = used + D_[i] * u * u;
            if (i == 0)
                emit(val);
            else
                descend(i - 1, val, tail_zero && v == 0);
        }
        x_[i] = 0;
    }

    void emit(const Rat& val) {
        if (zstar_) {
            long g = 0;
            for (long c : x_) g = std::gcd(g, c);
            if (g != 1) return;
        }
        for (std::size_t k = 0; k < n_; ++k) xb_[k] = x_[k];
        if (dom_.tag == DomainTag::FullInteger && dom_.removed.empty()) {
            sink_(xb_, val);
            return;
        }
        if (dom_.contains(xb_)) sink_(xb_, val);
    }

    std::size_t n_;
    Rat tmax_;
    const EnumerationDomain& dom_;
    const VectorSink& sink_;
    RatMat L_;
    RatVec D_;
    bool zstar_ = false;
    std::vector<long> x_;
    IntVec xb_;
};

}  // namespace

void enumerate_up_to(const QuadraticForm& q, const Rat& tmax, const EnumerationDomain& domain,
                     const VectorSink& sink) {
    Enumerator(q, tmax, domain, sink).run();
}

std::vector<std::pair<IntVec, Rat>> enumerate_vectors(const QuadraticForm& q, const Rat& tmax,
                                                      const EnumerationDomain& domain) {
    std::vector<std::pair<IntVec, Rat>> out;
    enumerate_up_to(q, tmax, domain, [&](const IntVec& x, const Rat& v) { out.emplace_back(x, v); });
    return out;
}

RepSpectrum representation_numbers(const QuadraticForm& q, const Rat& tmax, const EnumerationDomain& domain) {
    std::map<Rat, std::uint64_t> counts;
    enumerate_up_to(q, tmax, domain, [&](const IntVec&, const Rat& v) { ++counts[v]; });
    RepSpectrum s{tmax, {counts.begin(), counts.end()}};
    return s;
}

RepSpectrum theta_coefficients(const LatticeBasis& basis, const Rat& tmax) {
    return representation_numbers(gram(basis), tmax);
}

RepSpectrum convolve(const RepSpectrum& a, const RepSpectrum& b, const Rat& cutoff) {
    std::map<Rat, std::uint64_t> counts;
    for (const auto& [va, ma] : a.entries)
        for (const auto& [vb, mb] : b.entries) {
            Rat v = va + vb;
            if (v <= cutoff) counts[v] += ma * mb;
        }
    return RepSpectrum{cutoff, {counts.begin(), counts.end()}};
}

SpectralComparison compare_spectra(const RepSpectrum& a, const RepSpectrum& b) {
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() || j < b.entries.size()) {
        if (j == b.entries.size() || (i < a.entries.size() && a.entries[i].first < b.entries[j].first))
            return {false, a.entries[i].first, a.entries[i].second, 0};
        if (i == a.entries.size() || b.entries[j].first < a.entries[i].first)
            return {false, b.entries[j].first, 0, b.entries[j].second};
        if (a.entries[i].second != b.entries[j].second)
            return {false, a.entries[i].first, a.entries[i].second, b.entries[j].second};
        ++i, ++j;
    }
    return {};
}

SpectralComparison isospectral_up_to(const QuadraticForm& q1, const QuadraticForm& q2, const Rat& tmax) {
    return compare_spectra(representation_numbers(q1, tmax), representation_numbers(q2, tmax));
}

PoissonResult poisson_check(const LatticeBasis& basis, double t, double radius) {
    if (!(t > 0)) throw DomainError("poisson_check needs t > 0");
    const double pi = std::acos(-1.0);
    const std::size_t n = basis.dim();
    Rat r2(radius * radius);
    auto heat = [&](const QuadraticForm& g, double coef) {
        // sum in ascending magnitude for a stable total
        std::vector<double> terms;
        enumerate_up_to(g, r2, {}, [&](const IntVec&, const Rat& v) { terms.push_back(std::exp(-coef * v.get_d())); });
        std::sort(terms.begin(), terms.end());
        double s = 0;
        for (double x : terms) s += x;
        return s;
    };
    PoissonResult res;
    res.lhs = heat(gram(dual_basis(basis)), 4 * pi * pi * t);
    double vol = basis.volume().get_d();
    res.rhs = vol / std::pow(4 * pi * t, n / 2.0) * heat(gram(basis), 1.0 / (4 * t));
    res.rel_err = std::abs(res.lhs - res.rhs) / std::abs(res.rhs);
    return res;
}

}  // namespace flattori
