#include "flattori/modular.hpp"

namespace flattori {

namespace {

BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

RatMat scaled(const RatMat& m, const BigInt& c) {
    RatMat out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * c;
    return out;
}

// smallest c with c M integral and even on the diagonal
BigInt even_constant(const RatMat& m) {
    BigInt c = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            BigInt need = m(i, j).get_den();
            if (i == j && mpz_odd_p(m(i, j).get_num_mpz_t())) need *= 2;
            c = lcm(c, need);
        }
    return c;
}

}  // namespace

bool is_even(const QuadraticForm& q) { return even_constant(q.matrix()) == 1; }

std::pair<BigInt, QuadraticForm> even_rescale(const QuadraticForm& q) {
    if (!is_symmetric(q.matrix())) throw DomainError("matrix is not symmetric");
    BigInt c = even_constant(q.matrix());
    return {c, QuadraticForm(scaled(q.matrix(), c))};
}

BigInt level(const QuadraticForm& q) {
    if (!is_even(q)) throw DomainError("form is not even");
    if (!is_positive_definite(q)) throw DomainError("form is not positive definite");
    return even_constant(inverse(q.matrix()));
}

Rat mu0(const BigInt& n) {
    if (n < 1) throw DomainError("level must be positive");
    Rat r = n;
    BigInt m = n;
    for (BigInt p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        r *= Rat(p + 1, p);
        while (m % p == 0) m /= p;
    }
    if (m > 1) r *= Rat(m + 1, m);
    r.canonicalize();
    return r;
}

BigInt sturm_cutoff(std::size_t dim, const BigInt& n) {
    if (dim == 0 || dim % 2 != 0) throw DomainError("cutoff needs an even dimension; pad odd forms first");
    Rat x = mu0(n) * Rat(static_cast<unsigned long>(dim / 2), 12);
    return floor_rat(x) + 1;
}

QuadraticForm pad_to_even_dim(const QuadraticForm& q) {
    const std::size_t n = q.dim();
    RatMat m(n + 1, n + 1);
    m(0, 0) = 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i + 1, j + 1) = q(i, j);
    return QuadraticForm(m);
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Isospectral: return "Isospectral";
        case Verdict::NotIsospectral: return "NotIsospectral";
        case Verdict::NotApplicable: return "NotApplicable";
    }
    return "?";
}

Certificate certify_isospectral(const QuadraticForm& p, const QuadraticForm& q) {
    if (p.dim() != q.dim()) throw DomainError("forms have different dimensions");
    if (!is_positive_definite(p) || !is_positive_definite(q)) throw DomainError("form is not positive definite");
    Certificate c;
    auto [cp, ep] = even_rescale(p);
    auto [cq, eq] = even_rescale(q);
    if (cp != cq) {
        c.reason = "minimal even-rescaling constants differ (" + cp.get_str() + " vs " + cq.get_str() + ")";
        return c;
    }
    c.scale = cp;
    if (ep.dim() % 2 != 0) {
        ep = pad_to_even_dim(ep);
        eq = pad_to_even_dim(eq);
        c.padded = true;
    }
    c.det_equal = det(ep.matrix()) == det(eq.matrix());
    if (!c.det_equal) {
        c.verdict = Verdict::NotIsospectral;
        c.reason = "determinants differ";
        return c;
    }
    BigInt np = level(ep), nq = level(eq);
    c.level = np;
    if (np != nq) {
        c.verdict = Verdict::NotIsospectral;
        c.reason = "levels differ (" + np.get_str() + " vs " + nq.get_str() + ")";
        return c;
    }
    c.cutoff = sturm_cutoff(ep.dim(), np);
    // theta coefficient a_n counts vectors with x^T Q x = 2n
    c.checked_to = Rat(2 * c.cutoff);
    auto cmp = isospectral_up_to(ep, eq, c.checked_to);
    if (!cmp.equal) {
        c.verdict = Verdict::NotIsospectral;
        c.reason = "representation numbers differ";
        c.mismatch_value = cmp.value;
        c.mismatch_m1 = cmp.m1;
        c.mismatch_m2 = cmp.m2;
        return c;
    }
    c.verdict = Verdict::Isospectral;
    return c;
}

}  // namespace flattori
