#include "flattori/linalg.hpp"

#include <algorithm>

namespace flattori {

Rat parse_rat(const std::string& s) {
    Rat r;
    if (s.empty() || r.set_str(s, 10) != 0) throw DomainError("malformed rational: '" + s + "'");
    if (r.get_den() == 0) throw DomainError("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

BigInt floor_rat(const Rat& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

BigInt ceil_rat(const Rat& r) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

IntMat to_int(const RatMat& m) {
    IntMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw DomainError("matrix entry is not an integer");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

namespace {

// Fraction-free (Bareiss) elimination after clearing row denominators.
// Returns the rank; *det_out receives det(m) for square full-rank input.
std::size_t eliminate(const RatMat& m, Rat* det_out) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMat a(rows, cols);
    BigInt scale = 1;
    for (std::size_t i = 0; i < rows; ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        scale *= l;
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    BigInt prev = 1;
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a(i, j) = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    if (det_out) {
        Rat d(BigInt(sign * prev), scale);
        d.canonicalize();
        *det_out = d;
    }
    return r;
}

}  // namespace

std::size_t rank(const RatMat& m) { return eliminate(m, nullptr); }

Rat det(const RatMat& m) {
    if (m.rows() != m.cols()) throw DomainError("det of non-square matrix");
    if (m.rows() == 0) return 1;
    Rat d;
    std::size_t r = eliminate(m, &d);
    return r < m.rows() ? Rat(0) : d;
}

RatMat inverse(const RatMat& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw DomainError("inverse of non-square matrix");
    RatMat a = m, inv = RatMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw DomainError("singular");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rat piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rat f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

std::pair<RatMat, Rat> inverse_det(const RatMat& m) {
    RatMat inv = inverse(m);
    return {std::move(inv), det(m)};
}

LDLT ldlt(const RatMat& q) {
    const std::size_t n = q.rows();
    if (n != q.cols()) throw DomainError("ldlt of non-square matrix");
    LDLT out{RatMat::identity(n), RatVec(n)};
    for (std::size_t j = 0; j < n; ++j) {
        Rat d = q(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= out.L(j, k) * out.L(j, k) * out.D[k];
        if (d == 0) throw DomainError("singular principal minor");
        out.D[j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rat s = q(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= out.L(i, k) * out.L(j, k) * out.D[k];
            out.L(i, j) = s / d;
        }
    }
    return out;
}

IntMat hnf(const IntMat& m) {
    const std::size_t n = m.rows(), cols = m.cols();
    IntMat a = m;
    auto col_op = [&](std::size_t j1, std::size_t j2, const BigInt& p, const BigInt& q, const BigInt& r,
                      const BigInt& s) {
        // (c1, c2) <- (p c1 + q c2, r c1 + s c2)
        for (std::size_t i = 0; i < n; ++i) {
            BigInt x = a(i, j1), y = a(i, j2);
            a(i, j1) = p * x + q * y;
            a(i, j2) = r * x + s * y;
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= cols) throw DomainError("not full rank");
        for (std::size_t j = i + 1; j < cols; ++j) {
            if (a(i, j) == 0) continue;
            BigInt g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(i, i).get_mpz_t(), a(i, j).get_mpz_t());
            BigInt u = a(i, i) / g, v = a(i, j) / g;
            col_op(i, j, s, t, BigInt(-v), u);
        }
        if (a(i, i) == 0) throw DomainError("not full rank");
        if (a(i, i) < 0)
            for (std::size_t k = 0; k < n; ++k) a(k, i) = -a(k, i);
        for (std::size_t j = 0; j < i; ++j) {
            BigInt f;
            mpz_fdiv_q(f.get_mpz_t(), a(i, j).get_mpz_t(), a(i, i).get_mpz_t());
            if (f != 0)
                for (std::size_t k = 0; k < n; ++k) a(k, j) -= f * a(k, i);
        }
    }
    IntMat h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = a(i, j);
    return h;
}

std::vector<BigInt> smith_invariants(const IntMat& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw DomainError("smith: non-square matrix");
    IntMat a = m;
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // bring a smallest nonzero entry of the trailing block to (t,t)
            std::size_t bi = n, bj = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (bi == n || abs(a(i, j)) < abs(a(bi, bj)))) bi = i, bj = j;
            if (bi == n) throw DomainError("smith: singular matrix");
            for (std::size_t j = 0; j < n; ++j) std::swap(a(t, j), a(bi, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, t), a(i, bj));
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                BigInt f = a(i, t) / a(t, t);
                if (f != 0)
                    for (std::size_t j = t; j < n; ++j) a(i, j) -= f * a(t, j);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                BigInt f = a(t, j) / a(t, t);
                if (f != 0)
                    for (std::size_t i = t; i < n; ++i) a(i, j) -= f * a(i, t);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < n && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        for (std::size_t k = t; k < n; ++k) a(t, k) += a(i, k);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
    }
    std::vector<BigInt> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = abs(a(i, i));
    return d;
}

bool is_symmetric(const RatMat& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec mat_vec(const RatMat& m, const IntVec& x) {
    RatVec y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (x[j] != 0) y[i] += m(i, j) * x[j];
    return y;
}

Rat quad_value(const RatMat& q, const IntVec& x) {
    Rat s = 0;
    for (std::size_t i = 0; i < q.rows(); ++i) {
        if (x[i] == 0) continue;
        Rat row = 0;
        for (std::size_t j = 0; j < q.cols(); ++j)
            if (x[j] != 0) row += q(i, j) * x[j];
        s += row * x[i];
    }
    return s;
}

}  // namespace flattori
