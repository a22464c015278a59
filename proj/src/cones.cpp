#include "flattori/cones.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace flattori {

using i128 = __int128;

namespace {

i128 dot(const std::int64_t* a, const std::int64_t* b, std::size_t d) {
    i128 s = 0;
    for (std::size_t i = 0; i < d; ++i) s += static_cast<i128>(a[i]) * b[i];
    return s;
}

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Divides by the content and narrows to int64; returns false for the zero vector.
bool make_primitive(const std::vector<i128>& v, std::int64_t* out) {
    i128 g = 0;
    for (i128 x : v) g = gcd128(g, x);
    if (g == 0) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        i128 y = v[i] / g;
        if (y > INT64_MAX || y < INT64_MIN) throw OverflowError("cone ray coordinate exceeds 64 bits");
        out[i] = static_cast<std::int64_t>(y);
    }
    return true;
}

std::size_t exact_rank(const std::vector<std::int64_t>& rows, std::size_t nrows, std::size_t d) {
    if (nrows == 0) return 0;
    std::vector<i128> a(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(nrows * d));
    i128 prev = 1;
    std::size_t r = 0;
    bool overflow = false;
    for (std::size_t c = 0; c < d && r < nrows && !overflow; ++c) {
        std::size_t p = r;
        while (p < nrows && a[p * d + c] == 0) ++p;
        if (p == nrows) continue;
        if (p != r)
            for (std::size_t j = 0; j < d; ++j) std::swap(a[p * d + j], a[r * d + j]);
        for (std::size_t i = r + 1; i < nrows && !overflow; ++i) {
            for (std::size_t j = c + 1; j < d; ++j) {
                i128 x, y;
                if (__builtin_mul_overflow(a[r * d + c], a[i * d + j], &x) ||
                    __builtin_mul_overflow(a[i * d + c], a[r * d + j], &y) || __builtin_sub_overflow(x, y, &x)) {
                    overflow = true;
                    break;
                }
                a[i * d + j] = x / prev;
            }
            a[i * d + c] = 0;
        }
        prev = a[r * d + c];
        ++r;
    }
    if (!overflow) return r;
    RatMat m(nrows, d);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = Rat(static_cast<long>(rows[i * d + j]));
    return rank(m);
}

}  // namespace

IntRay primitive(const std::vector<Rat>& v) {
    BigInt l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<BigInt> w(v.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = v[i].get_num() * (l / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
    }
    IntRay out(v.size(), 0);
    if (g == 0) return out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        BigInt y = w[i] / g;
        if (!y.fits_slong_p()) throw OverflowError("ray coordinate exceeds 64 bits");
        out[i] = y.get_si();
    }
    return out;
}

/// Mutable double-description state: edges, constraints and edge/constraint incidence bits.
class ConeBuilder {
public:
    explicit ConeBuilder(std::size_t d) : d_(d) {}

    explicit ConeBuilder(const Cone& c) : d_(c.dim_) {
        for (std::size_t i = 0; i < c.closed_count(); ++i) push_constraint(c.closed_.data() + i * d_, false);
        for (std::size_t i = 0; i < c.strict_count(); ++i) push_constraint(c.strict_.data() + i * d_, true);
        E_ = c.edges_;
        nE_ = c.edge_count();
        rebuild_incidence();
    }

    void set_simplicial(const std::vector<IntRay>& normals, const std::vector<IntRay>& edges) {
        for (const auto& a : normals) push_constraint(a.data(), false);
        nE_ = edges.size();
        E_.clear();
        for (const auto& e : edges) E_.insert(E_.end(), e.begin(), e.end());
        rebuild_incidence();
    }

    void add(const std::int64_t* raw, bool strict) {
        std::vector<i128> tmp(raw, raw + d_);
        std::vector<std::int64_t> v(d_);
        if (!make_primitive(tmp, v.data())) {
            if (strict) {
                // 0 > 0 never holds
                push_constraint(v.data(), true);
                E_.clear();
                nE_ = 0;
                Z_.clear();
            }
            return;
        }
        for (std::size_t i = 0; i < nC_; ++i)
            if (std::equal(v.begin(), v.end(), C_.begin() + static_cast<std::ptrdiff_t>(i * d_))) {
                if (strict) strict_[i] = 1;
                return;
            }
        std::vector<i128> s(nE_);
        std::vector<std::size_t> pos, neg, zero;
        for (std::size_t e = 0; e < nE_; ++e) {
            s[e] = dot(v.data(), &E_[e * d_], d_);
            (s[e] > 0 ? pos : s[e] < 0 ? neg : zero).push_back(e);
        }
        std::size_t idx = push_constraint(v.data(), strict);
        if (neg.empty()) {
            for (std::size_t e : zero) set_bit(e, idx);
            return;
        }
        std::vector<std::int64_t> E2;
        std::vector<std::uint64_t> Z2;
        std::size_t n2 = 0;
        auto keep = [&](std::size_t e, bool incident) {
            E2.insert(E2.end(), E_.begin() + static_cast<std::ptrdiff_t>(e * d_),
                      E_.begin() + static_cast<std::ptrdiff_t>((e + 1) * d_));
            Z2.insert(Z2.end(), Z_.begin() + static_cast<std::ptrdiff_t>(e * W_),
                      Z_.begin() + static_cast<std::ptrdiff_t>((e + 1) * W_));
            if (incident) Z2[n2 * W_ + idx / 64] |= std::uint64_t{1} << (idx % 64);
            ++n2;
        };
        for (std::size_t e = 0; e < nE_; ++e)
            if (s[e] >= 0) keep(e, s[e] == 0);
        std::vector<std::uint64_t> common(W_);
        std::vector<i128> ray(d_);
        for (std::size_t p : pos)
            for (std::size_t n : neg) {
                if (!adjacent(p, n, common.data())) continue;
                const i128 sp = s[p], sn = -s[n];
                for (std::size_t j = 0; j < d_; ++j) {
                    i128 a, b;
                    if (__builtin_mul_overflow(sp, static_cast<i128>(E_[n * d_ + j]), &a) ||
                        __builtin_mul_overflow(sn, static_cast<i128>(E_[p * d_ + j]), &b) ||
                        __builtin_add_overflow(a, b, &ray[j]))
                        throw OverflowError("cone ray combination overflows 128 bits");
                }
                E2.resize(E2.size() + d_);
                if (!make_primitive(ray, &E2[n2 * d_])) throw DomainError("cone is not pointed");
                Z2.insert(Z2.end(), common.begin(), common.end());
                Z2[n2 * W_ + idx / 64] |= std::uint64_t{1} << (idx % 64);
                ++n2;
            }
        E_ = std::move(E2);
        Z_ = std::move(Z2);
        nE_ = n2;
    }

    Cone finish(bool prune) {
        Cone c;
        c.dim_ = d_;
        std::vector<std::size_t> order(nE_);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(&E_[a * d_], &E_[a * d_] + d_, &E_[b * d_], &E_[b * d_] + d_);
        });
        c.edges_.reserve(nE_ * d_);
        for (std::size_t e : order) c.edges_.insert(c.edges_.end(), &E_[e * d_], &E_[e * d_] + d_);
        std::size_t r = prune && nE_ > 0 ? exact_rank(E_, nE_, d_) : 0;
        for (std::size_t i = 0; i < nC_; ++i) {
            auto* a = &C_[i * d_];
            if (strict_[i]) {
                c.strict_.insert(c.strict_.end(), a, a + d_);
                continue;
            }
            if (prune && nE_ > 0) {
                std::size_t cnt = 0;
                for (std::size_t e = 0; e < nE_; ++e)
                    if (Z_[e * W_ + i / 64] >> (i % 64) & 1) ++cnt;
                if (cnt + 1 < r) continue;
            }
            c.closed_.insert(c.closed_.end(), a, a + d_);
        }
        return c;
    }

    std::size_t edge_count() const { return nE_; }

private:
    std::size_t push_constraint(const std::int64_t* v, bool strict) {
        C_.insert(C_.end(), v, v + d_);
        strict_.push_back(strict ? 1 : 0);
        std::size_t idx = nC_++;
        if (nC_ > W_ * 64) {
            std::size_t W2 = W_ + 1;
            std::vector<std::uint64_t> Z2(nE_ * W2, 0);
            for (std::size_t e = 0; e < nE_; ++e)
                for (std::size_t w = 0; w < W_; ++w) Z2[e * W2 + w] = Z_[e * W_ + w];
            Z_ = std::move(Z2);
            W_ = W2;
        }
        return idx;
    }

    void set_bit(std::size_t e, std::size_t i) { Z_[e * W_ + i / 64] |= std::uint64_t{1} << (i % 64); }

    void rebuild_incidence() {
        W_ = std::max<std::size_t>(1, (nC_ + 63) / 64);
        Z_.assign(nE_ * W_, 0);
        for (std::size_t e = 0; e < nE_; ++e)
            for (std::size_t i = 0; i < nC_; ++i)
                if (dot(&E_[e * d_], &C_[i * d_], d_) == 0) set_bit(e, i);
    }

    // Edges p, n span a 2-face iff no third edge is tight on all their common constraints.
    bool adjacent(std::size_t p, std::size_t n, std::uint64_t* common) const {
        for (std::size_t w = 0; w < W_; ++w) common[w] = Z_[p * W_ + w] & Z_[n * W_ + w];
        for (std::size_t e = 0; e < nE_; ++e) {
            if (e == p || e == n) continue;
            bool covers = true;
            for (std::size_t w = 0; w < W_; ++w)
                if (common[w] & ~Z_[e * W_ + w]) {
                    covers = false;
                    break;
                }
            if (covers) return false;
        }
        return true;
    }

    std::size_t d_;
    std::vector<std::int64_t> E_, C_;
    std::vector<char> strict_;
    std::vector<std::uint64_t> Z_;
    std::size_t nE_ = 0, nC_ = 0, W_ = 1;
};

namespace {

// Facet normals of the simplicial cone spanned by independent rays (or vice versa):
// the rows of the inverse of the matrix whose columns are the given vectors.
std::vector<IntRay> dual_simplicial(const std::vector<IntRay>& vecs, std::size_t d) {
    RatMat m(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) m(i, j) = Rat(static_cast<long>(vecs[j][i]));
    RatMat inv = inverse(m);
    std::vector<IntRay> out;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Rat> row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = inv(i, j);
        out.push_back(primitive(row));
    }
    return out;
}

std::vector<IntRay> unflatten(const std::vector<std::int64_t>& flat, std::size_t d) {
    std::vector<IntRay> out;
    if (d == 0) return out;
    for (std::size_t i = 0; i < flat.size(); i += d) out.emplace_back(flat.begin() + i, flat.begin() + i + d);
    return out;
}

}  // namespace

Cone Cone::from_system(std::size_t dim, const std::vector<IntRay>& closed, const std::vector<IntRay>& strict,
                       const std::vector<IntRay>& seed_edges) {
    if (seed_edges.size() != dim) throw DomainError("not pointed");
    RatMat m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        if (seed_edges[j].size() != dim) throw DomainError("seed edge has wrong dimension");
        for (std::size_t i = 0; i < dim; ++i) m(i, j) = Rat(static_cast<long>(seed_edges[j][i]));
    }
    if (rank(m) != dim) throw DomainError("not pointed");
    ConeBuilder b(dim);
    // seeds span a simplicial cone; its facets are the rows of the inverse
    b.set_simplicial(dual_simplicial(seed_edges, dim), seed_edges);
    for (const auto& a : closed) b.add(a.data(), false);
    for (const auto& a : strict) b.add(a.data(), true);
    return b.finish(true);
}

Cone Cone::from_constraints(std::size_t dim, const std::vector<IntRay>& closed, const std::vector<IntRay>& strict) {
    std::vector<IntRay> all = closed;
    all.insert(all.end(), strict.begin(), strict.end());
    std::vector<IntRay> pick;
    for (const auto& a : all) {
        if (a.size() != dim) throw DomainError("constraint has wrong dimension");
        RatMat m(pick.size() + 1, dim);
        for (std::size_t i = 0; i <= pick.size(); ++i) {
            const IntRay& row = i < pick.size() ? pick[i] : a;
            for (std::size_t j = 0; j < dim; ++j) m(i, j) = Rat(static_cast<long>(row[j]));
        }
        if (rank(m) == pick.size() + 1) pick.push_back(a);
        if (pick.size() == dim) break;
    }
    if (pick.size() != dim) throw DomainError("not pointed");
    std::vector<IntRay> seeds = dual_simplicial(pick, dim);
    // columns of the inverse: transpose of the dual rows of the transposed system
    RatMat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = Rat(static_cast<long>(pick[i][j]));
    RatMat inv = inverse(m);
    seeds.clear();
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Rat> col(dim);
        for (std::size_t i = 0; i < dim; ++i) col[i] = inv(i, j);
        seeds.push_back(primitive(col));
    }
    ConeBuilder b(dim);
    b.set_simplicial(pick, seeds);
    for (const auto& a : closed) b.add(a.data(), false);
    for (const auto& a : strict) b.add(a.data(), true);
    return b.finish(true);
}

Cone Cone::add_halfspace(const IntRay& v, bool strict) const {
    if (v.size() != dim_) throw DomainError("halfspace normal has wrong dimension");
    ConeBuilder b(*this);
    b.add(v.data(), strict);
    return b.finish(false);
}

Cone Cone::add_halfspaces(const std::vector<IntRay>& closed) const {
    ConeBuilder b(*this);
    for (const auto& v : closed) {
        if (v.size() != dim_) throw DomainError("halfspace normal has wrong dimension");
        b.add(v.data(), false);
        if (b.edge_count() == 0) break;
    }
    return b.finish(true);
}

std::vector<IntRay> Cone::edges() const { return unflatten(edges_, dim_); }
std::vector<IntRay> Cone::closed() const { return unflatten(closed_, dim_); }
std::vector<IntRay> Cone::strict() const { return unflatten(strict_, dim_); }

bool Cone::is_empty() const {
    const std::size_t ne = edge_count();
    if (ne == 0) return strict_count() > 0;
    for (std::size_t i = 0; i < strict_count(); ++i) {
        bool some = false;
        for (std::size_t e = 0; e < ne && !some; ++e)
            if (dot(&strict_[i * dim_], &edges_[e * dim_], dim_) > 0) some = true;
        if (!some) return true;
    }
    return false;
}

bool Cone::contained_in_hyperplane(std::span<const std::int64_t> c) const {
    if (is_empty()) throw DomainError("vacuous containment");
    for (std::size_t e = 0; e < edge_count(); ++e)
        if (dot(c.data(), &edges_[e * dim_], dim_) != 0) return false;
    return true;
}

bool Cone::contained_in_diagonal() const {
    if (dim_ != 12) throw DomainError("diagonal test needs ambient dimension 12");
    for (std::size_t e = 0; e < edge_count(); ++e)
        for (std::size_t j = 0; j < 6; ++j)
            if (edges_[e * 12 + j] != edges_[e * 12 + 6 + j]) return false;
    return true;
}

bool Cone::satisfies(std::span<const std::int64_t> c) const {
    for (std::size_t e = 0; e < edge_count(); ++e)
        if (dot(c.data(), &edges_[e * dim_], dim_) < 0) return false;
    return true;
}

bool Cone::contains_point(const std::vector<Rat>& x) const {
    auto check = [&](const std::vector<std::int64_t>& rows, bool strict) {
        for (std::size_t i = 0; i * dim_ < rows.size(); ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < dim_; ++j) s += x[j] * static_cast<long>(rows[i * dim_ + j]);
            if (strict ? s <= 0 : s < 0) return false;
        }
        return true;
    };
    return check(closed_, false) && check(strict_, true);
}

std::size_t Cone::edge_rank() const { return exact_rank(edges_, edge_count(), dim_); }

Cone Cone::prune_constraints() const {
    ConeBuilder b(*this);
    return b.finish(true);
}

std::vector<std::pair<std::size_t, std::size_t>> Cone::adjacent_edge_pairs() const {
    const std::size_t ne = edge_count();
    std::vector<IntRay> normals = closed();
    for (auto& s : strict()) normals.push_back(s);
    std::vector<std::vector<char>> active(ne, std::vector<char>(normals.size()));
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t i = 0; i < normals.size(); ++i)
            active[e][i] = dot(normals[i].data(), &edges_[e * dim_], dim_) == 0;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = a + 1; b < ne; ++b) {
            std::vector<std::int64_t> rows;
            std::size_t nr = 0;
            for (std::size_t i = 0; i < normals.size(); ++i)
                if (active[a][i] && active[b][i]) {
                    rows.insert(rows.end(), normals[i].begin(), normals[i].end());
                    ++nr;
                }
            if (dim_ >= 2 && exact_rank(rows, nr, dim_) == dim_ - 2) out.emplace_back(a, b);
        }
    return out;
}

std::string Cone::canonical_key() const {
    std::string key(sizeof(std::uint32_t) + edges_.size() * sizeof(std::int64_t), '\0');
    auto d = static_cast<std::uint32_t>(dim_);
    std::memcpy(key.data(), &d, sizeof d);
    if (!edges_.empty()) std::memcpy(key.data() + sizeof d, edges_.data(), edges_.size() * sizeof(std::int64_t));
    return key;
}

}  // namespace flattori
