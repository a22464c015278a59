#include "flattori/reduction.hpp"

#include <algorithm>
#include <set>

namespace flattori {

Form3Vec to_form3(const QuadraticForm& q) {
    if (q.dim() != 3) throw DomainError("expected a ternary form");
    return {q(0, 0), q(1, 1), q(2, 2), q(0, 1), q(0, 2), q(1, 2)};
}

QuadraticForm from_form3(const Form3Vec& v) {
    return QuadraticForm(RatMat{{v[0], v[3], v[4]}, {v[3], v[1], v[5]}, {v[4], v[5], v[2]}});
}

std::vector<Rat> form_coordinates(const QuadraticForm& q) {
    const std::size_t n = q.dim();
    std::vector<Rat> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(q(i, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c.push_back(q(i, j));
    return c;
}

std::vector<LinearCondition> minkowski_conditions(std::size_t n) {
    if (n == 0) throw DomainError("dimension must be positive");
    if (n > 4) throw DomainError("no finite Minkowski system for n > 4");
    const std::size_t m = n * (n + 1) / 2;
    auto off_index = [n](std::size_t i, std::size_t j) {
        std::size_t idx = n;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b, ++idx)
                if (a == i && b == j) return idx;
        return idx;
    };
    std::vector<LinearCondition> out;
    std::set<IntRay> seen;
    IntRay first(m, 0);
    first[0] = 1;
    out.push_back({first, true});
    for (std::size_t k = 0; k + 1 < n; ++k) {
        IntRay c(m, 0);
        c[k] = -1;
        c[k + 1] = 1;
        if (seen.insert(c).second) out.push_back({c, false});
    }
    for (std::size_t k = 0; k < n; ++k) {
        // x_k = 1, x_j = 0 beyond k, x_i in {-1,0,1} before k
        std::size_t combos = 1;
        for (std::size_t i = 0; i < k; ++i) combos *= 3;
        for (std::size_t code = 0; code < combos; ++code) {
            std::vector<int> x(n, 0);
            std::size_t r = code;
            for (std::size_t i = 0; i < k; ++i, r /= 3) x[i] = static_cast<int>(r % 3) - 1;
            x[k] = 1;
            IntRay c(m, 0);
            for (std::size_t i = 0; i < n; ++i) c[i] = x[i] * x[i];
            c[k] -= 1;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) c[off_index(i, j)] = 2 * x[i] * x[j];
            if (std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; })) continue;
            if (seen.insert(c).second) out.push_back({c, false});
        }
    }
    return out;
}

namespace {

Rat eval_condition(const IntRay& c, const std::vector<Rat>& v) {
    Rat s = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) s += v[i] * c[i];
    return s;
}

Rat eval_condition(const IntRay& c, const Form3Vec& v) { return eval_condition(c, std::vector<Rat>(v.begin(), v.end())); }

}  // namespace

bool is_minkowski_reduced(const QuadraticForm& q) {
    auto v = form_coordinates(q);
    for (const auto& cond : minkowski_conditions(q.dim())) {
        Rat s = eval_condition(cond.coeffs, v);
        if (cond.strict ? s <= 0 : s < 0) return false;
    }
    return true;
}

std::vector<std::pair<Rat, IntVec>> successive_minima(const QuadraticForm& q) {
    const std::size_t n = q.dim();
    Rat bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, q(i, i));
    // the basis vectors are n independent vectors of value <= bound
    auto cands = enumerate_vectors(q, bound, {DomainTag::ZStar, {}});
    std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<Rat, IntVec>> out;
    RatMat chosen(0, n);
    for (const auto& [x, v] : cands) {
        RatMat trial(out.size() + 1, n);
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) trial(i, j) = out[i].second[j];
        for (std::size_t j = 0; j < n; ++j) trial(out.size(), j) = x[j];
        if (rank(trial) == out.size() + 1) {
            out.emplace_back(v, x);
            if (out.size() == n) break;
        }
    }
    if (out.size() != n) throw DomainError("successive minima search incomplete");
    return out;
}

LatticeBasis greedy_reduce_basis(const LatticeBasis& basis) {
    const std::size_t n = basis.dim();
    if (n > 3) throw DomainError("greedy reduction needs dim <= 3: successive minima need not form a basis");
    auto mins = successive_minima(gram(basis));
    RatMat b(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) b(i, j) = mins[j].second[i];
    if (abs(det(b)) != 1) throw DomainError("successive minima vectors do not form a basis");
    return LatticeBasis(basis.matrix() * b);
}

std::pair<QuadraticForm, IntMat> lll_reduce(const QuadraticForm& q) {
    const std::size_t n = q.dim();
    if (!is_positive_definite(q)) throw DomainError("form is not positive definite");
    RatMat u = RatMat::identity(n);
    RatMat g = q.matrix();
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
    std::vector<Rat> bstar(n);
    auto orthogonalize = [&] {
        std::vector<std::vector<Rat>> r(n, std::vector<Rat>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                Rat v = g(i, j);
                for (std::size_t l = 0; l < j; ++l) v -= mu[j][l] * r[i][l];
                r[i][j] = v;
                if (j < i) mu[i][j] = v / r[j][j];
            }
            bstar[i] = r[i][i];
        }
    };
    // column k -= c * column j, on U and on the Gram matrix
    auto subtract = [&](std::size_t k, std::size_t j, const BigInt& c) {
        for (std::size_t i = 0; i < n; ++i) u(i, k) -= c * u(i, j);
        for (std::size_t i = 0; i < n; ++i) g(i, k) -= c * g(i, j);
        for (std::size_t i = 0; i < n; ++i) g(k, i) = g(i, k);
        g(k, k) -= c * g(j, k);
    };
    auto swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n; ++i) std::swap(u(i, a), u(i, b));
        for (std::size_t i = 0; i < n; ++i) std::swap(g(i, a), g(i, b));
        for (std::size_t i = 0; i < n; ++i) std::swap(g(a, i), g(b, i));
    };
    orthogonalize();
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            BigInt c = floor_rat(mu[k][j] + Rat(1, 2));
            if (c != 0) {
                subtract(k, j, c);
                orthogonalize();
            }
        }
        if (bstar[k] < (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
            swap(k, k - 1);
            orthogonalize();
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            ++k;
        }
    }
    return {QuadraticForm(g), to_int(u)};
}

const ConstraintCatalog& schiemann_catalog() {
    static const ConstraintCatalog cat = [] {
        ConstraintCatalog c;
        // Minkowski inequalities for n = 3 without q11 > 0 and q22 + 2 q23 >= 0, plus q12, q13 >= 0
        c.Aset = {
            {-1, 1, 0, 0, 0, 0}, {0, -1, 1, 0, 0, 0}, {1, 0, 0, -2, 0, 0}, {1, 0, 0, 2, 0, 0},
            {1, 1, 0, 2, -2, -2}, {1, 1, 0, -2, -2, 2}, {1, 1, 0, -2, 2, -2}, {1, 1, 0, 2, 2, 2},
            {1, 0, 0, 0, -2, 0}, {1, 0, 0, 0, 2, 0},  {0, 1, 0, 0, 0, -2}, {0, 0, 0, 1, 0, 0},
            {0, 0, 0, 0, 1, 0},
        };
        c.Bset = {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 2}};
        c.Cpairs = {
            {{0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1}},     // q12 = 0 => q23 >= 0
            {{0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}},     // q13 = 0 => q23 >= 0
            {{-1, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, -1}},   // q11 = q22 => |q23| <= q13
            {{-1, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1}},    // q11 = q22 => |q23| <= q13
            {{0, -1, 1, 0, 0, 0}, {0, 0, 0, 1, -1, 0}},   // q22 = q33 => q13 <= q12
            {{1, 1, 0, -2, -2, 2}, {-1, 0, 0, 1, 2, 0}},  // q11 + q22 - 2q12 - 2q13 + 2q23 = 0 => q11 <= 2q13 + q12
            {{1, 0, 0, -2, 0, 0}, {0, 0, 0, 0, -1, 2}},   // 2q12 = q11 => q13 <= 2q23
            {{1, 0, 0, 0, -2, 0}, {0, 0, 0, -1, 0, 2}},   // 2q13 = q11 => q12 <= 2q23
            {{0, 1, 0, 0, 0, -2}, {0, 0, 0, -1, 2, 0}},   // 2q23 = q22 => q12 <= 2q13
        };
        c.Medges = {
            {0, 0, 1, 0, 0, 0}, {0, 2, 2, 0, 0, 1}, {0, 2, 2, 0, 0, -1}, {2, 2, 2, 0, 0, 1},
            {2, 2, 2, 0, 0, -1}, {2, 2, 2, 0, 1, 1}, {2, 2, 2, 0, 1, -1}, {2, 2, 2, 1, 0, 1},
            {2, 2, 2, 1, 0, -1}, {2, 2, 2, 1, 1, 0}, {2, 2, 2, 1, 1, 1},
        };
        c.closure_system = {
            {1, 0, 0, 0, 0, 0}, {-1, 1, 0, 0, 0, 0}, {0, -1, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0},
            {1, 0, 0, -2, 0, 0}, {0, 0, 0, 0, 1, 0}, {1, 0, 0, 0, -2, 0}, {0, 1, 0, 0, 0, 2},
            {0, 1, 0, 0, 0, -2}, {1, 1, 0, -2, -2, 2},
        };
        return c;
    }();
    return cat;
}

bool is_schiemann_reduced(const Form3Vec& v) {
    const auto& cat = schiemann_catalog();
    for (const auto& a : cat.Aset)
        if (eval_condition(a, v) < 0) return false;
    for (const auto& b : cat.Bset)
        if (eval_condition(b, v) <= 0) return false;
    for (const auto& [c, d] : cat.Cpairs)
        if (eval_condition(c, v) == 0 && eval_condition(d, v) < 0) return false;
    return true;
}

Form3Vec schiemann_reduce(const QuadraticForm& q) {
    if (q.dim() != 3) throw DomainError("Schiemann reduction is defined for ternary forms");
    if (!is_positive_definite(q)) throw DomainError("form is not positive definite");
    auto mins = successive_minima(q);
    // every Minkowski-reduced representative has diagonal (lambda_1, lambda_2, lambda_3)
    std::vector<std::vector<IntVec>> cands(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (auto& [x, v] : enumerate_vectors(q, mins[i].first))
            if (v == mins[i].first) cands[i].push_back(x);
    std::set<Form3Vec> found;
    std::size_t minkowski_hits = 0;
    RatMat b(3, 3);
    for (const auto& b1 : cands[0])
        for (const auto& b2 : cands[1])
            for (const auto& b3 : cands[2]) {
                for (std::size_t i = 0; i < 3; ++i) {
                    b(i, 0) = b1[i];
                    b(i, 1) = b2[i];
                    b(i, 2) = b3[i];
                }
                if (abs(det(b)) != 1) continue;
                QuadraticForm r(b.transpose() * q.matrix() * b);
                ++minkowski_hits;
                Form3Vec v = to_form3(r);
                if (v[3] >= 0 && v[4] >= 0 && is_schiemann_reduced(v)) found.insert(v);
            }
    if (minkowski_hits == 0 || found.size() != 1) throw DomainError("uniqueness violation");
    return *found.begin();
}

}  // namespace flattori
