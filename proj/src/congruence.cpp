#include "flattori/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "flattori/reduction.hpp"

namespace flattori {

namespace {

struct Candidate {
    IntVec x;
    std::vector<BigInt> qx;  // (L Q1) x
};

// integer scaling of q by the lcm of its denominators
std::pair<IntMat, BigInt> integral_scale(const RatMat& q) {
    BigInt l = 1;
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q(i, j).get_den_mpz_t());
    IntMat m(q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) m(i, j) = q(i, j).get_num() * (l / q(i, j).get_den());
    return {m, l};
}

bool sign_normalized(const IntVec& x) {
    for (const auto& c : x)
        if (c != 0) return c > 0;
    return false;
}

}  // namespace

Rat lambda_min_lower_bound(const QuadraticForm& q) {
    if (!is_positive_definite(q)) throw DomainError("form is not positive definite");
    const std::size_t n = q.dim();
    Rat u = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < n; ++j) s += abs(q(i, j));
        u = std::max(u, s);
    }
    Rat p = 1;
    for (std::size_t k = 1; k < n; ++k) p *= u;
    return det(q.matrix()) / p;
}

namespace {

// Witness search column by column; q2 should be reduced so its diagonal stays small.
std::optional<IntMat> search_equivalence(const QuadraticForm& q1, const QuadraticForm& q2) {
    const std::size_t n = q1.dim();
    const Rat lb = lambda_min_lower_bound(q1);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q2(a, a) < q2(b, b); });

    auto [m1, l1] = integral_scale(q1.matrix());
    // target Gram entries scaled the same way; a non-integer entry means no solution
    IntMat target(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat t = q2(order[i], order[j]) * l1;
            if (t.get_den() != 1) return std::nullopt;
            target(i, j) = t.get_num();
        }

    std::map<Rat, std::vector<Candidate>> by_value;
    std::vector<const std::vector<Candidate>*> cands(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Rat& v = q2(order[j], order[j]);
        auto it = by_value.find(v);
        if (it == by_value.end()) {
            std::vector<Candidate> list;
            const Rat bound = v / lb;
            enumerate_up_to(q1, v, {}, [&](const IntVec& x, const Rat& val) {
                if (val != v) return;
                Rat norm = 0;
                for (const auto& c : x) norm += c * c;
                if (norm > bound) return;
                Candidate c{x, std::vector<BigInt>(n)};
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t k = 0; k < n; ++k) c.qx[r] += m1(r, k) * x[k];
                list.push_back(std::move(c));
            });
            it = by_value.emplace(v, std::move(list)).first;
        }
        cands[j] = &it->second;
    }

    std::vector<const Candidate*> chosen(n, nullptr);
    std::optional<IntMat> found;
    auto dfs = [&](auto&& self, std::size_t t) -> bool {
        if (t == n) {
            IntMat b(n, n);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < n; ++i) b(i, order[j]) = chosen[j]->x[i];
            Rat d = det(to_rat(b));
            if (d != 1 && d != -1) return false;
            found = std::move(b);
            return true;
        }
        for (const auto& c : *cands[t]) {
            // -B is a witness whenever B is
            if (t == 0 && !sign_normalized(c.x)) continue;
            bool ok = true;
            for (std::size_t s = 0; s < t && ok; ++s) {
                BigInt dot = 0;
                for (std::size_t k = 0; k < n; ++k) dot += chosen[s]->qx[k] * c.x[k];
                ok = dot == target(s, t);
            }
            if (!ok) continue;
            chosen[t] = &c;
            if (self(self, t + 1)) return true;
        }
        return false;
    };
    dfs(dfs, 0);
    return found;
}

}  // namespace

std::optional<IntMat> integral_equivalence(const QuadraticForm& q1, const QuadraticForm& q2) {
    const std::size_t n = q1.dim();
    if (q2.dim() != n) throw DomainError("forms have different dimensions");
    if (!is_positive_definite(q1) || !is_positive_definite(q2)) throw DomainError("form is not positive definite");
    if (det(q1.matrix()) != det(q2.matrix())) return std::nullopt;

    // C^T R1 C = R2 with Ri = Ui^T Qi Ui gives B = U1 C U2^-1
    auto [r1, u1] = lll_reduce(q1);
    auto [r2, u2] = lll_reduce(q2);
    auto c = search_equivalence(r1, r2);
    if (!c) return std::nullopt;
    return to_int(to_rat(u1) * to_rat(*c) * inverse(to_rat(u2)));
}

CongruenceResult lattice_congruent(const LatticeBasis& a1, const LatticeBasis& a2) {
    if (a1.dim() != a2.dim()) throw DomainError("lattices have different dimensions");
    CongruenceResult r;
    r.witness = integral_equivalence(gram(a1), gram(a2));
    r.congruent = r.witness.has_value();
    return r;
}

VectorProfile shortest_vector_profile(const LatticeBasis& basis, const Rat& s) {
    if (s <= 0) throw DomainError("squared length must be positive");
    QuadraticForm g = gram(basis);
    std::vector<IntVec> vs;
    for (auto& [x, v] : enumerate_vectors(g, s))
        if (v == s) vs.push_back(x);
    std::vector<RatVec> gx;
    for (const auto& x : vs) gx.push_back(mat_vec(g.matrix(), x));
    std::map<Rat, std::uint64_t> dots;
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = 0; b < vs.size(); ++b) {
            Rat d = 0;
            for (std::size_t k = 0; k < gx[a].size(); ++k) d += gx[a][k] * vs[b][k];
            ++dots[d];
        }
    VectorProfile p;
    p.count = vs.size();
    p.dots.assign(dots.begin(), dots.end());
    return p;
}

}  // namespace flattori
