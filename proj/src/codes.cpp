#include "flattori/codes.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace flattori {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t q) {
    std::int64_t r = a % q;
    return r < 0 ? r + q : r;
}

}  // namespace

LinearCode::LinearCode(std::int64_t q_, std::size_t n_, std::vector<Codeword> gens)
    : q(q_), n(n_), generators(std::move(gens)) {
    if (q < 1) throw DomainError("code modulus must be positive");
    for (auto& g : generators) {
        if (g.size() != n) throw DomainError("generator length differs from code length");
        for (auto& c : g) c = mod(c, q);
    }
}

std::vector<Codeword> codewords(const LinearCode& code, std::size_t cap) {
    std::set<Codeword> seen;
    std::deque<Codeword> queue;
    Codeword zero(code.n, 0);
    seen.insert(zero);
    queue.push_back(zero);
    while (!queue.empty()) {
        Codeword c = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : code.generators) {
            Codeword d(code.n);
            for (std::size_t k = 0; k < code.n; ++k) d[k] = (c[k] + g[k]) % code.q;
            if (seen.insert(d).second) {
                if (seen.size() > cap) throw DomainError("codeword cap exceeded");
                queue.push_back(std::move(d));
            }
        }
    }
    return {seen.begin(), seen.end()};
}

LatticeBasis construction_a(const LinearCode& code) {
    const std::size_t n = code.n, k = code.generators.size();
    IntMat m(n, k + n);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = code.generators[j][i];
    for (std::size_t i = 0; i < n; ++i) m(i, k + i) = code.q;
    return LatticeBasis(to_rat(hnf(m)));
}

LinearCode code_of_integer_lattice(const LatticeBasis& basis, std::optional<std::int64_t> q) {
    IntMat a = to_int(basis.matrix());
    const std::size_t n = basis.dim();
    BigInt vol = Rat(abs(det(basis.matrix()))).get_num();
    std::int64_t modulus;
    if (q) {
        modulus = *q;
        if (modulus < 1) throw DomainError("code modulus must be positive");
        // q e_i must lie in the lattice
        RatMat inv = inverse(basis.matrix());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (Rat(inv(i, j) * modulus).get_den() != 1)
                    throw DomainError("qZ^n is not contained in the lattice");
    } else {
        if (!vol.fits_slong_p()) throw DomainError("lattice volume too large for a code modulus");
        modulus = vol.get_si();
    }
    std::vector<Codeword> gens;
    for (std::size_t j = 0; j < n; ++j) {
        Codeword g(n);
        for (std::size_t i = 0; i < n; ++i) {
            BigInt r;
            mpz_fdiv_r_ui(r.get_mpz_t(), a(i, j).get_mpz_t(), static_cast<unsigned long>(modulus));
            g[i] = r.get_si();
        }
        gens.push_back(std::move(g));
    }
    return LinearCode(modulus, n, std::move(gens));
}

bool same_weight_distribution(const LinearCode& c1, const LinearCode& c2) {
    if (c1.q != c2.q || c1.n != c2.n) return false;
    auto w1 = codewords(c1), w2 = codewords(c2);
    if (w1.size() != w2.size()) return false;
    for (auto* w : {&w1, &w2}) {
        for (auto& c : *w) std::sort(c.begin(), c.end());
        std::sort(w->begin(), w->end());
    }
    return w1 == w2;
}

std::optional<Pairing> absolute_pairing(const LinearCode& c1, const LinearCode& c2) {
    if (c1.q != c2.q || c1.n != c2.n) return std::nullopt;
    // c ~ c' iff both reduce to the same vector of min(c_k, q - c_k); the
    // compatibility graph is a disjoint union of complete bipartite blocks
    auto absolute = [q = c1.q](const Codeword& c) {
        Codeword a(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) a[k] = std::min(c[k], (q - c[k]) % q);
        return a;
    };
    std::map<Codeword, std::pair<std::vector<Codeword>, std::vector<Codeword>>> blocks;
    auto w1 = codewords(c1), w2 = codewords(c2);
    if (w1.size() != w2.size()) return std::nullopt;
    for (auto& c : w1) blocks[absolute(c)].first.push_back(c);
    for (auto& c : w2) blocks[absolute(c)].second.push_back(c);
    Pairing out;
    for (auto& [key, b] : blocks) {
        if (b.first.size() != b.second.size()) return std::nullopt;
        for (std::size_t i = 0; i < b.first.size(); ++i) out.emplace_back(b.first[i], b.second[i]);
    }
    return out;
}

}  // namespace flattori
