#include "flattori/minset.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include "flattori/reduction.hpp"

namespace flattori {

std::string lambda_name(Lambda l) {
    switch (l) {
        case Lambda::Full: return "full";
        case Lambda::E1Line: return "e1_line";
        case Lambda::E1E2Plane: return "e1e2_plane";
        case Lambda::UnionPlanes: return "union_planes";
    }
    return "?";
}

Lambda parse_lambda(const std::string& s) {
    for (Lambda l : {Lambda::Full, Lambda::E1Line, Lambda::E1E2Plane, Lambda::UnionPlanes})
        if (lambda_name(l) == s) return l;
    throw DomainError("unknown lambda variant: " + s);
}

bool in_zstar(const Vec3& x) {
    std::int64_t g = std::gcd(std::gcd(x[0], x[1]), x[2]);
    if (g != 1) return false;
    for (int i = 2; i >= 0; --i)
        if (x[i] != 0) return x[i] > 0;
    return false;
}

bool in_lambda(Lambda l, const Vec3& x) {
    switch (l) {
        case Lambda::Full: return false;
        case Lambda::E1Line: return x[1] == 0 && x[2] == 0;
        case Lambda::E1E2Plane: return x[2] == 0;
        case Lambda::UnionPlanes: return x[2] == 0 || x[1] == 0;
    }
    return false;
}

bool in_domain(Lambda l, const Vec3& x) { return in_zstar(x) && !in_lambda(l, x); }

std::array<std::int64_t, 11> edge_values(const Vec3& x) {
    const auto& m = schiemann_catalog().Medges;
    std::array<std::int64_t, 11> out{};
    for (std::size_t k = 0; k < 11; ++k) {
        const auto& e = m[k];
        out[k] = e[0] * x[0] * x[0] + e[1] * x[1] * x[1] + e[2] * x[2] * x[2] +
                 2 * (e[3] * x[0] * x[1] + e[4] * x[0] * x[2] + e[5] * x[1] * x[2]);
    }
    return out;
}

bool precedes(const Vec3& x, const Vec3& y) {
    auto a = edge_values(x), b = edge_values(y);
    for (std::size_t k = 0; k < 11; ++k)
        if (a[k] > b[k]) return false;
    return true;
}

namespace {

std::int64_t norm2(const Vec3& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }

std::vector<Vec3> anchor_set(Lambda l, std::int64_t a) {
    switch (l) {
        case Lambda::Full: return {{1, 0, 0}};
        case Lambda::E1Line: return {{a, 1, 0}};
        case Lambda::E1E2Plane: return {{a, 0, 1}};
        case Lambda::UnionPlanes: return {{a, 1, 1}, {a, -1, 1}};
    }
    return {};
}

std::vector<Vec3> normalized_removed(const MinQuery& q) {
    std::vector<Vec3> r;
    for (const auto& x : q.removed)
        if (in_domain(q.lambda, x)) r.push_back(x);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

// Minimal elements of a finite candidate list.
std::vector<Vec3> minimal_elements(std::vector<Vec3> cand) {
    std::sort(cand.begin(), cand.end(), [](const Vec3& a, const Vec3& b) {
        auto na = norm2(a), nb = norm2(b);
        return na != nb ? na < nb : a < b;
    });
    std::vector<std::array<std::int64_t, 11>> vals;
    vals.reserve(cand.size());
    for (const auto& x : cand) vals.push_back(edge_values(x));
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool minimal = true;
        const auto ni = norm2(cand[i]);
        // y precedes x forces |y| <= |x|, so only earlier (or equal-norm) candidates matter
        for (std::size_t j = 0; j < cand.size() && minimal; ++j) {
            if (j == i) continue;
            if (norm2(cand[j]) > ni) break;
            bool le = true;
            for (std::size_t k = 0; k < 11 && le; ++k) le = vals[j][k] <= vals[i][k];
            if (le) minimal = false;
        }
        if (minimal) out.push_back(cand[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vec3> ball(Lambda l, const std::vector<Vec3>& removed, std::int64_t bound2, bool strict) {
    std::vector<Vec3> out;
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= bound2) ++r;
    for (std::int64_t z = 0; z <= r; ++z)
        for (std::int64_t y = -r; y <= r; ++y)
            for (std::int64_t x = -r; x <= r; ++x) {
                Vec3 v{x, y, z};
                auto n = norm2(v);
                if (strict ? n >= bound2 : n > bound2) continue;
                if (!in_domain(l, v)) continue;
                if (std::binary_search(removed.begin(), removed.end(), v)) continue;
                out.push_back(v);
            }
    return out;
}

struct Cache {
    std::shared_mutex mu;
    std::map<std::pair<Lambda, std::vector<Vec3>>, std::vector<Vec3>> map;
};

Cache& cache() {
    static Cache c;
    return c;
}

}  // namespace

std::int64_t min_set_anchor(const MinQuery& q, std::vector<Vec3>* anchor) {
    auto removed = normalized_removed(q);
    if (q.lambda == Lambda::Full) {
        if (!removed.empty()) throw DomainError("the full Z^3_* query takes no removed vectors");
        if (anchor) *anchor = anchor_set(Lambda::Full, 1);
        return 1;
    }
    for (std::int64_t a = 1;; ++a) {
        auto y = anchor_set(q.lambda, a);
        bool ok = std::all_of(y.begin(), y.end(), [&](const Vec3& t) {
            return in_domain(q.lambda, t) && !std::binary_search(removed.begin(), removed.end(), t);
        });
        if (ok) {
            if (anchor) *anchor = y;
            return a;
        }
    }
}

std::vector<Vec3> min_set(const MinQuery& q) {
    auto removed = normalized_removed(q);
    auto key = std::make_pair(q.lambda, removed);
    auto& c = cache();
    {
        std::shared_lock lock(c.mu);
        auto it = c.map.find(key);
        if (it != c.map.end()) return it->second;
    }
    std::vector<Vec3> anchor;
    std::int64_t a = min_set_anchor(q, &anchor);
    // W(a) lies in the ball |x|^2 < 8 (a^2 + 2); for the full set a ball of 8 covers
    // everything not dominating e1
    std::int64_t bound2 = q.lambda == Lambda::Full ? 8 : 8 * (a * a + 2);
    auto cand = ball(q.lambda, removed, bound2, true);
    for (const auto& t : anchor)
        if (std::find(cand.begin(), cand.end(), t) == cand.end()) cand.push_back(t);
    auto out = minimal_elements(std::move(cand));
    if (out.empty()) throw DomainError("empty minimal set");
    std::unique_lock lock(c.mu);
    c.map.emplace(std::move(key), out);
    return out;
}

std::vector<Vec3> min_set_oracle(const MinQuery& q, std::int64_t radius) {
    auto removed = normalized_removed(q);
    return minimal_elements(ball(q.lambda, removed, radius * radius, false));
}

void clear_min_set_cache() {
    auto& c = cache();
    std::unique_lock lock(c.mu);
    c.map.clear();
}

std::size_t min_set_cache_size() {
    auto& c = cache();
    std::shared_lock lock(c.mu);
    return c.map.size();
}

}  // namespace flattori
