#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "flattori/minset.hpp"

using namespace flattori;

TEST_CASE("precedes") {
    CHECK(precedes({1, 0, 0}, {1, 0, 0}));
    CHECK(precedes({1, 0, 0}, {0, 1, 0}));
    CHECK_FALSE(precedes({0, 1, 0}, {1, 0, 0}));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int t = 0; t < 5000; ++t) {
        Vec3 x{c(rng), c(rng), c(rng)}, y{c(rng), c(rng), c(rng)};
        if (precedes(x, y) && precedes(y, x)) {
            bool same = x == y;
            bool opp = x[0] == -y[0] && x[1] == -y[1] && x[2] == -y[2];
            CHECK((same || opp));
        }
        if (precedes(x, y)) CHECK(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    }
}

TEST_CASE("domains") {
    CHECK(in_zstar(Vec3{1, 0, 0}));
    CHECK(in_zstar(Vec3{-1, 1, 0}));
    CHECK_FALSE(in_zstar(Vec3{1, -1, 0}));
    CHECK_FALSE(in_zstar(Vec3{2, 0, 2}));
    CHECK_FALSE(in_domain(Lambda::E1Line, {1, 0, 0}));
    CHECK(in_domain(Lambda::E1Line, {1, 1, 0}));
    CHECK_FALSE(in_domain(Lambda::E1E2Plane, {1, 1, 0}));
    CHECK_FALSE(in_domain(Lambda::UnionPlanes, {1, 0, 1}));
    CHECK(in_domain(Lambda::UnionPlanes, {1, 1, 1}));
    CHECK(parse_lambda(lambda_name(Lambda::E1E2Plane)) == Lambda::E1E2Plane);
}

TEST_CASE("base case over all of Z^3_*") {
    CHECK(min_set({Lambda::Full, {}}) == std::vector<Vec3>{{1, 0, 0}});
    CHECK(min_set_oracle({Lambda::Full, {}}, 20) == std::vector<Vec3>{{1, 0, 0}});
}

TEST_CASE("anchor choice") {
    CHECK(min_set_anchor({Lambda::UnionPlanes, {{1, 1, 1}}}) == 2);
    CHECK(min_set_anchor({Lambda::UnionPlanes, {{2, 2, 1}}}) == 1);
    CHECK(min_set_anchor({Lambda::E1Line, {{1, 1, 0}, {2, 1, 0}}}) == 3);
    // removed vectors inside Lambda are ignored
    CHECK(min_set_anchor({Lambda::E1Line, {{1, 0, 0}}}) == 1);
}

TEST_CASE("min_set equals the brute-force oracle") {
    for (Lambda l : {Lambda::E1Line, Lambda::E1E2Plane, Lambda::UnionPlanes}) {
        auto m = min_set({l, {}});
        CHECK_FALSE(m.empty());
        CHECK(m == min_set_oracle({l, {}}, 20));
    }
    CHECK(min_set({Lambda::UnionPlanes, {{1, 1, 1}}}) == min_set_oracle({Lambda::UnionPlanes, {{1, 1, 1}}}, 20));

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> lam(1, 3), cnt(0, 6);
    int queries = 0;
    for (int t = 0; t < 220; ++t) {
        MinQuery q{static_cast<Lambda>(lam(rng)), {}};
        // remove successive minimal elements, the way the refinement consumes them
        int k = cnt(rng);
        for (int i = 0; i < k; ++i) {
            auto m = min_set(q);
            q.removed.push_back(m[rng() % m.size()]);
        }
        auto m = min_set(q);
        auto o = min_set_oracle(q, 20);
        CHECK(m == o);
        CHECK_FALSE(m.empty());
        // dominance: every sampled domain vector is preceded by some returned element
        std::uniform_int_distribution<int> c(-5, 5);
        for (int s = 0; s < 100; ++s) {
            Vec3 z{c(rng), c(rng), c(rng)};
            if (!in_domain(q.lambda, z) || std::find(q.removed.begin(), q.removed.end(), z) != q.removed.end()) continue;
            CHECK(std::any_of(m.begin(), m.end(), [&](const Vec3& y) { return precedes(y, z); }));
        }
        ++queries;
    }
    CHECK(queries >= 200);
}

TEST_CASE("oracle stable beyond the ball bound") {
    MinQuery q{Lambda::E1E2Plane, {{0, 0, 1}, {1, 0, 1}}};
    auto a = min_set_oracle(q, 12), b = min_set_oracle(q, 24);
    CHECK(a == b);
    CHECK(a == min_set(q));
}

TEST_CASE("reduced edge family on the projected plane") {
    // non-invertible edges with the first row and column removed, as binary forms (a, b, c) = a x^2 + 2 c x y + b y^2
    std::vector<std::array<std::int64_t, 3>> ep{{0, 1, 0}, {2, 2, 1}, {2, 2, -1}};
    auto val = [](const std::array<std::int64_t, 3>& f, std::int64_t x, std::int64_t y) {
        return f[0] * x * x + f[1] * y * y + 2 * f[2] * x * y;
    };
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    for (std::int64_t y = 0; y <= 15; ++y)
        for (std::int64_t x = -15; x <= 15; ++x) {
            if (std::gcd(x, y) != 1 || (y == 0 && x <= 0)) continue;
            pts.emplace_back(x, y);
        }
    std::vector<std::pair<std::int64_t, std::int64_t>> mins;
    for (auto p : pts) {
        bool minimal = true;
        for (auto r : pts) {
            if (r == p) continue;
            bool le = true;
            for (auto& f : ep) le = le && val(f, r.first, r.second) <= val(f, p.first, p.second);
            if (le) {
                minimal = false;
                break;
            }
        }
        if (minimal) mins.push_back(p);
    }
    CHECK(mins == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 0}});
}

TEST_CASE("cache") {
    clear_min_set_cache();
    CHECK(min_set_cache_size() == 0);
    auto a = min_set({Lambda::E1Line, {{0, 1, 0}}});
    auto b = min_set({Lambda::E1Line, {{0, 1, 0}, {1, 0, 0}}});
    CHECK(a == b);
    CHECK(min_set_cache_size() == 1);
}
