#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "flattori/linalg.hpp"

namespace flattori {

using Vec3 = std::array<std::int64_t, 3>;

/// Lambda in Z^3 removed from Z^3_*: nothing (Full), e1 Z, e1 Z + e2 Z, or
/// (e1 Z + e2 Z) u (e1 Z + e3 Z). Ordered by inclusion.
enum class Lambda : std::uint8_t { Full = 0, E1Line = 1, E1E2Plane = 2, UnionPlanes = 3 };

std::string lambda_name(Lambda l);
Lambda parse_lambda(const std::string& s);

bool in_zstar(const Vec3& x);
bool in_lambda(Lambda l, const Vec3& x);
/// x in Z^3_* \ Lambda.
bool in_domain(Lambda l, const Vec3& x);

/// Values of the 11 edge forms of the closed Schiemann domain at x.
std::array<std::int64_t, 11> edge_values(const Vec3& x);
/// m(x) <= m(y) for every edge form m.
bool precedes(const Vec3& x, const Vec3& y);

struct MinQuery {
    Lambda lambda = Lambda::E1Line;
    std::vector<Vec3> removed;
};

/// MIN of (Z^3_* \ Lambda) \ removed. Removed vectors outside the domain are ignored.
/// Results are memoized; safe to call concurrently.
std::vector<Vec3> min_set(const MinQuery& q);
/// Brute-force MIN over the vectors of Euclidean norm at most radius.
std::vector<Vec3> min_set_oracle(const MinQuery& q, std::int64_t radius);

/// The smallest a >= 1 used by min_set, with the anchor set Y(a).
std::int64_t min_set_anchor(const MinQuery& q, std::vector<Vec3>* anchor = nullptr);

void clear_min_set_cache();
std::size_t min_set_cache_size();

}  // namespace flattori
