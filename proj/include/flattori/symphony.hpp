#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "flattori/cones.hpp"
#include "flattori/minset.hpp"

namespace flattori {

/// Pair coordinates: 0..5 are f, 6..11 are g, each in Form3Vec order.
enum class Side { F, G };

/// A cone of form pairs with its bookkeeping (Lambda, x and y sequences).
struct InTuneCone {
    Cone cone;
    Lambda lambda = Lambda::E1Line;
    std::vector<Vec3> xs, ys;

    std::size_t k() const { return xs.size(); }
    /// Edges, lambda and both sequences.
    std::string key() const;
};

/// Functional whose dot with a pair vector is f(x) (side F) or g(x) (side G).
IntRay eval_functional(const Vec3& x, Side side);
/// Embed a 6-coordinate constraint on one side of the pair space.
IntRay lift(const IntRay& a, Side side);

/// Fixed point of adding facet-condition consequences (d >= 0 whenever the cone lies in c = 0).
Cone saturate(const Cone& cone);

/// The closed and strict systems of C_p x C_p.
std::vector<IntRay> pair_domain_closed();
std::vector<IntRay> pair_domain_strict();

InTuneCone initial_cone();

/// Largest Lambda on which f and g agree over the whole cone.
Lambda detect_lambda(const Cone& cone);

/// Constraints f(seq.back()) <= f(next) <= f(m) for m in MIN(X_Lambda \ (seq + next)), on one side.
std::vector<IntRay> s_cone_constraints(Lambda lambda, const std::vector<Vec3>& seq, const Vec3& next, Side side);

struct RefineOptions {
    /// Throw on an in-tune violation instead of restoring the pairing equalities.
    bool strict_p3 = false;
};

struct RefineResult {
    bool solo = false;
    std::vector<InTuneCone> children;
    std::size_t computed = 0;    // nonempty T_xy built
    std::size_t p3_repairs = 0;  // children whose re-paired sequences needed explicit equalities
};

RefineResult refine_cone(const InTuneCone& t, const RefineOptions& opt = {});

struct IterationStats {
    std::size_t iteration = 0;
    std::int64_t elapsed_ms = 0;
    std::size_t active = 0;
    std::size_t solo = 0;
    std::size_t computed = 0;
    std::size_t p3_repairs = 0;
};

struct SymphonyOptions {
    std::size_t max_iter = 20;
    std::size_t jobs = 1;
    RefineOptions refine;
    /// Called after each iteration with the stats row and the active covering.
    std::function<void(const IterationStats&, const std::vector<InTuneCone>&)> on_iteration;
};

struct SymphonyReport {
    std::vector<IterationStats> iterations;
    bool terminated = false;    // active count reached 0
    bool all_diagonal = false;  // every final cone lies in the diagonal
    std::size_t total_active = 0;
    std::size_t total_computed = 0;
    std::size_t p3_repairs = 0;
    std::vector<InTuneCone> solos;
};

SymphonyReport run_symphony(const SymphonyOptions& opt);

/// iteration,elapsed_ms,active_cones,solo_cones
std::string stats_csv(const SymphonyReport& r);

}  // namespace flattori
