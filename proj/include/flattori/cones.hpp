#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flattori/linalg.hpp"

namespace flattori {

struct OverflowError : DomainError {
    using DomainError::DomainError;
};

/// Pointed polyhedral cone Pc(closed, strict) with the extreme rays of its
/// closure. Rays and normals are primitive int64 vectors; edges sorted.
class Cone {
public:
    Cone() = default;

    /// Start from seed_edges, which must be `dim` linearly independent rays
    /// (a simplicial cone), then intersect with every constraint.
    static Cone from_system(std::size_t dim, const std::vector<IntRay>& closed, const std::vector<IntRay>& strict,
                            const std::vector<IntRay>& seed_edges);
    /// Same, seeding with a simplicial cone cut out by `dim` independent constraints of the system.
    static Cone from_constraints(std::size_t dim, const std::vector<IntRay>& closed,
                                 const std::vector<IntRay>& strict = {});

    Cone add_halfspace(const IntRay& v, bool strict) const;
    /// Intersect with several closed halfspaces; prunes redundant constraints afterwards.
    Cone add_halfspaces(const std::vector<IntRay>& closed) const;

    std::size_t dim() const { return dim_; }
    std::size_t edge_count() const { return dim_ ? edges_.size() / dim_ : 0; }
    std::size_t closed_count() const { return dim_ ? closed_.size() / dim_ : 0; }
    std::size_t strict_count() const { return dim_ ? strict_.size() / dim_ : 0; }
    std::span<const std::int64_t> edge(std::size_t i) const { return {edges_.data() + i * dim_, dim_}; }
    std::span<const std::int64_t> closed_normal(std::size_t i) const { return {closed_.data() + i * dim_, dim_}; }
    std::span<const std::int64_t> strict_normal(std::size_t i) const { return {strict_.data() + i * dim_, dim_}; }
    std::vector<IntRay> edges() const;
    std::vector<IntRay> closed() const;
    std::vector<IntRay> strict() const;

    bool is_empty() const;
    /// Throws on an empty cone.
    bool contained_in_hyperplane(std::span<const std::int64_t> c) const;
    bool contained_in_hyperplane(const IntRay& c) const { return contained_in_hyperplane(std::span(c)); }
    /// Ambient dim 12, coordinates (f, g): every edge has f = g.
    bool contained_in_diagonal() const;
    /// Every closure point satisfies c . x >= 0.
    bool satisfies(std::span<const std::int64_t> c) const;
    bool contains_point(const std::vector<Rat>& x) const;

    /// Rank of the edge span.
    std::size_t edge_rank() const;
    Cone prune_constraints() const;
    /// Edge index pairs spanning 2-faces, by the rank of their common active constraints.
    std::vector<std::pair<std::size_t, std::size_t>> adjacent_edge_pairs() const;
    std::string canonical_key() const;

    bool operator==(const Cone& o) const { return dim_ == o.dim_ && edges_ == o.edges_; }

private:
    friend class ConeBuilder;
    std::size_t dim_ = 0;
    std::vector<std::int64_t> closed_, strict_, edges_;
};

IntRay primitive(const std::vector<Rat>& v);

}  // namespace flattori
