#ifndef LOCIND_SEPARATION_HPP
#define LOCIND_SEPARATION_HPP

#include <optional>
#include <vector>

#include "locind/digraph.hpp"

namespace locind {

/// "C δ-separates A from B": the past of `a` is irrelevant for the present of
/// `b` once the past of `c` is known. The sets may overlap.
struct SeparationQuery {
    NodeSet a;
    NodeSet b;
    NodeSet c;

    bool operator==(const SeparationQuery&) const = default;
};

/// Overlap reduction: (A \ (B ∪ C), B, C \ B).
SeparationQuery reduce(const SeparationQuery& q);

/// Moral-graph decision procedure. This is the normative definition:
/// reduce overlaps, then test undirected separation of A' from B given C' in
/// the moral graph of G^B restricted to An(A' ∪ B ∪ C'). An empty A' (or an
/// empty B) is always separated.
bool delta_separates(const DiGraph& g, const SeparationQuery& q);

struct TrailStep {
    std::size_t from;
    std::size_t to;
    /// True when the step follows the edge direction (from -> to); false when
    /// it walks an edge (to -> from) against its direction.
    bool along_edge;

    bool operator==(const TrailStep&) const = default;
};

using Trail = std::vector<TrailStep>;

/// An allowed trail from A' to B that is not d-blocked by C', if one exists.
///
/// Allowed: no edge (b, k) with b in B and k outside B. Blocked: a
/// non-collider lies in C', or a collider lies outside An(C') computed in the
/// full graph. Trails may revisit nodes; the search runs over (node, arrival
/// direction) states so it terminates on cyclic graphs.
std::optional<Trail> find_connecting_trail(const DiGraph& g, const SeparationQuery& q);

/// Trail-based decision procedure, an independent route to the same answer
/// as delta_separates.
bool delta_separates_trail(const DiGraph& g, const SeparationQuery& q);

inline constexpr std::size_t kMaxEnumerationNodes = 6;

/// Every separated (A, B, C) with A, B nonempty, the three sets pairwise
/// disjoint and |C| <= max_cond, in canonical subset order (A, then B, then C).
/// Refuses graphs with more than kMaxEnumerationNodes vertices.
std::vector<SeparationQuery> all_separations(const DiGraph& g, std::size_t max_cond);

}  // namespace locind

#endif  // LOCIND_SEPARATION_HPP
