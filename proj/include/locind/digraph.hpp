#ifndef LOCIND_DIGRAPH_HPP
#define LOCIND_DIGRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "locind/node_set.hpp"

namespace locind {

using Edge = std::pair<std::size_t, std::size_t>;
using LabelEdge = std::pair<std::string, std::string>;

/// Directed graph without self-loops. Opposite edges (j,k) and (k,j) may
/// coexist, and cycles are allowed.
///
/// Immutable: every surgery returns a new graph over the same universe, so
/// node sets stay comparable across the original and derived graphs.
class DiGraph {
public:
    /// Graph over `universe` with vertex set `vertices` and the given edges.
    /// Throws std::invalid_argument on a self-loop or an endpoint outside
    /// `vertices`.
    DiGraph(UniversePtr universe, NodeSet vertices, const std::vector<Edge>& edges);

    /// Builds a graph from labels. Node order is irrelevant: the universe is
    /// sorted. Duplicate edges are merged.
    static DiGraph from_labels(std::vector<std::string> nodes, const std::vector<LabelEdge>& edges);

    /// Raw constructor used by enumerators: `parents[k]` is the parent mask
    /// of node k over a universe of the same size.
    static DiGraph from_parent_masks(UniversePtr universe, NodeSet vertices, std::vector<NodeSet> parents);

    const NodeUniverse& universe() const { return *m_universe; }
    const UniversePtr& universe_ptr() const { return m_universe; }
    NodeSet vertices() const { return m_vertices; }

    /// Direct parents of a single node.
    NodeSet parents_of(std::size_t k) const { return m_parents[k]; }
    NodeSet children_of(std::size_t j) const;
    bool has_edge(std::size_t from, std::size_t to) const { return m_parents[to].contains(from); }
    std::size_t edge_count() const;

    /// Edges in (from, to) lexicographic index order.
    std::vector<Edge> edges() const;

    NodeSet set_of(const std::vector<std::string>& labels) const;

    /// Throws QueryError if `s` is not contained in the vertex set.
    void require_subset(NodeSet s) const;

    bool operator==(const DiGraph& o) const;

private:
    DiGraph(UniversePtr universe, NodeSet vertices, std::vector<NodeSet> parents, int);

    UniversePtr m_universe;
    NodeSet m_vertices;
    std::vector<NodeSet> m_parents;
};

/// Undirected graph without self-loops.
class UGraph {
public:
    UGraph(UniversePtr universe, NodeSet vertices, std::vector<NodeSet> adjacency);

    const NodeUniverse& universe() const { return *m_universe; }
    const UniversePtr& universe_ptr() const { return m_universe; }
    NodeSet vertices() const { return m_vertices; }
    NodeSet neighbours(std::size_t k) const { return m_adjacency[k]; }
    bool adjacent(std::size_t j, std::size_t k) const { return m_adjacency[j].contains(k); }

    /// Edges {j,k} as (min, max) pairs in lexicographic order.
    std::vector<Edge> edges() const;

    /// The symmetric digraph with both orientations of every edge.
    DiGraph to_symmetric_digraph() const;

    bool operator==(const UGraph& o) const;

private:
    UniversePtr m_universe;
    NodeSet m_vertices;
    std::vector<NodeSet> m_adjacency;
};

/// Nodes outside `a` with a child in `a`.
NodeSet parents(const DiGraph& g, NodeSet a);

/// a together with every node that has a directed path into a.
NodeSet ancestral_set(const DiGraph& g, NodeSet a);

/// G^B: removes every edge whose tail lies in b (including edges inside b).
DiGraph delete_out_edges(const DiGraph& g, NodeSet b);

DiGraph induced_subgraph(const DiGraph& g, NodeSet s);

/// Drops directions and marries every pair of parents of a common child.
UGraph moralize(const DiGraph& g);

/// True iff every path from a to b in h meets c. With c empty this asks
/// whether a and b are unconnected. Nodes of a or b inside c are ignored.
bool u_separated(const UGraph& h, NodeSet a, NodeSet b, NodeSet c);

}  // namespace locind

#endif  // LOCIND_DIGRAPH_HPP
