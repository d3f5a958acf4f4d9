#include "locind/digraph.hpp"

#include <algorithm>

namespace locind {

DiGraph::DiGraph(UniversePtr universe, NodeSet vertices, std::vector<NodeSet> parents, int)
    : m_universe(std::move(universe)), m_vertices(vertices), m_parents(std::move(parents)) {}

DiGraph::DiGraph(UniversePtr universe, NodeSet vertices, const std::vector<Edge>& edges)
    : m_universe(std::move(universe)), m_vertices(vertices) {
    if (!m_universe) throw std::invalid_argument("graph needs a node universe");
    if (!vertices.subset_of(m_universe->all())) {
        throw std::invalid_argument("vertex set exceeds the node universe");
    }
    m_parents.assign(m_universe->size(), NodeSet{});
    for (auto [from, to] : edges) {
        if (from == to) {
            throw std::invalid_argument("self-loop on '" + m_universe->label(from) + "' is not allowed");
        }
        if (!vertices.contains(from) || !vertices.contains(to)) {
            throw std::invalid_argument("edge endpoint outside the vertex set");
        }
        m_parents[to] = m_parents[to].with(from);
    }
}

DiGraph DiGraph::from_labels(std::vector<std::string> nodes, const std::vector<LabelEdge>& edges) {
    auto u = make_universe(std::move(nodes));
    std::vector<Edge> idx;
    idx.reserve(edges.size());
    for (const auto& [from, to] : edges) {
        if (!u->has(from) || !u->has(to)) {
            throw std::invalid_argument("edge (" + from + ", " + to + ") names an undeclared node");
        }
        idx.emplace_back(u->index_of(from), u->index_of(to));
    }
    return DiGraph(u, u->all(), idx);
}

DiGraph DiGraph::from_parent_masks(UniversePtr universe, NodeSet vertices, std::vector<NodeSet> parents) {
    if (parents.size() != universe->size()) throw std::invalid_argument("parent mask count mismatch");
    for (std::size_t k = 0; k < parents.size(); ++k) {
        if (parents[k].contains(k)) throw std::invalid_argument("self-loop in parent masks");
        if (!parents[k].empty() && !vertices.contains(k)) throw std::invalid_argument("edge into a non-vertex");
        if (!parents[k].subset_of(vertices)) throw std::invalid_argument("edge from a non-vertex");
    }
    return DiGraph(std::move(universe), vertices, std::move(parents), 0);
}

NodeSet DiGraph::children_of(std::size_t j) const {
    NodeSet out;
    for (auto k : m_vertices) {
        if (m_parents[k].contains(j)) out = out.with(k);
    }
    return out;
}

std::size_t DiGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& p : m_parents) n += p.size();
    return n;
}

std::vector<Edge> DiGraph::edges() const {
    std::vector<Edge> out;
    for (auto k : m_vertices) {
        for (auto j : m_parents[k]) out.emplace_back(j, k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

NodeSet DiGraph::set_of(const std::vector<std::string>& labels) const {
    NodeSet s = m_universe->set_of(labels);
    require_subset(s);
    return s;
}

void DiGraph::require_subset(NodeSet s) const {
    NodeSet extra = s - m_vertices;
    if (extra.empty()) return;
    std::size_t i = extra.front();
    if (i < m_universe->size()) {
        throw QueryError("node '" + m_universe->label(i) + "' is not a vertex of the graph");
    }
    throw QueryError("node index " + std::to_string(i) + " is outside the graph");
}

bool DiGraph::operator==(const DiGraph& o) const {
    if (m_universe != o.m_universe && !(*m_universe == *o.m_universe)) return false;
    return m_vertices == o.m_vertices && m_parents == o.m_parents;
}

UGraph::UGraph(UniversePtr universe, NodeSet vertices, std::vector<NodeSet> adjacency)
    : m_universe(std::move(universe)), m_vertices(vertices), m_adjacency(std::move(adjacency)) {
    if (m_adjacency.size() != m_universe->size()) throw std::invalid_argument("adjacency size mismatch");
    for (std::size_t k = 0; k < m_adjacency.size(); ++k) {
        if (m_adjacency[k].contains(k)) throw std::invalid_argument("self-loop in undirected graph");
        if (!m_adjacency[k].subset_of(vertices)) throw std::invalid_argument("edge endpoint outside the vertex set");
        for (auto j : m_adjacency[k]) {
            if (!m_adjacency[j].contains(k)) throw std::invalid_argument("adjacency is not symmetric");
        }
    }
}

std::vector<Edge> UGraph::edges() const {
    std::vector<Edge> out;
    for (auto j : m_vertices) {
        for (auto k : m_adjacency[j]) {
            if (j < k) out.emplace_back(j, k);
        }
    }
    return out;
}

DiGraph UGraph::to_symmetric_digraph() const {
    return DiGraph::from_parent_masks(m_universe, m_vertices, m_adjacency);
}

bool UGraph::operator==(const UGraph& o) const {
    if (m_universe != o.m_universe && !(*m_universe == *o.m_universe)) return false;
    return m_vertices == o.m_vertices && m_adjacency == o.m_adjacency;
}

NodeSet parents(const DiGraph& g, NodeSet a) {
    g.require_subset(a);
    NodeSet out;
    for (auto k : a) out |= g.parents_of(k);
    return out - a;
}

NodeSet ancestral_set(const DiGraph& g, NodeSet a) {
    g.require_subset(a);
    NodeSet result = a;
    NodeSet frontier = a;
    while (!frontier.empty()) {
        NodeSet next;
        for (auto k : frontier) next |= g.parents_of(k);
        frontier = next - result;
        result |= frontier;
    }
    return result;
}

DiGraph delete_out_edges(const DiGraph& g, NodeSet b) {
    g.require_subset(b);
    std::vector<NodeSet> pa(g.universe().size());
    for (auto k : g.vertices()) pa[k] = g.parents_of(k) - b;
    return DiGraph::from_parent_masks(g.universe_ptr(), g.vertices(), std::move(pa));
}

DiGraph induced_subgraph(const DiGraph& g, NodeSet s) {
    g.require_subset(s);
    std::vector<NodeSet> pa(g.universe().size());
    for (auto k : s) pa[k] = g.parents_of(k) & s;
    return DiGraph::from_parent_masks(g.universe_ptr(), s, std::move(pa));
}

UGraph moralize(const DiGraph& g) {
    std::vector<NodeSet> adj(g.universe().size());
    for (auto k : g.vertices()) {
        NodeSet pa = g.parents_of(k);
        adj[k] |= pa;
        for (auto j : pa) adj[j] |= (pa - NodeSet::single(j)).with(k);
    }
    return UGraph(g.universe_ptr(), g.vertices(), std::move(adj));
}

bool u_separated(const UGraph& h, NodeSet a, NodeSet b, NodeSet c) {
    NodeSet open = h.vertices() - c;
    NodeSet reached = a & open;
    NodeSet frontier = reached;
    while (!frontier.empty()) {
        if (reached.intersects(b)) return false;
        NodeSet next;
        for (auto k : frontier) next |= h.neighbours(k);
        frontier = (next & open) - reached;
        reached |= frontier;
    }
    return !reached.intersects(b);
}

}  // namespace locind
