#include "locind/separation.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace locind {

SeparationQuery reduce(const SeparationQuery& q) {
    return SeparationQuery{q.a - (q.b | q.c), q.b, q.c - q.b};
}

namespace {

void require_query(const DiGraph& g, const SeparationQuery& q) {
    g.require_subset(q.a);
    g.require_subset(q.b);
    g.require_subset(q.c);
}

}  // namespace

bool delta_separates(const DiGraph& g, const SeparationQuery& q) {
    require_query(g, q);
    const SeparationQuery r = reduce(q);
    if (r.a.empty() || r.b.empty()) return true;

    // With C' empty this is the "unconnected" clause over An(A' ∪ B).
    NodeSet anc = ancestral_set(g, r.a | r.b | r.c);
    UGraph moral = moralize(induced_subgraph(delete_out_edges(g, r.b), anc));
    return u_separated(moral, r.a, r.b, r.c);
}

std::optional<Trail> find_connecting_trail(const DiGraph& g, const SeparationQuery& q) {
    require_query(g, q);
    const SeparationQuery r = reduce(q);
    if (r.a.empty() || r.b.empty()) return std::nullopt;

    const std::size_t n = g.universe().size();
    const NodeSet cond_anc = ancestral_set(g, r.c);

    // State (node, arrived along an edge into it). Arriving "against" means
    // the last step walked an edge out of the node, so it cannot be a collider.
    struct Pred {
        bool seen = false;
        std::size_t node = 0;
        bool head = false;
        bool start = false;
    };
    std::vector<std::array<Pred, 2>> pred(n);
    std::vector<std::pair<std::size_t, bool>> queue;

    for (auto a : r.a) {
        pred[a][0] = Pred{true, a, false, true};
        queue.emplace_back(a, false);
    }

    auto rebuild = [&](std::size_t node, bool head) {
        Trail t;
        while (!pred[node][head ? 1 : 0].start) {
            const Pred& p = pred[node][head ? 1 : 0];
            t.push_back(TrailStep{p.node, node, head});
            node = p.node;
            head = p.head;
        }
        std::reverse(t.begin(), t.end());
        return t;
    };

    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        auto [m, head] = queue[qi];
        if (r.b.contains(m)) return rebuild(m, head);

        // Forward step m -> k: m is a non-collider either way.
        if (!r.c.contains(m)) {
            for (auto k : g.children_of(m)) {
                if (!pred[k][1].seen) {
                    pred[k][1] = Pred{true, m, head, false};
                    queue.emplace_back(k, true);
                }
            }
        }
        // Backward step over p -> m. Collider at m iff we arrived along an edge
        // into m. Edges out of B into non-B nodes are never allowed.
        const bool pass = head ? cond_anc.contains(m) : !r.c.contains(m);
        if (pass) {
            for (auto p : g.parents_of(m) - r.b) {
                if (!pred[p][0].seen) {
                    pred[p][0] = Pred{true, m, head, false};
                    queue.emplace_back(p, false);
                }
            }
        }
    }
    return std::nullopt;
}

bool delta_separates_trail(const DiGraph& g, const SeparationQuery& q) {
    return !find_connecting_trail(g, q).has_value();
}

std::vector<SeparationQuery> all_separations(const DiGraph& g, std::size_t max_cond) {
    if (g.vertices().size() > kMaxEnumerationNodes) {
        throw std::invalid_argument("all_separations: graph has " + std::to_string(g.vertices().size()) +
                                    " vertices, limit is " + std::to_string(kMaxEnumerationNodes));
    }
    const auto subsets = ordered_subsets(g.vertices());
    std::vector<SeparationQuery> out;
    for (auto a : subsets) {
        if (a.empty()) continue;
        for (auto b : subsets) {
            if (b.empty() || b.intersects(a)) continue;
            for (auto c : subsets) {
                if (c.size() > max_cond || c.intersects(a | b)) continue;
                SeparationQuery q{a, b, c};
                if (delta_separates(g, q)) out.push_back(q);
            }
        }
    }
    return out;
}

}  // namespace locind
