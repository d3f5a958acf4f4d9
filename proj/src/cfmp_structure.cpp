#include <algorithm>
#include <cmath>

#include "locind/cfmp.hpp"

namespace locind::cfmp {

namespace {

bool nearly_equal(double x, double y) {
    return std::abs(x - y) <= kConstancyTolerance * std::max(std::abs(x), std::abs(y));
}

std::size_t zero_out(const Process& p, std::size_t state, NodeSet set) {
    for (auto k : set) state = p.with_component(state, k, 0);
    return state;
}

/// True iff the intensities of `target` do not change when the components in
/// `b` change, whatever the rest of the state.
bool constant_in(const Process& p, std::size_t target, NodeSet b) {
    for (std::size_t y = 0; y < p.state_count(); ++y) {
        const std::size_t base = zero_out(p, y, b);
        if (base == y) continue;
        for (std::size_t to = 0; to < p.cardinality(target); ++to) {
            if (!nearly_equal(p.rate(target, y, to), p.rate(target, base, to))) return false;
        }
    }
    return true;
}

std::size_t component_index(const Process& p, const std::string& name) {
    return p.universe().index_of(name);
}

}  // namespace

Generator build_generator(const Process& p) {
    const auto n = static_cast<Eigen::Index>(p.state_count());
    std::vector<Eigen::Triplet<double>> entries;
    for (std::size_t y = 0; y < p.state_count(); ++y) {
        double exit = 0.0;
        for (std::size_t k = 0; k < p.component_count(); ++k) {
            for (std::size_t to = 0; to < p.cardinality(k); ++to) {
                if (to == p.component_state(y, k)) continue;
                const double r = p.rate(k, y, to);
                if (r == 0.0) continue;
                entries.emplace_back(static_cast<Eigen::Index>(y),
                                     static_cast<Eigen::Index>(p.with_component(y, k, to)), r);
                exit += r;
            }
        }
        entries.emplace_back(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(y), -exit);
    }
    Generator g{p.universe_ptr(), p.cardinalities(), Eigen::SparseMatrix<double, Eigen::RowMajor>(n, n)};
    g.matrix.setFromTriplets(entries.begin(), entries.end());
    return g;
}

Generator build_generator(const CfmpSpec& s) { return build_generator(Process(s)); }

bool is_locally_independent(const Process& p, std::size_t source, std::size_t target) {
    if (source >= p.component_count() || target >= p.component_count()) {
        throw QueryError("unknown component index");
    }
    if (source == target) throw QueryError("local independence needs two distinct components");
    if (!p.declared_parents(target).contains(source)) return true;
    return constant_in(p, target, NodeSet::single(source));
}

bool is_locally_independent(const CfmpSpec& s, const std::string& source, const std::string& target) {
    const Process p(s);
    return is_locally_independent(p, component_index(p, source), component_index(p, target));
}

bool set_locally_independent(const Process& p, NodeSet b, NodeSet a, NodeSet c) {
    const NodeSet all = p.universe().all();
    if (a.intersects(b) || a.intersects(c) || b.intersects(c)) {
        throw QueryError("set local independence needs pairwise disjoint sets");
    }
    if ((a | b | c) != all) {
        throw QueryError("set local independence is only evaluable when the three sets cover every component; "
                         "use delta-separation on the derived graph for other queries");
    }
    for (auto j : a) {
        if (!constant_in(p, j, b & p.declared_parents(j))) return false;
    }
    return true;
}

DiGraph derive_graph(const Process& p) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < p.component_count(); ++k) {
        for (auto j : p.declared_parents(k)) {
            if (!is_locally_independent(p, j, k)) edges.emplace_back(j, k);
        }
    }
    return DiGraph(p.universe_ptr(), p.universe().all(), edges);
}

DiGraph derive_graph(const CfmpSpec& s) { return derive_graph(Process(s)); }

std::vector<LabelEdge> vacuous_dependencies(const Process& p) {
    std::vector<LabelEdge> out;
    for (std::size_t k = 0; k < p.component_count(); ++k) {
        for (auto j : p.declared_parents(k)) {
            if (is_locally_independent(p, j, k)) out.emplace_back(p.universe().label(j), p.universe().label(k));
        }
    }
    return out;
}

CfmpSpec prune_vacuous(const Process& p) {
    CfmpSpec s;
    const auto& u = p.universe();
    for (std::size_t k = 0; k < p.component_count(); ++k) {
        s.components.push_back({u.label(k), p.cardinality(k)});
        NodeSet keep;
        for (auto j : p.declared_parents(k)) {
            if (!is_locally_independent(p, j, k)) keep = keep.with(j);
        }
        Intensity in;
        in.depends_on = u.names(keep);
        // Read each cell at a representative state: dropped parents and all
        // undeclared components at 0.
        for (std::size_t cfg = 0; cfg < p.configurations(keep); ++cfg) {
            std::size_t state = 0;
            std::map<std::string, std::size_t> given;
            std::size_t rest = cfg;
            for (auto j : keep) {
                const std::size_t v = rest % p.cardinality(j);
                rest /= p.cardinality(j);
                given[u.label(j)] = v;
                state = p.with_component(state, j, v);
            }
            for (std::size_t from = 0; from < p.cardinality(k); ++from) {
                const std::size_t at = p.with_component(state, k, from);
                for (std::size_t to = 0; to < p.cardinality(k); ++to) {
                    if (to != from) in.table.push_back({given, from, to, p.rate(k, at, to)});
                }
            }
        }
        s.intensities.emplace(u.label(k), std::move(in));
    }
    return s;
}

IrrelevanceOracle local_independence_oracle(const Process& p) {
    const NodeSet all = p.universe().all();
    return IrrelevanceOracle(p.universe_ptr(), [p, all](NodeSet a, NodeSet b, NodeSet c) -> std::optional<bool> {
        if (a.intersects(b) || a.intersects(c) || b.intersects(c) || (a | b | c) != all) return std::nullopt;
        return set_locally_independent(p, a, b, c);
    });
}

}  // namespace locind::cfmp
