#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "locind/graphoid.hpp"
#include "oracles.hpp"

using namespace locind;

namespace {

DiGraph graph(std::vector<std::string> nodes, std::vector<LabelEdge> edges) {
    return DiGraph::from_labels(std::move(nodes), edges);
}

std::vector<LabelEdge> label_edges(const DiGraph& g) {
    std::vector<LabelEdge> out;
    for (const auto& [j, k] : g.edges()) out.emplace_back(g.universe().label(j), g.universe().label(k));
    return out;
}

std::vector<LabelEdge> label_edges(const UGraph& g) {
    std::vector<LabelEdge> out;
    for (const auto& [j, k] : g.edges()) out.emplace_back(g.universe().label(j), g.universe().label(k));
    return out;
}

}  // namespace

TEST_CASE("node sets enumerate subsets by size then members") {
    const auto subs = ordered_subsets(NodeSet::first_n(3));
    const std::vector<std::uint64_t> expected = {0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
    REQUIRE(subs.size() == expected.size());
    for (std::size_t i = 0; i < subs.size(); ++i) CHECK(subs[i].bits() == expected[i]);

    const auto sparse = ordered_subsets(NodeSet::of({1, 3}));
    REQUIRE(sparse.size() == 4);
    CHECK(sparse[1] == NodeSet::of({1}));
    CHECK(sparse[3] == NodeSet::of({1, 3}));
}

TEST_CASE("universe labels are sorted and unknown labels are named in the error") {
    const auto u = make_universe({"visits", "health", "hosp"});
    CHECK(u->labels() == std::vector<std::string>{"health", "hosp", "visits"});
    CHECK(u->index_of("hosp") == 1);
    CHECK_THROWS_WITH_AS(u->index_of("ghost"), doctest::Contains("ghost"), QueryError);
    CHECK(format_set(*u, u->set_of({"visits", "health"})) == "{health, visits}");
    CHECK_FALSE(valid_label(""));
    CHECK_FALSE(valid_label("two words"));
    CHECK(valid_label("x_1"));
}

TEST_CASE("graph construction rejects self-loops and foreign endpoints") {
    CHECK_THROWS_AS(graph({"a"}, {{"a", "a"}}), std::invalid_argument);
    CHECK_THROWS_AS(graph({"a"}, {{"a", "b"}}), std::invalid_argument);
    const auto u = make_universe({"a", "b", "c"});
    CHECK_THROWS_AS(DiGraph(u, NodeSet::of({0, 1}), {{0, 2}}), std::invalid_argument);
    const DiGraph both = graph({"a", "b"}, {{"a", "b"}, {"b", "a"}, {"a", "b"}});
    CHECK(both.edge_count() == 2);
}

TEST_CASE("parents") {
    const DiGraph cycle = fixtures::cycle_graph();
    const auto& u = cycle.universe();
    CHECK(parents(cycle, u.set_of({"b"})) == u.set_of({"a"}));
    CHECK(parents(cycle, NodeSet{}) == NodeSet{});

    const DiGraph v = graph({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}});
    CHECK(parents(v, v.set_of({"b"})) == v.set_of({"a", "c"}));
    // Members of the argument are never their own parents.
    CHECK(parents(cycle, u.set_of({"a", "b"})) == u.set_of({"c"}));
    CHECK_THROWS_WITH_AS(parents(cycle, NodeSet::of({5})), doctest::Contains("node"), QueryError);
}

TEST_CASE("ancestral sets") {
    const DiGraph cycle = fixtures::cycle_graph();
    CHECK(ancestral_set(cycle, cycle.set_of({"a"})) == cycle.vertices());

    const DiGraph empty = graph({"a", "b", "c"}, {});
    CHECK(ancestral_set(empty, empty.set_of({"b"})) == empty.set_of({"b"}));

    const DiGraph home = fixtures::home_care_graph();
    CHECK(ancestral_set(home, home.set_of({"survival"})) == home.vertices());
    CHECK(ancestral_set(home, home.set_of({"health"})) == home.set_of({"health"}));
}

TEST_CASE("out-edge deletion") {
    const DiGraph cycle = fixtures::cycle_graph();
    CHECK(label_edges(delete_out_edges(cycle, cycle.set_of({"a"}))) == std::vector<LabelEdge>{{"b", "c"}, {"c", "a"}});
    CHECK(delete_out_edges(cycle, NodeSet{}) == cycle);
    const DiGraph two = graph({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    CHECK(delete_out_edges(two, two.vertices()).edge_count() == 0);
    CHECK(delete_out_edges(two, two.vertices()).vertices() == two.vertices());
}

TEST_CASE("induced subgraphs") {
    const DiGraph g = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    const DiGraph ab = induced_subgraph(g, g.set_of({"a", "b"}));
    CHECK(ab.vertices() == g.set_of({"a", "b"}));
    CHECK(label_edges(ab) == std::vector<LabelEdge>{{"a", "b"}});
    CHECK(induced_subgraph(g, g.vertices()) == g);
    const DiGraph none = induced_subgraph(g, NodeSet{});
    CHECK(none.vertices().empty());
    CHECK(none.edge_count() == 0);
}

TEST_CASE("moralization") {
    const DiGraph ga = graph({"a", "b", "c"}, {{"b", "c"}, {"c", "a"}});
    const UGraph m = moralize(ga);
    CHECK(label_edges(m) == std::vector<LabelEdge>{{"a", "c"}, {"b", "c"}});
    CHECK(u_separated(m, m.universe().set_of({"a"}), m.universe().set_of({"b"}), m.universe().set_of({"c"})));

    const DiGraph v = graph({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}});
    CHECK(label_edges(moralize(v)) == std::vector<LabelEdge>{{"a", "b"}, {"a", "c"}, {"b", "c"}});

    const DiGraph two = graph({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    CHECK(label_edges(moralize(two)) == std::vector<LabelEdge>{{"a", "b"}});
}

TEST_CASE("undirected separation") {
    const DiGraph path = graph({"a", "b", "c"}, {{"b", "c"}, {"c", "a"}});
    const UGraph h = moralize(path);
    const auto& u = h.universe();
    CHECK(u_separated(h, u.set_of({"a"}), u.set_of({"b"}), u.set_of({"c"})));
    CHECK(u_separated(h, NodeSet{}, u.set_of({"b"}), NodeSet{}));
    const UGraph ab = moralize(graph({"a", "b"}, {{"a", "b"}}));
    CHECK_FALSE(u_separated(ab, ab.universe().set_of({"a"}), ab.universe().set_of({"b"}), NodeSet{}));
}

TEST_CASE("surgeries agree with matrix oracles on every graph over four nodes") {
    std::size_t graphs = 0;
    for_each_digraph(4, [&](const DiGraph& g) {
        ++graphs;
        const auto m = oracle::adjacency(g);
        const UGraph h = moralize(g);
        const auto mm = oracle::moral(m);
        for (std::size_t j = 0; j < 4; ++j) {
            for (std::size_t k = 0; k < 4; ++k) {
                if (j != k) REQUIRE(h.adjacent(j, k) == mm[j][k]);
            }
        }
        for (auto s : ordered_subsets(g.vertices())) {
            REQUIRE(ancestral_set(g, s).bits() == oracle::ancestors(m, s.bits()));
        }
        return true;
    });
    CHECK(graphs == 4096);
}

TEST_CASE("undirected separation agrees with simple-path enumeration") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 5;
        std::vector<NodeSet> adj(n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (rng() % 3 == 0) {
                    adj[j] = adj[j].with(k);
                    adj[k] = adj[k].with(j);
                }
            }
        }
        const UGraph h(make_universe(letter_labels(n)), NodeSet::first_n(n), adj);
        oracle::Matrix um(n, std::vector<bool>(n, false));
        for (std::size_t j = 0; j < n; ++j) {
            for (auto k : adj[j]) um[j][k] = true;
        }
        for (std::uint64_t a = 0; a < 32; ++a) {
            for (std::uint64_t b = 0; b < 32; b += 3) {
                const std::uint64_t c = rng() % 32;
                if ((a & b) & ~c) continue;
                const bool lib = u_separated(h, NodeSet{a}, NodeSet{b}, NodeSet{c});
                REQUIRE(lib == oracle::u_separated(um, a, b, c));
                REQUIRE(lib == u_separated(h, NodeSet{b}, NodeSet{a}, NodeSet{c}));
            }
        }
    }
}

TEST_CASE("deleting edges out of B leaves the ancestral set of A, B, C unchanged") {
    for_each_digraph(4, [&](const DiGraph& g) {
        const auto subs = ordered_subsets(g.vertices());
        for (auto b : subs) {
            const DiGraph gb = delete_out_edges(g, b);
            for (auto ac : subs) {
                REQUIRE(ancestral_set(gb, ac | b) == ancestral_set(g, ac | b));
            }
        }
        return true;
    });
}

TEST_CASE("ancestral sets are monotone and idempotent") {
    for_each_digraph(4, [&](const DiGraph& g) {
        const auto subs = ordered_subsets(g.vertices());
        for (auto a : subs) {
            const NodeSet an = ancestral_set(g, a);
            REQUIRE(ancestral_set(g, an) == an);
            REQUIRE(parents(g, an).empty());
            for (auto b : subs) {
                if (a.subset_of(b)) REQUIRE(an.subset_of(ancestral_set(g, b)));
            }
        }
        return true;
    });
}

TEST_CASE("moralization adds nothing when parents of every child are already adjacent") {
    std::mt19937 rng(5);
    std::size_t closed = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        std::vector<NodeSet> parent_masks(n);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k && rng() % 2 == 0) parent_masks[k] = parent_masks[k].with(j);
            }
        }
        const DiGraph g =
            DiGraph::from_parent_masks(make_universe(letter_labels(n)), NodeSet::first_n(n), parent_masks);
        const UGraph m = moralize(g);
        bool parents_adjacent = true;
        for (std::size_t k = 0; k < n; ++k) {
            for (auto i : parent_masks[k]) {
                for (auto j : parent_masks[k]) {
                    if (i < j && !g.has_edge(i, j) && !g.has_edge(j, i)) parents_adjacent = false;
                }
            }
        }
        bool skeleton = true;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (j != k && m.adjacent(j, k) != (g.has_edge(j, k) || g.has_edge(k, j))) skeleton = false;
            }
        }
        CHECK(parents_adjacent == skeleton);
        if (parents_adjacent) ++closed;

        // Round trip through the symmetric digraph marries every pair of
        // neighbours, so it is the identity exactly on unions of cliques.
        bool cliques = true;
        for (std::size_t v = 0; v < n; ++v) {
            for (auto i : m.neighbours(v)) {
                for (auto j : m.neighbours(v)) {
                    if (i != j && !m.adjacent(i, j)) cliques = false;
                }
            }
        }
        CHECK((moralize(m.to_symmetric_digraph()) == m) == cliques);
    }
    CHECK(closed > 100);
}
