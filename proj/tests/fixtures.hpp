#ifndef LOCIND_TESTS_FIXTURES_HPP
#define LOCIND_TESTS_FIXTURES_HPP

#include <random>
#include <string>
#include <vector>

#include "locind/cfmp.hpp"
#include "locind/digraph.hpp"

namespace fixtures {

using locind::cfmp::CfmpSpec;
using locind::cfmp::Intensity;

// Binary component whose rates depend on one binary parent. Rates are keyed
// (parent state, own state): rate of leaving own state.
inline Intensity binary_on(const std::string& parent, double r00, double r01, double r10, double r11) {
    Intensity in{{parent}, {}};
    const double r[2][2] = {{r00, r01}, {r10, r11}};
    for (std::size_t p = 0; p < 2; ++p) {
        for (std::size_t own = 0; own < 2; ++own) in.table.push_back({{{parent, p}}, own, 1 - own, r[p][own]});
    }
    return in;
}

/// Three binary components wired a -> b -> c -> a.
inline CfmpSpec cycle3() {
    CfmpSpec s;
    s.components = {{"a", 2}, {"b", 2}, {"c", 2}};
    s.intensities["a"] = binary_on("c", 0.6, 1.1, 1.7, 0.4);
    s.intensities["b"] = binary_on("a", 0.5, 1.3, 1.9, 0.7);
    s.intensities["c"] = binary_on("b", 0.8, 1.2, 0.3, 1.6);
    return s;
}

/// Home-care example: health affects hospitalization and survival;
/// hospitalization and visits influence each other; hospitalization affects
/// survival. Death (survival = 1) is absorbing.
inline CfmpSpec home_care() {
    CfmpSpec s;
    s.components = {{"health", 2}, {"hosp", 2}, {"survival", 2}, {"visits", 2}};

    Intensity health{{}, {{{}, 0, 1, 0.4}, {{}, 1, 0, 0.9}}};
    s.intensities["health"] = health;

    s.intensities["visits"] = binary_on("hosp", 0.5, 1.0, 1.6, 0.6);

    Intensity hosp{{"health", "visits"}, {}};
    const double base[2][2] = {{0.3, 1.2}, {1.4, 0.8}};
    for (std::size_t he = 0; he < 2; ++he) {
        for (std::size_t v = 0; v < 2; ++v) {
            for (std::size_t own = 0; own < 2; ++own) {
                double r = base[he][own];
                if (v == 1) r *= own == 0 ? 0.45 : 1.15;
                hosp.table.push_back({{{"health", he}, {"visits", v}}, own, 1 - own, r});
            }
        }
    }
    s.intensities["hosp"] = hosp;

    Intensity survival{{"health", "hosp"}, {}};
    const double die[2][2] = {{0.2, 0.7}, {0.9, 1.8}};
    for (std::size_t he = 0; he < 2; ++he) {
        for (std::size_t ho = 0; ho < 2; ++ho) {
            survival.table.push_back({{{"health", he}, {"hosp", ho}}, 0, 1, die[he][ho]});
            survival.table.push_back({{{"health", he}, {"hosp", ho}}, 1, 0, 0.0});
        }
    }
    s.intensities["survival"] = survival;
    return s;
}

/// Random valid spec: components x0, x1, ... with the given cardinality
/// range, each depending on every other component with probability
/// dep_percent / 100, rates uniform on [0.1, 2.0).
inline CfmpSpec random_spec(std::mt19937& rng, std::size_t components, std::size_t min_card, std::size_t max_card,
                            unsigned dep_percent) {
    CfmpSpec s;
    for (std::size_t k = 0; k < components; ++k) {
        s.components.push_back({"x" + std::to_string(k), min_card + rng() % (max_card - min_card + 1)});
    }
    std::uniform_real_distribution<double> rate(0.1, 2.0);
    for (const auto& c : s.components) {
        Intensity in;
        std::vector<std::size_t> cards;
        for (const auto& d : s.components) {
            if (d.name != c.name && rng() % 100 < dep_percent) {
                in.depends_on.push_back(d.name);
                cards.push_back(d.states);
            }
        }
        std::size_t configs = 1;
        for (auto n : cards) configs *= n;
        for (std::size_t cfg = 0; cfg < configs; ++cfg) {
            std::map<std::string, std::size_t> given;
            std::size_t rest = cfg;
            for (std::size_t i = 0; i < cards.size(); ++i) {
                given[in.depends_on[i]] = rest % cards[i];
                rest /= cards[i];
            }
            for (std::size_t from = 0; from < c.states; ++from) {
                for (std::size_t to = 0; to < c.states; ++to) {
                    if (from != to) in.table.push_back({given, from, to, rate(rng)});
                }
            }
        }
        s.intensities[c.name] = std::move(in);
    }
    return s;
}

inline locind::DiGraph cycle_graph() {
    return locind::DiGraph::from_labels({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
}

inline locind::DiGraph home_care_graph() {
    return locind::DiGraph::from_labels(
        {"health", "hosp", "survival", "visits"},
        {{"health", "hosp"}, {"health", "survival"}, {"visits", "hosp"}, {"hosp", "visits"}, {"hosp", "survival"}});
}

}  // namespace fixtures

#endif  // LOCIND_TESTS_FIXTURES_HPP
