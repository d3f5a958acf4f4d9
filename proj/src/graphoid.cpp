#include "locind/graphoid.hpp"

#include <array>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <type_traits>

namespace locind {

struct IrrelevanceOracle::Cache {
    std::once_flag once;
    std::vector<std::uint8_t> table;
};

IrrelevanceOracle::IrrelevanceOracle(UniversePtr ground, Query query)
    : m_ground(std::move(ground)), m_query(std::move(query)), m_cache(std::make_shared<Cache>()) {
    if (!m_ground) throw std::invalid_argument("oracle needs a ground set");
}

const std::vector<std::uint8_t>& IrrelevanceOracle::truth_table() const {
    const std::size_t n = m_ground->size();
    if (n > kMaxGroundSize) {
        throw std::invalid_argument("ground set has " + std::to_string(n) +
                                    " elements, exhaustive checks are limited to " + std::to_string(kMaxGroundSize));
    }
    std::call_once(m_cache->once, [&] {
        const std::uint64_t side = std::uint64_t{1} << n;
        auto& t = m_cache->table;
        t.resize(side * side * side);
        for (std::uint64_t c = 0; c < side; ++c) {
            for (std::uint64_t b = 0; b < side; ++b) {
                for (std::uint64_t a = 0; a < side; ++a) {
                    auto v = m_query(NodeSet{a}, NodeSet{b}, NodeSet{c});
                    t[a | (b << n) | (c << (2 * n))] = !v ? 2 : (*v ? 1 : 0);
                }
            }
        }
    });
    return m_cache->table;
}

IrrelevanceOracle IrrelevanceOracle::total(UniversePtr ground, std::function<bool(NodeSet, NodeSet, NodeSet)> query) {
    return IrrelevanceOracle(std::move(ground), [q = std::move(query)](NodeSet a, NodeSet b, NodeSet c) {
        return std::optional<bool>(q(a, b, c));
    });
}

IrrelevanceOracle separation_oracle(const DiGraph& g) {
    if (g.vertices() != g.universe().all()) {
        throw std::invalid_argument("separation_oracle: graph vertices must cover its universe");
    }
    return IrrelevanceOracle::total(g.universe_ptr(), [g](NodeSet a, NodeSet b, NodeSet c) {
        return delta_separates(g, SeparationQuery{a, b, c});
    });
}

IrrelevanceOracle undirected_oracle(const UGraph& h) {
    if (h.vertices() != h.universe().all()) {
        throw std::invalid_argument("undirected_oracle: graph vertices must cover its universe");
    }
    return IrrelevanceOracle::total(h.universe_ptr(),
                                    [h](NodeSet a, NodeSet b, NodeSet c) { return u_separated(h, a, b, c); });
}

IrrelevanceOracle constant_oracle(UniversePtr ground, bool value) {
    return IrrelevanceOracle::total(std::move(ground), [value](NodeSet, NodeSet, NodeSet) { return value; });
}

namespace {

constexpr std::array<std::string_view, 10> kAxiomNames = {
    "LeftRedundancy",  "RightRedundancy",  "LeftDecomposition", "RightDecomposition", "LeftWeakUnion",
    "RightWeakUnion",  "LeftContraction",  "RightContraction",  "LeftIntersection",   "RightIntersection",
};

constexpr std::array<std::string_view, 8> kDerivedNames = {
    "LeftConditionReduction",       "RightConditionReduction",       "LeftAlternativeIntersection",
    "RightAlternativeIntersection", "LocalRightDecomposition",       "SeparationRightDecomposition",
    "SeparationAlternativeIntersection", "GuardedRightDecomposition",
};

enum class Truth : std::uint8_t { False = 0, True = 1, Unknown = 2 };

Truth operator&&(Truth x, Truth y) {
    if (x == Truth::False || y == Truth::False) return Truth::False;
    if (x == Truth::Unknown || y == Truth::Unknown) return Truth::Unknown;
    return Truth::True;
}

Truth operator||(Truth x, Truth y) {
    if (x == Truth::True || y == Truth::True) return Truth::True;
    if (x == Truth::Unknown || y == Truth::Unknown) return Truth::Unknown;
    return Truth::False;
}

enum class Outcome { Satisfied, Violated, Undecided };

Outcome implies(Truth premise, Truth conclusion) {
    if (premise == Truth::False) return Outcome::Satisfied;
    if (premise == Truth::Unknown || conclusion == Truth::Unknown) return Outcome::Undecided;
    return conclusion == Truth::True ? Outcome::Satisfied : Outcome::Violated;
}

Outcome equivalent(Truth lhs, Truth rhs) {
    if (lhs == Truth::Unknown || rhs == Truth::Unknown) return Outcome::Undecided;
    return lhs == rhs ? Outcome::Satisfied : Outcome::Violated;
}

Outcome holds(Truth t) { return implies(Truth::True, t); }

class Table {
public:
    explicit Table(const IrrelevanceOracle& o) : m_n(o.ground().size()), m_values(o.truth_table()) {}

    Truth operator()(NodeSet a, NodeSet b, NodeSet c) const {
        return static_cast<Truth>(m_values[a.bits() | (b.bits() << m_n) | (c.bits() << (2 * m_n))]);
    }

private:
    std::size_t m_n;
    const std::vector<std::uint8_t>& m_values;
};

/// Lazily-evaluated view used for replays, where tabulating is wasteful.
class Direct {
public:
    explicit Direct(const IrrelevanceOracle& o) : m_o(o) {}
    Truth operator()(NodeSet a, NodeSet b, NodeSet c) const {
        auto v = m_o(a, b, c);
        return !v ? Truth::Unknown : (*v ? Truth::True : Truth::False);
    }

private:
    const IrrelevanceOracle& m_o;
};

enum class FourthSet { None, SubsetOfA, SubsetOfB, Any };

bool pairwise_disjoint(NodeSet a, NodeSet b, NodeSet c, NodeSet d) {
    return !a.intersects(b) && !a.intersects(c) && !a.intersects(d) && !b.intersects(c) && !b.intersects(d) &&
           !c.intersects(d);
}

template <class Admit, class Eval>
struct Rule {
    FourthSet fourth;
    Admit admit;
    Eval eval;
};

template <class Admit, class Eval>
Rule<Admit, Eval> rule(FourthSet fourth, Admit admit, Eval eval) {
    return {fourth, admit, eval};
}

constexpr auto kAdmitAll = [](const Instance&) { return true; };
constexpr auto kDisjoint = [](const Instance& i) { return pairwise_disjoint(i.a, i.b, i.c, *i.d); };

constexpr auto kRightAlternativeIntersection = [](const auto& ir, const Instance& i) {
    const NodeSet d = *i.d;
    return implies(ir(i.a, i.b, i.c | d) && ir(i.a, i.c, i.b | d), ir(i.a, i.b | i.c, d));
};

constexpr auto kShiftedRightDecomposition = [](const auto& ir, const Instance& i) {
    return implies(ir(i.a, i.b, i.c), ir(i.a, *i.d, (i.c | i.b) - *i.d));
};

/// Calls f with the concrete rule for an axiom.
template <class F>
auto with_axiom_rule(AxiomId ax, F&& f) {
    switch (ax) {
        case AxiomId::LeftRedundancy:
            return f(rule(FourthSet::None, [](const Instance& i) { return i.c == i.a; },
                          [](const auto& ir, const Instance& i) { return holds(ir(i.a, i.b, i.a)); }));
        case AxiomId::RightRedundancy:
            return f(rule(FourthSet::None, [](const Instance& i) { return i.c == i.b; },
                          [](const auto& ir, const Instance& i) { return holds(ir(i.a, i.b, i.b)); }));
        case AxiomId::LeftDecomposition:
            return f(rule(FourthSet::SubsetOfA, kAdmitAll, [](const auto& ir, const Instance& i) {
                return implies(ir(i.a, i.b, i.c), ir(*i.d, i.b, i.c));
            }));
        case AxiomId::RightDecomposition:
            return f(rule(FourthSet::SubsetOfB, kAdmitAll, [](const auto& ir, const Instance& i) {
                return implies(ir(i.a, i.b, i.c), ir(i.a, *i.d, i.c));
            }));
        case AxiomId::LeftWeakUnion:
            return f(rule(FourthSet::SubsetOfA, kAdmitAll, [](const auto& ir, const Instance& i) {
                return implies(ir(i.a, i.b, i.c), ir(i.a, i.b, i.c | *i.d));
            }));
        case AxiomId::RightWeakUnion:
            return f(rule(FourthSet::SubsetOfB, kAdmitAll, [](const auto& ir, const Instance& i) {
                return implies(ir(i.a, i.b, i.c), ir(i.a, i.b, i.c | *i.d));
            }));
        case AxiomId::LeftContraction:
            return f(rule(FourthSet::Any, kAdmitAll, [](const auto& ir, const Instance& i) {
                return implies(ir(i.a, i.b, i.c) && ir(*i.d, i.b, i.a | i.c), ir(i.a | *i.d, i.b, i.c));
            }));
        case AxiomId::RightContraction:
            return f(rule(FourthSet::Any, kAdmitAll, [](const auto& ir, const Instance& i) {
                return implies(ir(i.a, i.b, i.c) && ir(i.a, *i.d, i.b | i.c), ir(i.a, i.b | *i.d, i.c));
            }));
        case AxiomId::LeftIntersection:
            return f(rule(FourthSet::None, kAdmitAll, [](const auto& ir, const Instance& i) {
                return implies(ir(i.a, i.b, i.c) && ir(i.c, i.b, i.a), ir(i.a | i.c, i.b, i.a & i.c));
            }));
        case AxiomId::RightIntersection:
            return f(rule(FourthSet::None, kAdmitAll, [](const auto& ir, const Instance& i) {
                return implies(ir(i.a, i.b, i.c) && ir(i.a, i.c, i.b), ir(i.a, i.b | i.c, i.b & i.c));
            }));
    }
    throw std::logic_error("unknown axiom");
}

template <class F>
auto with_derived_rule(DerivedPropertyId p, DerivedOptions opts, F&& f) {
    switch (p) {
        case DerivedPropertyId::LeftConditionReduction:
            return f(rule(FourthSet::None, kAdmitAll, [](const auto& ir, const Instance& i) {
                return equivalent(ir(i.a, i.b, i.c), ir(i.a - i.c, i.b, i.c));
            }));
        case DerivedPropertyId::RightConditionReduction:
            return f(rule(FourthSet::None, kAdmitAll, [](const auto& ir, const Instance& i) {
                return equivalent(ir(i.a, i.b, i.c), ir(i.a, i.b - i.c, i.c));
            }));
        case DerivedPropertyId::LeftAlternativeIntersection:
            return f(rule(FourthSet::Any, kDisjoint, [](const auto& ir, const Instance& i) {
                const NodeSet d = *i.d;
                return implies(ir(i.a, i.b, i.c | d) && ir(i.c, i.b, i.a | d), ir(i.a | i.c, i.b, d));
            }));
        case DerivedPropertyId::RightAlternativeIntersection:
            return f(rule(FourthSet::Any, kDisjoint, kRightAlternativeIntersection));
        case DerivedPropertyId::LocalRightDecomposition:
        case DerivedPropertyId::SeparationRightDecomposition:
            return f(rule(FourthSet::SubsetOfB, kAdmitAll, kShiftedRightDecomposition));
        case DerivedPropertyId::SeparationAlternativeIntersection:
            if (opts.allow_overlap) {
                // A may meet B and C; B, C, D stay pairwise disjoint and A misses D.
                return f(rule(FourthSet::Any,
                              [](const Instance& i) {
                                  const NodeSet d = *i.d;
                                  return !i.b.intersects(i.c) && !i.b.intersects(d) && !i.c.intersects(d) &&
                                         !i.a.intersects(d);
                              },
                              kRightAlternativeIntersection));
            }
            return f(rule(FourthSet::Any, kDisjoint, kRightAlternativeIntersection));
        case DerivedPropertyId::GuardedRightDecomposition:
            return f(rule(FourthSet::SubsetOfB,
                          [](const Instance& i) { return ((i.a & i.b) - (i.c | *i.d)).empty(); },
                          [](const auto& ir, const Instance& i) {
                              const NodeSet a = i.a, b = i.b, c = i.c, d = *i.d;
                              Truth per_k = Truth::True;
                              for (auto k : c - d) {
                                  const NodeSet kk = NodeSet::single(k);
                                  const NodeSet rest = c - kk;
                                  per_k = per_k && (ir(a, kk, rest | b) || ir(b, kk, rest | d | a));
                              }
                              const Truth cond_i = ir(b, d, a | c);
                              const Truth cond_ii = ir(b, a - (c | d), c | d) && per_k;
                              return implies(ir(a, b, c) && (cond_i || cond_ii), ir(a, d, c));
                          }));
    }
    throw std::logic_error("unknown derived property");
}

void require_ground(const IrrelevanceOracle& o) {
    if (o.ground().size() > kMaxGroundSize) {
        throw std::invalid_argument("ground set has " + std::to_string(o.ground().size()) +
                                    " elements, exhaustive checks are limited to " + std::to_string(kMaxGroundSize));
    }
}

template <class R>
CheckReport run_rule(const IrrelevanceOracle& o, const R& rule, PropertyId id) {
    require_ground(o);
    const Table table(o);

    const std::size_t n = o.ground().size();
    const std::size_t side = std::size_t{1} << n;
    std::vector<std::vector<NodeSet>> subsets_of(side);
    for (std::size_t m = 0; m < side; ++m) subsets_of[m] = ordered_subsets(NodeSet{m});
    const auto& all = subsets_of[side - 1];

    CheckReport report;
    report.property = id;
    auto visit = [&](const Instance& inst) {
        if (!rule.admit(inst)) return true;
        switch (rule.eval(table, inst)) {
            case Outcome::Satisfied:
                ++report.instances_checked;
                return true;
            case Outcome::Undecided:
                ++report.instances_skipped;
                return true;
            case Outcome::Violated:
                ++report.instances_checked;
                report.holds = false;
                report.counterexample = inst;
                return false;
        }
        return true;
    };

    for (auto a : all) {
        for (auto b : all) {
            for (auto c : all) {
                if (rule.fourth == FourthSet::None) {
                    if (!visit(Instance{a, b, c, std::nullopt})) return report;
                    continue;
                }
                const auto& ds = rule.fourth == FourthSet::SubsetOfA   ? subsets_of[a.bits()]
                                 : rule.fourth == FourthSet::SubsetOfB ? subsets_of[b.bits()]
                                                                       : all;
                for (auto d : ds) {
                    if (!visit(Instance{a, b, c, d})) return report;
                }
            }
        }
    }
    return report;
}

}  // namespace

std::string_view name_of(AxiomId id) { return kAxiomNames.at(static_cast<std::size_t>(id)); }
std::string_view name_of(DerivedPropertyId id) { return kDerivedNames.at(static_cast<std::size_t>(id)); }
std::string_view name_of(const PropertyId& id) {
    return std::visit([](auto v) { return name_of(v); }, id);
}

std::optional<PropertyId> property_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kAxiomNames.size(); ++i) {
        if (kAxiomNames[i] == name) return PropertyId{static_cast<AxiomId>(i)};
    }
    for (std::size_t i = 0; i < kDerivedNames.size(); ++i) {
        if (kDerivedNames[i] == name) return PropertyId{static_cast<DerivedPropertyId>(i)};
    }
    return std::nullopt;
}

CheckReport check_axiom(const IrrelevanceOracle& o, AxiomId ax) {
    return with_axiom_rule(ax, [&](const auto& r) { return run_rule(o, r, ax); });
}

CheckReport check_derived(const IrrelevanceOracle& o, DerivedPropertyId p, DerivedOptions opts) {
    return with_derived_rule(p, opts, [&](const auto& r) { return run_rule(o, r, p); });
}

Profile separation_profile() {
    return {
        {AxiomId::LeftRedundancy, Expectation::Holds},    {AxiomId::RightRedundancy, Expectation::Any},
        {AxiomId::LeftDecomposition, Expectation::Holds}, {AxiomId::RightDecomposition, Expectation::Any},
        {AxiomId::LeftWeakUnion, Expectation::Holds},     {AxiomId::RightWeakUnion, Expectation::Holds},
        {AxiomId::LeftContraction, Expectation::Holds},   {AxiomId::RightContraction, Expectation::Holds},
        {AxiomId::LeftIntersection, Expectation::Holds},  {AxiomId::RightIntersection, Expectation::Holds},
    };
}

Profile local_independence_profile() {
    return {
        {AxiomId::LeftRedundancy, Expectation::Holds},    {AxiomId::RightRedundancy, Expectation::Any},
        {AxiomId::LeftDecomposition, Expectation::Holds}, {AxiomId::RightDecomposition, Expectation::Any},
        {AxiomId::LeftWeakUnion, Expectation::Holds},     {AxiomId::RightWeakUnion, Expectation::Holds},
        {AxiomId::LeftContraction, Expectation::Holds},   {AxiomId::RightContraction, Expectation::Any},
        {AxiomId::LeftIntersection, Expectation::Any},    {AxiomId::RightIntersection, Expectation::Holds},
    };
}

ProfileResult check_semigraphoid_profile(const IrrelevanceOracle& o, const Profile& expected) {
    ProfileResult result;
    for (auto ax : kAllAxioms) {
        CheckReport r = check_axiom(o, ax);
        auto it = expected.find(ax);
        const Expectation e = it == expected.end() ? Expectation::Any : it->second;
        if ((e == Expectation::Holds && !r.holds) || (e == Expectation::Fails && r.holds)) result.matches = false;
        result.reports.push_back(std::move(r));
    }
    return result;
}

bool replay_counterexample(const IrrelevanceOracle& o, const CheckReport& report, DerivedOptions opts) {
    if (!report.counterexample) return false;
    const Instance& inst = *report.counterexample;
    const Direct direct(o);
    auto replay = [&](const auto& r) {
        if (!r.admit(inst)) return false;
        if (r.fourth == FourthSet::None ? inst.d.has_value() : !inst.d.has_value()) return false;
        return r.eval(direct, inst) == Outcome::Violated;
    };
    return std::visit(
        [&](auto id) {
            if constexpr (std::is_same_v<decltype(id), AxiomId>) {
                return with_axiom_rule(id, replay);
            } else {
                return with_derived_rule(id, opts, replay);
            }
        },
        report.property);
}

std::vector<std::string> letter_labels(std::size_t n) {
    if (n > 26) throw std::invalid_argument("letter_labels: at most 26 labels");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
    return out;
}

void for_each_digraph(std::size_t n, const std::function<bool(const DiGraph&)>& visit) {
    if (n > kMaxSearchNodes) {
        throw std::invalid_argument("for_each_digraph: at most " + std::to_string(kMaxSearchNodes) + " nodes");
    }
    auto u = make_universe(letter_labels(n));
    std::vector<Edge> slots;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            if (j != k) slots.emplace_back(j, k);
        }
    }
    const std::uint64_t count = std::uint64_t{1} << slots.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        std::vector<NodeSet> pa(n);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if ((mask >> s) & 1U) pa[slots[s].second] = pa[slots[s].second].with(slots[s].first);
        }
        if (!visit(DiGraph::from_parent_masks(u, u->all(), std::move(pa)))) return;
    }
}

std::optional<RightDecompositionWitness> find_right_decomposition_counterexample(std::size_t ground_size) {
    if (ground_size > kMaxSearchNodes) {
        throw std::invalid_argument("find_right_decomposition_counterexample: ground_size above " +
                                    std::to_string(kMaxSearchNodes));
    }
    std::optional<RightDecompositionWitness> found;
    for_each_digraph(ground_size, [&](const DiGraph& g) {
        const auto subsets = ordered_subsets(g.vertices());
        for (auto a : subsets) {
            if (a.empty()) continue;
            for (auto b : subsets) {
                if (b.empty() || b.intersects(a)) continue;
                for (auto c : subsets) {
                    if (c.intersects(a | b)) continue;
                    if (!delta_separates(g, {a, b, c})) continue;
                    for (auto d : ordered_subsets(b)) {
                        if (!delta_separates(g, {a, d, c})) {
                            found = RightDecompositionWitness{g, {a, b, c}, d};
                            return false;
                        }
                    }
                }
            }
        }
        return true;
    });
    return found;
}

}  // namespace locind
