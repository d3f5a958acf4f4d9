#ifndef LOCIND_GRAPHOID_HPP
#define LOCIND_GRAPHOID_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "locind/digraph.hpp"
#include "locind/separation.hpp"

namespace locind {

inline constexpr std::size_t kMaxGroundSize = 5;
inline constexpr std::size_t kMaxSearchNodes = 4;

/// A ternary relation "A is irrelevant for B given C" over subsets of a
/// finite ground set. A query may answer "unknown" (nullopt) for triples the
/// underlying relation cannot evaluate; checks skip instances that depend on
/// such answers.
class IrrelevanceOracle {
public:
    using Query = std::function<std::optional<bool>(NodeSet a, NodeSet b, NodeSet c)>;

    IrrelevanceOracle(UniversePtr ground, Query query);

    static IrrelevanceOracle total(UniversePtr ground, std::function<bool(NodeSet, NodeSet, NodeSet)> query);

    const NodeUniverse& ground() const { return *m_ground; }
    const UniversePtr& ground_ptr() const { return m_ground; }
    std::optional<bool> operator()(NodeSet a, NodeSet b, NodeSet c) const { return m_query(a, b, c); }

    /// Answers on every triple of subsets, indexed a | b << n | c << 2n with
    /// 0 = false, 1 = true, 2 = unknown. Computed on first use and shared by
    /// copies. Refuses ground sets above kMaxGroundSize.
    const std::vector<std::uint8_t>& truth_table() const;

private:
    struct Cache;

    UniversePtr m_ground;
    Query m_query;
    std::shared_ptr<Cache> m_cache;
};

/// δ-separation on `g`: (A IR B | C) iff C δ-separates A from B. The ground
/// set is the graph's universe, which must equal its vertex set.
IrrelevanceOracle separation_oracle(const DiGraph& g);

/// Classical undirected separation extended to overlapping sets:
/// (A IR B | C) iff (A ∩ B) ⊆ C and every path from A \ C to B \ C meets C.
IrrelevanceOracle undirected_oracle(const UGraph& h);

IrrelevanceOracle constant_oracle(UniversePtr ground, bool value);

enum class AxiomId {
    LeftRedundancy,
    RightRedundancy,
    LeftDecomposition,
    RightDecomposition,
    LeftWeakUnion,
    RightWeakUnion,
    LeftContraction,
    RightContraction,
    LeftIntersection,
    RightIntersection,
};

inline constexpr AxiomId kAllAxioms[] = {
    AxiomId::LeftRedundancy,   AxiomId::RightRedundancy, AxiomId::LeftDecomposition, AxiomId::RightDecomposition,
    AxiomId::LeftWeakUnion,    AxiomId::RightWeakUnion,  AxiomId::LeftContraction,   AxiomId::RightContraction,
    AxiomId::LeftIntersection, AxiomId::RightIntersection,
};

/// Properties derived from the axioms.
enum class DerivedPropertyId {
    /// A IR B | C  <=>  A \ C IR B | C
    LeftConditionReduction,
    /// A IR B | C  <=>  A IR B \ C | C
    RightConditionReduction,
    /// A IR B | C∪D and C IR B | A∪D  =>  A∪C IR B | D, pairwise disjoint sets.
    LeftAlternativeIntersection,
    /// A IR B | C∪D and A IR C | B∪D  =>  A IR B∪C | D, pairwise disjoint sets.
    RightAlternativeIntersection,
    /// A IR B | C, D ⊆ B  =>  A IR D | (C ∪ B) \ D, stated for local independence.
    LocalRightDecomposition,
    /// The same implication stated for δ-separation.
    SeparationRightDecomposition,
    /// RightAlternativeIntersection as stated for δ-separation; with
    /// DerivedOptions::allow_overlap, A may also meet B and C.
    SeparationAlternativeIntersection,
    /// Right decomposition under (A ∩ B) \ (C ∪ D) = ∅ and either
    /// (i) B IR D | A∪C, or (ii) B IR A \ (C∪D) | C∪D and, for every
    /// k ∈ C \ D, A IR {k} | (C \ {k}) ∪ B or B IR {k} | (C \ {k}) ∪ D ∪ A.
    GuardedRightDecomposition,
};

inline constexpr DerivedPropertyId kAllDerived[] = {
    DerivedPropertyId::LeftConditionReduction,       DerivedPropertyId::RightConditionReduction,
    DerivedPropertyId::LeftAlternativeIntersection,  DerivedPropertyId::RightAlternativeIntersection,
    DerivedPropertyId::LocalRightDecomposition,      DerivedPropertyId::SeparationRightDecomposition,
    DerivedPropertyId::SeparationAlternativeIntersection, DerivedPropertyId::GuardedRightDecomposition,
};

using PropertyId = std::variant<AxiomId, DerivedPropertyId>;

std::string_view name_of(AxiomId id);
std::string_view name_of(DerivedPropertyId id);
std::string_view name_of(const PropertyId& id);
std::optional<PropertyId> property_from_name(std::string_view name);

/// One quantified instance. `d` is absent for properties without a fourth set.
struct Instance {
    NodeSet a;
    NodeSet b;
    NodeSet c;
    std::optional<NodeSet> d;

    bool operator==(const Instance&) const = default;
};

struct CheckReport {
    PropertyId property;
    bool holds = true;
    /// First violation in canonical enumeration order.
    std::optional<Instance> counterexample;
    std::size_t instances_checked = 0;
    /// Instances not decidable because the oracle answered "unknown".
    std::size_t instances_skipped = 0;
};

struct DerivedOptions {
    bool allow_overlap = false;
};

/// Exhaustively checks one axiom. Refuses ground sets above kMaxGroundSize.
CheckReport check_axiom(const IrrelevanceOracle& o, AxiomId ax);

CheckReport check_derived(const IrrelevanceOracle& o, DerivedPropertyId p, DerivedOptions opts = {});

enum class Expectation { Holds, Fails, Any };

using Profile = std::map<AxiomId, Expectation>;

/// Axioms δ-separation is known to satisfy; right redundancy and right
/// decomposition are not guaranteed.
Profile separation_profile();
/// Axioms local independence is known to satisfy.
Profile local_independence_profile();

struct ProfileResult {
    std::vector<CheckReport> reports;
    bool matches = true;
};

/// Runs all ten axioms and compares the observed pattern with `expected`.
/// Axioms missing from `expected` are treated as Expectation::Any.
ProfileResult check_semigraphoid_profile(const IrrelevanceOracle& o, const Profile& expected);

/// Re-evaluates a reported counterexample; true iff the violation reproduces.
bool replay_counterexample(const IrrelevanceOracle& o, const CheckReport& report, DerivedOptions opts = {});

/// Calls `visit` for every digraph on `n` nodes labelled a, b, c, ... in edge
/// mask order until it returns false. Edges are ordered lexicographically.
void for_each_digraph(std::size_t n, const std::function<bool(const DiGraph&)>& visit);

/// Labels a, b, c, ... for small ground sets.
std::vector<std::string> letter_labels(std::size_t n);

struct RightDecompositionWitness {
    DiGraph graph;
    SeparationQuery query;
    NodeSet d;
};

/// First digraph (in for_each_digraph order) with pairwise disjoint A, B, C,
/// A and B nonempty, and D ⊆ B such that C δ-separates A from B but not A
/// from D. Refuses ground_size > kMaxSearchNodes.
std::optional<RightDecompositionWitness> find_right_decomposition_counterexample(std::size_t ground_size);

}  // namespace locind

#endif  // LOCIND_GRAPHOID_HPP
