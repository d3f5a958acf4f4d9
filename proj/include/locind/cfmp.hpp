#ifndef LOCIND_CFMP_HPP
#define LOCIND_CFMP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "locind/digraph.hpp"
#include "locind/graphoid.hpp"

// Composable finite Markov processes: a finite-state, time-homogeneous Markov
// process whose state is a tuple of components, at most one of which jumps at
// any time. Each component's intensities depend on its own state and on a
// declared set of other components.
namespace locind::cfmp {

inline constexpr std::size_t kMaxStates = 4096;
/// Relative tolerance for "the intensity does not vary with this component".
inline constexpr double kConstancyTolerance = 1e-9;

struct Component {
    std::string name;
    std::size_t states = 0;
};

/// One intensity: component in state `from`, with its dependencies in the
/// configuration `given`, jumps to `to` at `rate` events per unit time.
struct RateCell {
    std::map<std::string, std::size_t> given;
    std::size_t from = 0;
    std::size_t to = 0;
    double rate = 0.0;
};

struct Intensity {
    std::vector<std::string> depends_on;
    std::vector<RateCell> table;
};

/// The declarative form, as read from a spec file. Nothing is checked on
/// construction; see validate_spec.
struct CfmpSpec {
    std::vector<Component> components;
    std::map<std::string, Intensity> intensities;
};

/// Every violated precondition, in a stable order. Empty means valid.
std::vector<std::string> validate_spec(const CfmpSpec& s);

class SpecError : public std::runtime_error {
public:
    explicit SpecError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return m_errors; }

private:
    std::vector<std::string> m_errors;
};

/// A validated spec compiled to dense rate tables.
///
/// Components are indexed in sorted-name order (the same order as the
/// universe used for derived graphs). A product state is encoded in mixed
/// radix with component 0 varying fastest.
class Process {
public:
    /// Throws SpecError listing every violation.
    explicit Process(const CfmpSpec& s);

    const UniversePtr& universe_ptr() const { return m_universe; }
    const NodeUniverse& universe() const { return *m_universe; }
    std::size_t component_count() const { return m_cards.size(); }
    std::size_t cardinality(std::size_t k) const { return m_cards[k]; }
    const std::vector<std::size_t>& cardinalities() const { return m_cards; }
    std::size_t state_count() const { return m_state_count; }

    /// Declared dependencies of component k.
    NodeSet declared_parents(std::size_t k) const { return m_tables[k].parents; }

    std::size_t component_state(std::size_t state, std::size_t k) const { return (state / m_strides[k]) % m_cards[k]; }
    std::size_t with_component(std::size_t state, std::size_t k, std::size_t value) const {
        return state + (value - component_state(state, k)) * m_strides[k];
    }
    std::vector<std::size_t> decode(std::size_t state) const;
    std::size_t encode(const std::vector<std::size_t>& digits) const;

    /// Intensity of component k jumping to `to` from the product state.
    double rate(std::size_t k, std::size_t state, std::size_t to) const;

    /// Index of the configuration of `set` (mixed radix over its members in
    /// index order) within the product state.
    std::size_t project(std::size_t state, NodeSet set) const;
    std::size_t configurations(NodeSet set) const;

    /// The declarative form of this process.
    CfmpSpec to_spec() const;

private:
    struct Table {
        NodeSet parents;
        std::vector<double> rates;  // [parent config][from][to]
    };

    UniversePtr m_universe;
    std::vector<std::size_t> m_cards;
    std::vector<std::size_t> m_strides;
    std::size_t m_state_count = 1;
    std::vector<Table> m_tables;
};

/// Joint rate matrix over the product space. Off-diagonal entries are
/// nonnegative, rows sum to zero, and states differing in two or more
/// components are never connected.
struct Generator {
    UniversePtr components;
    std::vector<std::size_t> cardinalities;
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;

    std::size_t state_count() const { return static_cast<std::size_t>(matrix.rows()); }
};

Generator build_generator(const Process& p);
Generator build_generator(const CfmpSpec& s);

/// True iff the intensities of `target` are constant in the state of
/// `source` for every state of the other components and every destination.
bool is_locally_independent(const Process& p, std::size_t source, std::size_t target);
bool is_locally_independent(const CfmpSpec& s, const std::string& source, const std::string& target);

/// B -/-> A | C: for every j in a, the intensities of j are constant in y_b
/// for every y_{a ∪ c}. Only covering triples are evaluable: a, b, c must be
/// pairwise disjoint with union equal to all components, otherwise
/// QueryError is thrown (non-covering triples need filtered intensities).
bool set_locally_independent(const Process& p, NodeSet b, NodeSet a, NodeSet c);

/// Local independence graph: edge (j, k) iff the intensities of k genuinely
/// vary with the state of j. Vacuous declared dependencies give no edge.
DiGraph derive_graph(const Process& p);
DiGraph derive_graph(const CfmpSpec& s);

/// Declared dependencies (dependency, component) that the tables never use.
std::vector<LabelEdge> vacuous_dependencies(const Process& p);

/// The same process with every vacuous dependency removed from the tables.
CfmpSpec prune_vacuous(const Process& p);

/// (A IR B | C) read as "A -/-> B | C". Unknown on non-covering or
/// overlapping triples.
IrrelevanceOracle local_independence_oracle(const Process& p);

inline constexpr double kPoissonTailMass = 1e-14;

/// exp(q h) by uniformization, truncated once the Poisson tail mass drops
/// below kPoissonTailMass. Throws std::invalid_argument for h <= 0.
Eigen::MatrixXd transition_matrix(const Generator& q, double h);

Eigen::VectorXd uniform_distribution(const Process& p);

/// Thresholds for classifying CMI decay as h shrinks. A dependence that
/// enters the target's jump probability at order h^k gives CMI of order
/// h^(2k-1): exponent ~1 for a direct dependence, ~3 when it needs an
/// intermediate jump.
inline constexpr double kZeroCmi = 1e-12;
inline constexpr double kFastExponent = 2.0;
inline constexpr double kMinStep = 1e-4;
inline const std::vector<double> kDefaultSteps = {0.2, 0.1, 0.05, 0.025};

enum class DecayClass { Zero, Fast, Slow };

std::string_view name_of(DecayClass c);

struct CiDecayReport {
    NodeSet targets;
    NodeSet sources;
    NodeSet cond;
    std::vector<double> hs;
    /// I(Y_T(h); Y_S(0) | Y_{T ∪ cond}(0)) in nats, one per h.
    std::vector<double> cmi;
    /// cmi[i+1] / cmi[i]; NaN when cmi[i] is zero.
    std::vector<double> ratios;
    /// log(cmi[i] / cmi[i+1]) / log(h[i] / h[i+1]); +inf when cmi[i+1] is
    /// zero and cmi[i] is not, NaN when both are zero.
    std::vector<double> exponents;
    DecayClass decay = DecayClass::Zero;
};

/// Conditional mutual information between the targets' state after h and
/// the sources' state now, given the targets' and cond's state now, under
/// the initial law `pi`. Requires at least two strictly decreasing h values,
/// each >= kMinStep, and sources disjoint from targets ∪ cond.
CiDecayReport ci_decay(const Process& p, const Eigen::VectorXd& pi, NodeSet targets, NodeSet sources, NodeSet cond,
                       const std::vector<double>& hs = kDefaultSteps);

/// Classification used by ci_decay: Zero if every CMI is below kZeroCmi,
/// otherwise Fast iff the exponent on the smallest-h pair is >= kFastExponent.
DecayClass classify_decay(const std::vector<double>& cmi, const std::vector<double>& exponents);

struct Jump {
    double time = 0.0;
    std::size_t component = 0;
    std::size_t state = 0;

    bool operator==(const Jump&) const = default;
};

/// A sample path: initial component states, the jumps in time order, and the
/// observation horizon.
struct Trajectory {
    std::vector<std::size_t> initial;
    std::vector<Jump> jumps;
    double horizon = 0.0;

    bool operator==(const Trajectory&) const = default;
};

/// Exact event-driven simulation. Deterministic given the seed; an
/// absorbing state simply holds until the horizon.
Trajectory simulate(const Process& p, const Eigen::VectorXd& pi, double horizon, std::uint64_t seed);

/// Throws std::invalid_argument if the trajectory does not fit the process.
void check_trajectory(const Process& p, const Trajectory& t);

struct EstimatedCell {
    std::vector<std::size_t> given;  // one state per declared parent, in index order
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t count = 0;
    double exposure = 0.0;
    /// count / exposure; absent when exposure is zero.
    std::optional<double> rate;
};

struct ComponentEstimate {
    std::size_t component = 0;
    NodeSet parents;
    std::vector<EstimatedCell> cells;
};

/// Occurrence/exposure estimates for every cell of every component's table.
std::vector<ComponentEstimate> estimate_intensities(const Process& p, const std::vector<Trajectory>& trajs);

}  // namespace locind::cfmp

#endif  // LOCIND_CFMP_HPP
