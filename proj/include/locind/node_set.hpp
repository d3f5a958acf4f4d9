#ifndef LOCIND_NODE_SET_HPP
#define LOCIND_NODE_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace locind {

inline constexpr std::size_t kMaxNodes = 64;

/// Raised when a query names a node the graph (or process) does not know,
/// or uses a set that is not contained in the vertex set.
class QueryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A set of node indices, stored as a 64-bit mask.
///
/// Indices refer to a NodeUniverse; all sets combined in one expression must
/// come from the same universe.
class NodeSet {
public:
    constexpr NodeSet() = default;
    constexpr explicit NodeSet(std::uint64_t bits) : m_bits(bits) {}

    static constexpr NodeSet single(std::size_t index) { return NodeSet{std::uint64_t{1} << index}; }
    static constexpr NodeSet first_n(std::size_t n) {
        return NodeSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
    }
    static NodeSet of(std::initializer_list<std::size_t> indices) {
        NodeSet s;
        for (auto i : indices) s = s.with(i);
        return s;
    }

    constexpr std::uint64_t bits() const { return m_bits; }
    constexpr bool empty() const { return m_bits == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(m_bits)); }
    constexpr bool contains(std::size_t index) const { return index < 64 && ((m_bits >> index) & 1U); }
    constexpr bool subset_of(NodeSet other) const { return (m_bits & ~other.m_bits) == 0; }
    constexpr bool intersects(NodeSet other) const { return (m_bits & other.m_bits) != 0; }

    constexpr NodeSet with(std::size_t index) const { return NodeSet{m_bits | (std::uint64_t{1} << index)}; }
    constexpr NodeSet without(std::size_t index) const { return NodeSet{m_bits & ~(std::uint64_t{1} << index)}; }

    constexpr NodeSet operator|(NodeSet o) const { return NodeSet{m_bits | o.m_bits}; }
    constexpr NodeSet operator&(NodeSet o) const { return NodeSet{m_bits & o.m_bits}; }
    /// Set difference.
    constexpr NodeSet operator-(NodeSet o) const { return NodeSet{m_bits & ~o.m_bits}; }
    constexpr NodeSet& operator|=(NodeSet o) { m_bits |= o.m_bits; return *this; }
    constexpr NodeSet& operator&=(NodeSet o) { m_bits &= o.m_bits; return *this; }
    constexpr NodeSet& operator-=(NodeSet o) { m_bits &= ~o.m_bits; return *this; }

    constexpr bool operator==(const NodeSet&) const = default;

    /// Iterates member indices in increasing order.
    class iterator {
    public:
        using value_type = std::size_t;
        using difference_type = std::ptrdiff_t;

        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t rest) : m_rest(rest) {}
        constexpr std::size_t operator*() const { return static_cast<std::size_t>(std::countr_zero(m_rest)); }
        constexpr iterator& operator++() { m_rest &= m_rest - 1; return *this; }
        constexpr iterator operator++(int) { auto t = *this; ++*this; return t; }
        constexpr bool operator==(const iterator&) const = default;

    private:
        std::uint64_t m_rest = 0;
    };

    constexpr iterator begin() const { return iterator{m_bits}; }
    constexpr iterator end() const { return iterator{0}; }

    /// Smallest member index. Undefined on the empty set.
    constexpr std::size_t front() const { return static_cast<std::size_t>(std::countr_zero(m_bits)); }

private:
    std::uint64_t m_bits = 0;
};

/// Ordered node labels shared between a graph and every graph derived from it.
///
/// Labels are kept sorted, so index order is lexicographic label order.
class NodeUniverse {
public:
    explicit NodeUniverse(std::vector<std::string> labels);

    std::size_t size() const { return m_labels.size(); }
    const std::string& label(std::size_t index) const { return m_labels.at(index); }
    const std::vector<std::string>& labels() const { return m_labels; }
    NodeSet all() const { return NodeSet::first_n(m_labels.size()); }

    /// Index of a label; throws QueryError naming the label if unknown.
    std::size_t index_of(std::string_view label) const;
    bool has(std::string_view label) const;

    NodeSet set_of(const std::vector<std::string>& labels) const;
    std::vector<std::string> names(NodeSet s) const;

    bool operator==(const NodeUniverse& o) const { return m_labels == o.m_labels; }

private:
    std::vector<std::string> m_labels;
};

using UniversePtr = std::shared_ptr<const NodeUniverse>;

UniversePtr make_universe(std::vector<std::string> labels);

/// Checks the label rules: nonempty, no whitespace.
bool valid_label(std::string_view label);

/// Every subset of `ground`, ordered by size and then lexicographically by
/// member indices. This is the canonical enumeration order.
std::vector<NodeSet> ordered_subsets(NodeSet ground);

/// "{a, b}" rendering used in diagnostics.
std::string format_set(const NodeUniverse& u, NodeSet s);

}  // namespace locind

#endif  // LOCIND_NODE_SET_HPP
