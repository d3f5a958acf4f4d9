#include "locind/node_set.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace locind {

bool valid_label(std::string_view label) {
    if (label.empty()) return false;
    return std::none_of(label.begin(), label.end(),
                        [](unsigned char ch) { return std::isspace(ch) != 0; });
}

NodeUniverse::NodeUniverse(std::vector<std::string> labels) : m_labels(std::move(labels)) {
    std::sort(m_labels.begin(), m_labels.end());
    if (std::adjacent_find(m_labels.begin(), m_labels.end()) != m_labels.end()) {
        throw std::invalid_argument("duplicate node label '" +
                                    *std::adjacent_find(m_labels.begin(), m_labels.end()) + "'");
    }
    if (m_labels.size() > kMaxNodes) {
        throw std::invalid_argument("at most " + std::to_string(kMaxNodes) + " nodes are supported");
    }
    for (const auto& l : m_labels) {
        if (!valid_label(l)) throw std::invalid_argument("invalid node label '" + l + "'");
    }
}

std::size_t NodeUniverse::index_of(std::string_view label) const {
    auto it = std::lower_bound(m_labels.begin(), m_labels.end(), label);
    if (it == m_labels.end() || *it != label) {
        throw QueryError("unknown node '" + std::string(label) + "'");
    }
    return static_cast<std::size_t>(it - m_labels.begin());
}

bool NodeUniverse::has(std::string_view label) const {
    return std::binary_search(m_labels.begin(), m_labels.end(), label);
}

NodeSet NodeUniverse::set_of(const std::vector<std::string>& labels) const {
    NodeSet s;
    for (const auto& l : labels) s = s.with(index_of(l));
    return s;
}

std::vector<std::string> NodeUniverse::names(NodeSet s) const {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (auto i : s) out.push_back(label(i));
    return out;
}

UniversePtr make_universe(std::vector<std::string> labels) {
    return std::make_shared<const NodeUniverse>(std::move(labels));
}

std::vector<NodeSet> ordered_subsets(NodeSet ground) {
    std::vector<NodeSet> out;
    out.reserve(std::size_t{1} << ground.size());
    std::uint64_t g = ground.bits();
    std::uint64_t sub = 0;
    do {
        out.emplace_back(sub);
        sub = (sub - g) & g;
    } while (sub != 0);
    std::sort(out.begin(), out.end(), [](NodeSet x, NodeSet y) {
        if (x.size() != y.size()) return x.size() < y.size();
        std::uint64_t d = x.bits() ^ y.bits();
        return (x.bits() & d & (~d + 1)) != 0;
    });
    return out;
}

std::string format_set(const NodeUniverse& u, NodeSet s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto i : s) {
        if (!first) os << ", ";
        os << (i < u.size() ? u.label(i) : "#" + std::to_string(i));
        first = false;
    }
    os << '}';
    return os.str();
}

}  // namespace locind
