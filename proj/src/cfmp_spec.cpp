#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "locind/cfmp.hpp"

namespace locind::cfmp {

namespace {

std::string describe_given(const std::map<std::string, std::size_t>& given) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [name, v] : given) {
        if (!first) os << ", ";
        os << name << '=' << v;
        first = false;
    }
    os << '}';
    return os.str();
}

std::string cell_name(const std::string& comp, const std::map<std::string, std::size_t>& given, std::size_t from,
                      std::size_t to) {
    return "component '" + comp + "' given " + describe_given(given) + " from " + std::to_string(from) + " to " +
           std::to_string(to);
}

}  // namespace

SpecError::SpecError(std::vector<std::string> errors)
    : std::runtime_error([&] {
          std::string msg = "invalid process spec";
          for (const auto& e : errors) msg += "\n  " + e;
          return msg;
      }()),
      m_errors(std::move(errors)) {}

std::vector<std::string> validate_spec(const CfmpSpec& s) {
    std::vector<std::string> errors;
    if (s.components.size() < 2) {
        errors.push_back("K ≥ 2 required (found " + std::to_string(s.components.size()) + " component" +
                         (s.components.size() == 1 ? "" : "s") + ")");
    }

    std::map<std::string, std::size_t> card;
    for (const auto& c : s.components) {
        if (!valid_label(c.name)) errors.push_back("invalid component name '" + c.name + "'");
        if (!card.emplace(c.name, c.states).second) errors.push_back("duplicate component '" + c.name + "'");
        if (c.states < 2) {
            errors.push_back("component '" + c.name + "' has " + std::to_string(c.states) +
                             " state(s); at least 2 required");
        }
    }
    if (s.components.size() > kMaxNodes) errors.push_back("too many components");

    // Product size with overflow-safe early exit.
    std::size_t product = 1;
    bool too_big = false;
    for (const auto& c : s.components) {
        if (c.states == 0) continue;
        if (product > kMaxStates / c.states + 1) {
            too_big = true;
            break;
        }
        product *= c.states;
        if (product > kMaxStates) {
            too_big = true;
            break;
        }
    }
    if (too_big) {
        errors.push_back("product state space exceeds " + std::to_string(kMaxStates) + " states");
    }

    for (const auto& [name, _] : s.intensities) {
        if (!card.count(name)) errors.push_back("intensity table for unknown component '" + name + "'");
    }

    for (const auto& comp : s.components) {
        auto it = s.intensities.find(comp.name);
        if (it == s.intensities.end()) {
            errors.push_back("no intensity table for component '" + comp.name + "'");
            continue;
        }
        const Intensity& in = it->second;

        bool deps_ok = true;
        std::set<std::string> deps;
        for (const auto& d : in.depends_on) {
            if (d == comp.name) {
                errors.push_back("component '" + comp.name + "' lists itself in depends_on");
                deps_ok = false;
            } else if (!card.count(d)) {
                errors.push_back("component '" + comp.name + "' depends on unknown component '" + d + "'");
                deps_ok = false;
            } else if (!deps.insert(d).second) {
                errors.push_back("component '" + comp.name + "' lists '" + d + "' twice in depends_on");
                deps_ok = false;
            }
        }

        std::set<std::pair<std::map<std::string, std::size_t>, std::pair<std::size_t, std::size_t>>> seen;
        for (const auto& cell : in.table) {
            const std::string where = cell_name(comp.name, cell.given, cell.from, cell.to);
            bool cell_ok = true;
            for (const auto& [g, v] : cell.given) {
                if (!deps.count(g)) {
                    errors.push_back(where + ": 'given' names '" + g + "' which is not in depends_on");
                    cell_ok = false;
                } else if (v >= card.at(g)) {
                    errors.push_back(where + ": state " + std::to_string(v) + " out of range for '" + g + "'");
                    cell_ok = false;
                }
            }
            for (const auto& d : deps) {
                if (!cell.given.count(d)) {
                    errors.push_back(where + ": 'given' does not assign '" + d + "'");
                    cell_ok = false;
                }
            }
            if (cell.from >= comp.states || cell.to >= comp.states) {
                errors.push_back(where + ": state out of range");
                cell_ok = false;
            }
            if (cell.from == cell.to) {
                errors.push_back(where + ": 'from' and 'to' must differ");
                cell_ok = false;
            }
            if (!std::isfinite(cell.rate)) {
                errors.push_back(where + ": rate is not finite");
            } else if (cell.rate < 0.0) {
                std::ostringstream os;
                os << where << ": negative rate " << cell.rate;
                errors.push_back(os.str());
            }
            if (cell_ok && !seen.insert({cell.given, {cell.from, cell.to}}).second) {
                errors.push_back(where + ": duplicate cell");
            }
        }

        // Completeness: every parent configuration, every from != to.
        if (!deps_ok || comp.states < 2) continue;
        std::vector<std::string> dep_list(deps.begin(), deps.end());
        std::size_t configs = 1;
        bool small = true;
        for (const auto& d : dep_list) {
            configs *= std::max<std::size_t>(card.at(d), 1);
            if (configs > kMaxStates) small = false;
        }
        if (!small || too_big) continue;
        for (std::size_t cfg = 0; cfg < configs; ++cfg) {
            std::map<std::string, std::size_t> given;
            std::size_t rest = cfg;
            for (const auto& d : dep_list) {
                const std::size_t cd = std::max<std::size_t>(card.at(d), 1);
                given[d] = rest % cd;
                rest /= cd;
            }
            for (std::size_t from = 0; from < comp.states; ++from) {
                for (std::size_t to = 0; to < comp.states; ++to) {
                    if (from == to) continue;
                    if (!seen.count({given, {from, to}})) {
                        errors.push_back("missing rate for " + cell_name(comp.name, given, from, to));
                    }
                }
            }
        }
    }
    return errors;
}

Process::Process(const CfmpSpec& s) {
    auto errors = validate_spec(s);
    if (!errors.empty()) throw SpecError(std::move(errors));

    std::vector<std::string> names;
    for (const auto& c : s.components) names.push_back(c.name);
    m_universe = make_universe(names);

    const std::size_t k_count = s.components.size();
    m_cards.assign(k_count, 0);
    for (const auto& c : s.components) m_cards[m_universe->index_of(c.name)] = c.states;
    m_strides.assign(k_count, 1);
    for (std::size_t k = 1; k < k_count; ++k) m_strides[k] = m_strides[k - 1] * m_cards[k - 1];
    m_state_count = m_strides.back() * m_cards.back();

    m_tables.resize(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        const Intensity& in = s.intensities.at(m_universe->label(k));
        Table& t = m_tables[k];
        t.parents = m_universe->set_of(in.depends_on);
        const std::size_t cards = m_cards[k];
        t.rates.assign(configurations(t.parents) * cards * cards, 0.0);
        for (const auto& cell : in.table) {
            std::size_t cfg = 0, stride = 1;
            for (auto j : t.parents) {
                cfg += cell.given.at(m_universe->label(j)) * stride;
                stride *= m_cards[j];
            }
            t.rates[(cfg * cards + cell.from) * cards + cell.to] = cell.rate;
        }
    }
}

std::vector<std::size_t> Process::decode(std::size_t state) const {
    std::vector<std::size_t> out(m_cards.size());
    for (std::size_t k = 0; k < m_cards.size(); ++k) out[k] = component_state(state, k);
    return out;
}

std::size_t Process::encode(const std::vector<std::size_t>& digits) const {
    if (digits.size() != m_cards.size()) throw std::invalid_argument("state has the wrong number of components");
    std::size_t s = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (digits[k] >= m_cards[k]) {
            throw std::invalid_argument("state " + std::to_string(digits[k]) + " out of range for component '" +
                                        m_universe->label(k) + "'");
        }
        s += digits[k] * m_strides[k];
    }
    return s;
}

std::size_t Process::project(std::size_t state, NodeSet set) const {
    std::size_t cfg = 0, stride = 1;
    for (auto j : set) {
        cfg += component_state(state, j) * stride;
        stride *= m_cards[j];
    }
    return cfg;
}

std::size_t Process::configurations(NodeSet set) const {
    std::size_t n = 1;
    for (auto j : set) n *= m_cards[j];
    return n;
}

double Process::rate(std::size_t k, std::size_t state, std::size_t to) const {
    const Table& t = m_tables[k];
    const std::size_t cards = m_cards[k];
    const std::size_t from = component_state(state, k);
    if (from == to) return 0.0;
    return t.rates[(project(state, t.parents) * cards + from) * cards + to];
}

CfmpSpec Process::to_spec() const {
    CfmpSpec s;
    for (std::size_t k = 0; k < m_cards.size(); ++k) {
        s.components.push_back({m_universe->label(k), m_cards[k]});
        const Table& t = m_tables[k];
        Intensity in;
        in.depends_on = m_universe->names(t.parents);
        const std::size_t cards = m_cards[k];
        for (std::size_t cfg = 0; cfg < configurations(t.parents); ++cfg) {
            std::map<std::string, std::size_t> given;
            std::size_t rest = cfg;
            for (auto j : t.parents) {
                given[m_universe->label(j)] = rest % m_cards[j];
                rest /= m_cards[j];
            }
            for (std::size_t from = 0; from < cards; ++from) {
                for (std::size_t to = 0; to < cards; ++to) {
                    if (from != to) in.table.push_back({given, from, to, t.rates[(cfg * cards + from) * cards + to]});
                }
            }
        }
        s.intensities.emplace(m_universe->label(k), std::move(in));
    }
    return s;
}

}  // namespace locind::cfmp
