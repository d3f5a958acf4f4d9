#include "locind/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace locind::io {

namespace {

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing \"" + key + "\"");
    return *it;
}

std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": expected a string");
    return j.get<std::string>();
}

std::size_t as_index(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

double as_number(const Json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

Json parse(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_or_nan(const Json& j, const std::string& where) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return as_number(j, where);
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

template <class Graph>
std::string dot_body(const Graph& g, const char* keyword, const char* arrow) {
    const auto& u = g.universe();
    std::string out = std::string(keyword) + " G {\n";
    for (auto k : g.vertices()) out += "  " + quote(u.label(k)) + ";\n";
    for (const auto& [j, k] : g.edges()) out += "  " + quote(u.label(j)) + " " + arrow + " " + quote(u.label(k)) + ";\n";
    return out + "}\n";
}

struct DotGraph {
    bool directed = true;
    std::vector<std::string> nodes;
    std::vector<LabelEdge> edges;
};

// Tokens: identifiers (quoted or bare), "->", "--", and single punctuation.
std::vector<std::string> dot_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (ch == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (ch == '/' && i + 1 < text.size() && text[i + 1] == '*') {
            const auto end = text.find("*/", i + 2);
            if (end == std::string::npos) throw ParseError("DOT: unterminated comment");
            i = end + 2;
        } else if (ch == '"') {
            std::string id = "\"";
            ++i;
            while (i < text.size() && text[i] != '"') {
                if (text[i] == '\\' && i + 1 < text.size()) ++i;
                id += text[i++];
            }
            if (i == text.size()) throw ParseError("DOT: unterminated string");
            ++i;
            out.push_back(id);
        } else if ((ch == '-') && i + 1 < text.size() && (text[i + 1] == '>' || text[i + 1] == '-')) {
            out.push_back(text.substr(i, 2));
            i += 2;
        } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.') {
            std::string id = "\"";
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                                       text[i] == '.')) {
                id += text[i++];
            }
            out.push_back(id);
        } else {
            out.push_back(std::string(1, ch));
            ++i;
        }
    }
    return out;
}

bool is_id(const std::string& tok) { return !tok.empty() && tok[0] == '"'; }

DotGraph parse_dot(const std::string& text) {
    const auto toks = dot_tokens(text);
    std::size_t i = 0;
    auto at = [&](std::size_t k) -> std::string { return k < toks.size() ? toks[k] : std::string(); };

    DotGraph d;
    if (at(i) == "\"strict") ++i;
    if (at(i) == "\"digraph") {
        d.directed = true;
    } else if (at(i) == "\"graph") {
        d.directed = false;
    } else {
        throw ParseError("DOT: expected 'digraph' or 'graph'");
    }
    ++i;
    if (is_id(at(i))) ++i;
    if (at(i) != "{") throw ParseError("DOT: expected '{'");
    ++i;

    std::set<std::string> seen;
    auto add_node = [&](const std::string& name) {
        if (seen.insert(name).second) d.nodes.push_back(name);
    };
    const std::string arrow = d.directed ? "->" : "--";
    while (at(i) != "}") {
        if (i >= toks.size()) throw ParseError("DOT: missing '}'");
        if (at(i) == ";") {
            ++i;
            continue;
        }
        if (!is_id(at(i))) throw ParseError("DOT: unexpected token '" + at(i) + "'");
        std::vector<std::string> chain{at(i).substr(1)};
        ++i;
        if (at(i) == "=") {  // graph attribute such as rankdir=LR
            i += 2;
            continue;
        }
        while (at(i) == "->" || at(i) == "--") {
            if (at(i) != arrow) throw ParseError("DOT: '" + at(i) + "' in a " + (d.directed ? "digraph" : "graph"));
            if (!is_id(at(i + 1))) throw ParseError("DOT: edge without a head");
            chain.push_back(at(i + 1).substr(1));
            i += 2;
        }
        if (at(i) == "[") {
            while (i < toks.size() && at(i) != "]") ++i;
            if (i == toks.size()) throw ParseError("DOT: unterminated attribute list");
            ++i;
        }
        const std::set<std::string> keywords{"graph", "node", "edge"};
        if (chain.size() == 1 && keywords.count(chain[0])) continue;
        for (const auto& n : chain) add_node(n);
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) d.edges.emplace_back(chain[k], chain[k + 1]);
    }
    return d;
}

DiGraph build_graph(std::vector<std::string> nodes, const std::vector<LabelEdge>& edges, const std::string& what) {
    std::set<std::string> known;
    for (const auto& n : nodes) {
        if (!valid_label(n)) throw ParseError(what + ": invalid node label '" + n + "'");
        if (!known.insert(n).second) throw ParseError(what + ": duplicate node '" + n + "'");
    }
    for (const auto& [from, to] : edges) {
        for (const auto* n : {&from, &to}) {
            if (!known.count(*n)) throw ParseError(what + ": edge endpoint '" + *n + "' is not a node");
        }
        if (from == to) throw ParseError(what + ": self-loop on '" + from + "'");
    }
    return DiGraph::from_labels(std::move(nodes), edges);
}

}  // namespace

DiGraph read_graph_json(const std::string& text) {
    const Json j = parse(text, "graph JSON");
    const Json& nodes = member(j, "nodes", "graph JSON");
    const Json& edges = member(j, "edges", "graph JSON");
    if (!nodes.is_array() || !edges.is_array()) throw ParseError("graph JSON: \"nodes\" and \"edges\" must be arrays");
    std::vector<std::string> names;
    for (const auto& n : nodes) names.push_back(as_string(n, "graph JSON node"));
    std::vector<LabelEdge> list;
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2) throw ParseError("graph JSON: each edge must be [from, to]");
        list.emplace_back(as_string(e[0], "graph JSON edge"), as_string(e[1], "graph JSON edge"));
    }
    return build_graph(std::move(names), list, "graph JSON");
}

std::string write_graph_json(const DiGraph& g) {
    const auto& u = g.universe();
    Json edges = Json::array();
    for (const auto& [j, k] : g.edges()) edges.push_back({u.label(j), u.label(k)});
    Json out;
    out["nodes"] = u.names(g.vertices());
    out["edges"] = edges;
    return dump(out);
}

std::string write_dot(const DiGraph& g) { return dot_body(g, "digraph", "->"); }

std::string write_dot(const UGraph& g) { return dot_body(g, "graph", "--"); }

DiGraph read_dot(const std::string& text) {
    DotGraph d = parse_dot(text);
    if (!d.directed) throw ParseError("DOT: expected a digraph");
    return build_graph(std::move(d.nodes), d.edges, "DOT");
}

UGraph read_undirected_dot(const std::string& text) {
    DotGraph d = parse_dot(text);
    if (d.directed) throw ParseError("DOT: expected an undirected graph");
    const DiGraph g = build_graph(std::move(d.nodes), d.edges, "DOT");
    std::vector<NodeSet> adj(g.universe().size());
    for (const auto& [j, k] : g.edges()) {
        adj[j] = adj[j].with(k);
        adj[k] = adj[k].with(j);
    }
    return UGraph(g.universe_ptr(), g.vertices(), adj);
}

DiGraph read_graph(const std::string& text) {
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && (text.compare(start, 7, "digraph") == 0 || text.compare(start, 6, "strict") == 0)) {
        return read_dot(text);
    }
    return read_graph_json(text);
}

cfmp::CfmpSpec read_spec_json(const std::string& text) {
    const Json j = parse(text, "process spec");
    cfmp::CfmpSpec s;
    const Json& comps = member(j, "components", "process spec");
    if (!comps.is_array()) throw ParseError("process spec: \"components\" must be an array");
    for (const auto& c : comps) {
        s.components.push_back({as_string(member(c, "name", "component"), "component name"),
                                as_index(member(c, "states", "component"), "component states")});
    }
    const Json& ints = member(j, "intensities", "process spec");
    if (!ints.is_object()) throw ParseError("process spec: \"intensities\" must be an object");
    for (const auto& [name, body] : ints.items()) {
        const std::string where = "intensities of '" + name + "'";
        cfmp::Intensity in;
        const Json& deps = member(body, "depends_on", where);
        if (!deps.is_array()) throw ParseError(where + ": \"depends_on\" must be an array");
        for (const auto& d : deps) in.depends_on.push_back(as_string(d, where + " depends_on"));
        const Json& table = member(body, "table", where);
        if (!table.is_array()) throw ParseError(where + ": \"table\" must be an array");
        for (const auto& cell : table) {
            cfmp::RateCell rc;
            const Json& given = member(cell, "given", where);
            if (!given.is_object()) throw ParseError(where + ": \"given\" must be an object");
            for (const auto& [g, v] : given.items()) rc.given[g] = as_index(v, where + " given");
            rc.from = as_index(member(cell, "from", where), where + " from");
            rc.to = as_index(member(cell, "to", where), where + " to");
            rc.rate = as_number(member(cell, "rate", where), where + " rate");
            in.table.push_back(std::move(rc));
        }
        s.intensities[name] = std::move(in);
    }
    return s;
}

std::string write_spec_json(const cfmp::CfmpSpec& s) {
    Json comps = Json::array();
    for (const auto& c : s.components) comps.push_back(Json{{"name", c.name}, {"states", c.states}});
    Json ints = Json::object();
    for (const auto& [name, in] : s.intensities) {
        Json table = Json::array();
        for (const auto& cell : in.table) {
            Json given = Json::object();
            for (const auto& [g, v] : cell.given) given[g] = v;
            table.push_back(Json{{"given", given}, {"from", cell.from}, {"to", cell.to}, {"rate", cell.rate}});
        }
        ints[name] = Json{{"depends_on", in.depends_on}, {"table", table}};
    }
    Json out;
    out["components"] = comps;
    out["intensities"] = ints;
    return dump(out);
}

std::string write_trajectory(const cfmp::Process& p, const cfmp::Trajectory& t) {
    const auto& u = p.universe();
    std::string out;
    auto line = [&](double time, Json comp, Json state) {
        Json j;
        j["time"] = time;
        j["component"] = std::move(comp);
        j["new_state"] = std::move(state);
        out += j.dump() + "\n";
    };
    for (std::size_t k = 0; k < t.initial.size(); ++k) line(0.0, u.label(k), t.initial[k]);
    for (const auto& jump : t.jumps) line(jump.time, u.label(jump.component), jump.state);
    line(t.horizon, nullptr, nullptr);
    return out;
}

cfmp::Trajectory read_trajectory(const cfmp::Process& p, const std::string& text) {
    std::vector<Json> records;
    std::istringstream in(text);
    std::string row;
    std::size_t line_no = 0;
    while (std::getline(in, row)) {
        ++line_no;
        if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
        records.push_back(parse(row, "trajectory line " + std::to_string(line_no)));
    }
    const std::size_t kc = p.component_count();
    if (records.size() < kc + 1) throw ParseError("trajectory: too few records");

    cfmp::Trajectory t;
    t.initial.assign(kc, 0);
    std::vector<bool> set(kc, false);
    for (std::size_t i = 0; i < kc; ++i) {
        const Json& r = records[i];
        if (as_number(member(r, "time", "trajectory"), "trajectory time") != 0.0) {
            throw ParseError("trajectory: expected an initial record at time 0 for every component");
        }
        const std::string name = as_string(member(r, "component", "trajectory"), "trajectory component");
        if (!p.universe().has(name)) throw ParseError("trajectory: unknown component '" + name + "'");
        const std::size_t k = p.universe().index_of(name);
        if (set[k]) throw ParseError("trajectory: component '" + name + "' initialised twice");
        set[k] = true;
        t.initial[k] = as_index(member(r, "new_state", "trajectory"), "trajectory state");
    }
    for (std::size_t i = kc; i + 1 < records.size(); ++i) {
        const Json& r = records[i];
        const std::string name = as_string(member(r, "component", "trajectory"), "trajectory component");
        if (!p.universe().has(name)) throw ParseError("trajectory: unknown component '" + name + "'");
        t.jumps.push_back({as_number(member(r, "time", "trajectory"), "trajectory time"), p.universe().index_of(name),
                           as_index(member(r, "new_state", "trajectory"), "trajectory state")});
    }
    const Json& last = records.back();
    if (!member(last, "component", "trajectory").is_null() || !member(last, "new_state", "trajectory").is_null()) {
        throw ParseError("trajectory: missing closing horizon record");
    }
    t.horizon = as_number(member(last, "time", "trajectory"), "trajectory horizon");
    try {
        cfmp::check_trajectory(p, t);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("trajectory: ") + e.what());
    }
    return t;
}

Json node_set_json(const NodeUniverse& u, NodeSet s) { return u.names(s); }

NodeSet node_set_from_json(const NodeUniverse& u, const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of node names");
    std::vector<std::string> names;
    for (const auto& n : j) names.push_back(as_string(n, "node set"));
    return u.set_of(names);
}

Json to_json(const NodeUniverse& u, const CheckReport& r) {
    Json out;
    out["property"] = std::string(name_of(r.property));
    out["holds"] = r.holds;
    if (r.counterexample) {
        Json ce;
        ce["a"] = node_set_json(u, r.counterexample->a);
        ce["b"] = node_set_json(u, r.counterexample->b);
        ce["c"] = node_set_json(u, r.counterexample->c);
        if (r.counterexample->d) ce["d"] = node_set_json(u, *r.counterexample->d);
        out["counterexample"] = ce;
    } else {
        out["counterexample"] = nullptr;
    }
    out["instances_checked"] = r.instances_checked;
    out["instances_skipped"] = r.instances_skipped;
    return out;
}

CheckReport check_report_from_json(const NodeUniverse& u, const Json& j) {
    CheckReport r;
    const std::string name = as_string(member(j, "property", "report"), "report property");
    const auto id = property_from_name(name);
    if (!id) throw ParseError("report: unknown property '" + name + "'");
    r.property = *id;
    const Json& holds = member(j, "holds", "report");
    if (!holds.is_boolean()) throw ParseError("report: \"holds\" must be a boolean");
    r.holds = holds.get<bool>();
    const Json& ce = member(j, "counterexample", "report");
    if (!ce.is_null()) {
        Instance inst{node_set_from_json(u, member(ce, "a", "counterexample")),
                      node_set_from_json(u, member(ce, "b", "counterexample")),
                      node_set_from_json(u, member(ce, "c", "counterexample")), std::nullopt};
        if (ce.contains("d")) inst.d = node_set_from_json(u, ce["d"]);
        r.counterexample = inst;
    }
    r.instances_checked = as_index(member(j, "instances_checked", "report"), "report");
    r.instances_skipped = as_index(member(j, "instances_skipped", "report"), "report");
    return r;
}

Json to_json(const NodeUniverse& u, const cfmp::CiDecayReport& r) {
    auto numbers = [](const std::vector<double>& v) {
        Json a = Json::array();
        for (double x : v) a.push_back(number_or_null(x));
        return a;
    };
    Json out;
    out["targets"] = node_set_json(u, r.targets);
    out["sources"] = node_set_json(u, r.sources);
    out["cond"] = node_set_json(u, r.cond);
    out["hs"] = numbers(r.hs);
    out["cmi"] = numbers(r.cmi);
    out["ratios"] = numbers(r.ratios);
    out["exponents"] = numbers(r.exponents);
    out["class"] = std::string(name_of(r.decay));
    return out;
}

cfmp::CiDecayReport ci_report_from_json(const NodeUniverse& u, const Json& j) {
    auto numbers = [&](const char* key) {
        const Json& a = member(j, key, "decay report");
        if (!a.is_array()) throw ParseError(std::string("decay report: \"") + key + "\" must be an array");
        std::vector<double> v;
        for (const auto& x : a) v.push_back(number_or_nan(x, "decay report"));
        return v;
    };
    cfmp::CiDecayReport r;
    r.targets = node_set_from_json(u, member(j, "targets", "decay report"));
    r.sources = node_set_from_json(u, member(j, "sources", "decay report"));
    r.cond = node_set_from_json(u, member(j, "cond", "decay report"));
    r.hs = numbers("hs");
    r.cmi = numbers("cmi");
    r.ratios = numbers("ratios");
    r.exponents = numbers("exponents");
    const std::string cls = as_string(member(j, "class", "decay report"), "decay class");
    if (cls == "zero") {
        r.decay = cfmp::DecayClass::Zero;
    } else if (cls == "fast") {
        r.decay = cfmp::DecayClass::Fast;
    } else if (cls == "slow") {
        r.decay = cfmp::DecayClass::Slow;
    } else {
        throw ParseError("decay report: unknown class '" + cls + "'");
    }
    return r;
}

Json to_json(const cfmp::Process& p, const std::vector<cfmp::ComponentEstimate>& est) {
    const auto& u = p.universe();
    Json comps = Json::array();
    for (const auto& e : est) {
        const auto parents = u.names(e.parents);
        Json cells = Json::array();
        for (const auto& c : e.cells) {
            Json given = Json::object();
            for (std::size_t i = 0; i < parents.size(); ++i) given[parents[i]] = c.given[i];
            Json cell;
            cell["given"] = given;
            cell["from"] = c.from;
            cell["to"] = c.to;
            cell["count"] = c.count;
            cell["exposure"] = c.exposure;
            cell["rate"] = c.rate ? Json(*c.rate) : Json(nullptr);
            cells.push_back(cell);
        }
        Json comp;
        comp["component"] = u.label(e.component);
        comp["depends_on"] = parents;
        comp["cells"] = cells;
        comps.push_back(comp);
    }
    return Json{{"components", comps}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace locind::io
