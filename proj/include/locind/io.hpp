#ifndef LOCIND_IO_HPP
#define LOCIND_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "locind/cfmp.hpp"
#include "locind/digraph.hpp"
#include "locind/graphoid.hpp"
#include "locind/separation.hpp"

// Text formats. Every writer is deterministic and byte-stable: writing what
// a reader returned reproduces the original text when that text came from
// the same writer.
namespace locind::io {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"nodes": [...], "edges": [[from, to], ...]}
DiGraph read_graph_json(const std::string& text);
std::string write_graph_json(const DiGraph& g);

/// digraph G { "a"; "a" -> "b"; } with one statement per line.
std::string write_dot(const DiGraph& g);
/// graph G { "a"; "a" -- "b"; }
std::string write_dot(const UGraph& g);

/// Reads the subset of DOT the writers produce: node and edge statements with
/// quoted or bare identifiers, optional attribute lists (ignored), edge chains.
/// Refuses undirected input.
DiGraph read_dot(const std::string& text);
UGraph read_undirected_dot(const std::string& text);

/// DOT if the text starts with "digraph" or "strict", JSON otherwise.
DiGraph read_graph(const std::string& text);

cfmp::CfmpSpec read_spec_json(const std::string& text);
std::string write_spec_json(const cfmp::CfmpSpec& s);

/// One JSON object per line: the initial state as one record per component at
/// time 0, each jump as {"time", "component", "new_state"}, then a closing
/// record with null component and state at the horizon.
std::string write_trajectory(const cfmp::Process& p, const cfmp::Trajectory& t);
cfmp::Trajectory read_trajectory(const cfmp::Process& p, const std::string& text);

Json node_set_json(const NodeUniverse& u, NodeSet s);
NodeSet node_set_from_json(const NodeUniverse& u, const Json& j);

Json to_json(const NodeUniverse& u, const CheckReport& r);
CheckReport check_report_from_json(const NodeUniverse& u, const Json& j);

Json to_json(const NodeUniverse& u, const cfmp::CiDecayReport& r);
cfmp::CiDecayReport ci_report_from_json(const NodeUniverse& u, const Json& j);

Json to_json(const cfmp::Process& p, const std::vector<cfmp::ComponentEstimate>& est);

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace locind::io

#endif  // LOCIND_IO_HPP
