#ifndef LOCIND_TOOLS_CLI_HPP
#define LOCIND_TOOLS_CLI_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "locind/separation.hpp"

namespace locind::cli {

inline constexpr int kExitOk = 0;
/// A verdict the caller must act on: methods disagree, an axiom expected to
/// hold failed.
inline constexpr int kExitVerdict = 1;
/// Bad usage, unreadable or invalid input.
inline constexpr int kExitError = 2;

using Decider = std::function<bool(const DiGraph&, const SeparationQuery&)>;

/// Decision procedures used by `dsep`. Tests swap one out to exercise the
/// disagreement path.
struct Deciders {
    Decider moral = delta_separates;
    Decider trail = delta_separates_trail;
};

/// Runs one command. args[0] is the program name. JSON goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Deciders& deciders = {});

}  // namespace locind::cli

#endif  // LOCIND_TOOLS_CLI_HPP
