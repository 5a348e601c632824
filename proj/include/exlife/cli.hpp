/**
 * @file cli.hpp
 * @brief Command implementations behind the exlife binary.
 *
 * Kept in the library so tests can drive commands without spawning
 * processes. Commands compute everything first and only then write files:
 * a failing input never leaves partial output behind.
 */
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "exlife/summary.hpp"

namespace exlife {

struct RunConfig {
    Mode mode = Mode::Inter;
    int path_cap = kDefaultPathCap;
    int clause_limit = kDefaultClauseLimit;
    int depth_limit = kDefaultDepthLimit;
    bool pretty = false;
    std::string dot_dump;       // directory for CFG/CDG dot files, empty = off
    std::string version_label;  // overrides the label of a single input
};

std::optional<Mode> parse_mode(const std::string& name);

/// Version label of an input path: the file name minus its recognized
/// extension (.exir, .summary.json, .json).
std::string version_label_of(const std::string& path);

/// exir sources -> outdir/<version>.summary.json (one per input).
int cmd_extract(const std::vector<std::string>& inputs, const std::string& outdir,
                const RunConfig& config, std::ostream& err);

/// Two inputs (.exir or .summary.json) -> one change report file.
int cmd_diff(const std::string& old_input, const std::string& new_input,
             const std::string& out_path, const RunConfig& config, std::ostream& err);

/// Version sequence -> outdir/{lifecycle.json, statistics.json, one change
/// report per adjacent pair, lifecycle.txt when pretty}.
int cmd_lifecycle(const std::vector<std::string>& inputs, const std::string& outdir,
                  const RunConfig& config, std::ostream& err);

}  // namespace exlife
