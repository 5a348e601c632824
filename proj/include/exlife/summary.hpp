/**
 * @file summary.hpp
 * @brief Exception summary extraction for one program version.
 *
 * Each method gets a list of throw summaries phrased over its own
 * parameters. Intraprocedural summaries come from the method's own throw
 * statements; in interprocedural mode, call sites additionally lift every
 * callee summary through the call's argument bindings. Methods are
 * processed callees-first (one visit each); summaries of already-analyzed
 * callees are reused, never recomputed.
 *
 * A lifted precondition is the disjunction over the call site's pre-paths
 * of three conjoined parts: the callee's precondition under argument
 * substitution, the guards controlling the call site on that path, and the
 * negated exception conditions of calls executed earlier on the path
 * (reaching this site means those did not throw).
 */
#pragma once

#include <string>
#include <vector>

#include "exlife/callgraph.hpp"
#include "exlife/prepath.hpp"
#include "exlife/refine.hpp"

namespace exlife {

enum class Mode { Intra, Inter };

inline std::string mode_name(Mode m) { return m == Mode::Intra ? "intra" : "inter"; }

struct ExtractOptions {
    Mode mode = Mode::Inter;
    int path_cap = kDefaultPathCap;
    int clause_limit = kDefaultClauseLimit;
    int depth_limit = kDefaultDepthLimit;
};

struct ThrowSummary {
    std::string exception_type;
    std::string message_pattern;
    TreeDnf precondition;
    TreeDnf key_precondition;
    std::string origin_method;           // signature of the throwing method
    int origin_stmt = 0;                 // statement index of the throw
    std::vector<std::string> call_chain; // this method's callee down to origin

    bool imprecise = false;              // an unknown atom survived
    bool recursive_approx = false;       // a cyclic call contribution was dropped
    bool unreachable = false;            // the origin throw can never execute
};

struct PropagationStats {
    std::vector<int> method_visits;      // analysis passes per method, expect 1
};

struct ExtractionResult {
    std::vector<std::vector<ThrowSummary>> per_method;
    int infeasible_clauses_dropped = 0;
    PropagationStats stats;
};

ExtractionResult extract_summaries(const ExirProgram& program,
                                   const ExtractOptions& options = {});

}  // namespace exlife
