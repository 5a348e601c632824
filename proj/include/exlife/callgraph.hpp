/**
 * @file callgraph.hpp
 * @brief Call graph over the methods of one program, with SCC condensation.
 *
 * Analysis wants callees summarized before callers. Tarjan emits SCCs in
 * reverse topological order of the condensation, which is exactly that, so
 * the component list doubles as the processing schedule.
 */
#pragma once

#include <optional>
#include <vector>

#include "exlife/exir.hpp"

namespace exlife {

/// One call statement inside a method, resolved if the target is modeled.
struct CallSite {
    int caller = 0;               // method index
    int stmt = 0;                 // statement index within the caller
    CallRef ref;
    std::optional<int> callee;    // method index, nullopt when external
};

struct CallGraph {
    const ExirProgram* program = nullptr;
    std::vector<std::vector<CallSite>> sites;   // per method, statement order
    std::vector<std::vector<int>> callees;      // resolved edges, deduplicated
    std::vector<int> scc_of;                    // method -> component id
    std::vector<std::vector<int>> sccs;         // callees-first, members sorted
    std::vector<bool> scc_recursive;            // size > 1 or a self loop

    bool method_recursive(int method) const { return scc_recursive[scc_of[method]]; }

    /// Methods in the order analysis should summarize them.
    std::vector<int> analysis_order() const;
};

CallGraph build_call_graph(const ExirProgram& program);

}  // namespace exlife
