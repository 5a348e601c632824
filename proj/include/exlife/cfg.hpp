/**
 * @file cfg.hpp
 * @brief Per-method control flow graph.
 *
 * Nodes 0..n-1 are the statements in body order; node n is ENTRY and n+1 is
 * EXIT. Conditional branches carry True (taken) and False (fall through)
 * labels. Every node can reach EXIT: infinite loops get a synthetic edge
 * from the smallest-index node of each trapped sink component, so the
 * post-dominance pass below never sees an empty backward frontier.
 */
#pragma once

#include <string>
#include <vector>

#include "exlife/exir.hpp"

namespace exlife {

enum class BranchLabel { None, True, False };

struct CfgEdge {
    int from = 0;
    int to = 0;
    BranchLabel label = BranchLabel::None;
    bool synthetic = false;
    bool operator==(const CfgEdge&) const = default;
};

struct Cfg {
    const ExirMethod* method = nullptr;
    int node_count = 0;  // statements + ENTRY + EXIT

    int entry() const { return node_count - 2; }
    int exit() const { return node_count - 1; }

    std::vector<std::vector<CfgEdge>> succs;  // indexed by node
    std::vector<std::vector<CfgEdge>> preds;

    bool is_statement(int node) const { return node < node_count - 2; }
    std::string node_name(int node) const;
};

Cfg build_cfg(const ExirMethod& method);

/// Graphviz rendering, one digraph per method.
std::string cfg_to_dot(const Cfg& cfg);

}  // namespace exlife
