/**
 * @file cdg.hpp
 * @brief Post-dominance and the control dependence graph of one CFG.
 *
 * Post-dominator sets are reflexive and computed by the usual backward
 * intersection dataflow. A CDG edge c -> n (with the branch label of the
 * successor that witnesses it) exists when some successor s of c has n in
 * pdom(s) while pdom(c) lacks n. Only conditional branches ever have two
 * distinct successors, so every controller is an if-goto node.
 */
#pragma once

#include <string>
#include <vector>

#include "exlife/cfg.hpp"

namespace exlife {

struct PostDom {
    // sets[v][u] == true when u post-dominates v (reflexively).
    std::vector<std::vector<bool>> sets;

    bool pdom(int u, int v) const { return sets[v][u]; }
};

PostDom compute_postdom(const Cfg& cfg);

struct CdgEdge {
    int ctrl = 0;
    int dep = 0;
    BranchLabel label = BranchLabel::None;
    bool operator==(const CdgEdge&) const = default;
};

struct Cdg {
    int node_count = 0;
    std::vector<CdgEdge> edges;                  // sorted by (ctrl, dep, label)
    std::vector<std::vector<CdgEdge>> parents;   // indexed by dependent node

    /// Transitive controllers of `node`, as a node-indexed membership mask.
    std::vector<bool> ancestor_set(int node) const;
};

Cdg build_cdg(const Cfg& cfg, const PostDom& pdom);
Cdg build_cdg(const Cfg& cfg);

std::string cdg_to_dot(const Cdg& cdg, const Cfg& cfg);

}  // namespace exlife
