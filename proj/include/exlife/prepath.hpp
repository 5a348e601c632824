/**
 * @file prepath.hpp
 * @brief Pre-path enumeration: ENTRY-to-target walks through a CFG.
 *
 * A pre-path is every node visited from ENTRY up to and including the target
 * statement. Loops are explored at most once per node (each node may appear
 * twice on one path), which keeps the set finite while still exposing the
 * zero-iteration and one-iteration behaviours. Enumeration order is
 * deterministic: taken branch first, fall-through second.
 */
#pragma once

#include <vector>

#include "exlife/cfg.hpp"

namespace exlife {

struct PathSet {
    std::vector<std::vector<int>> paths;  // each begins at ENTRY, ends at target
    bool truncated = false;               // hit the path cap, set is partial
    bool unreachable = false;             // target cannot execute at all
};

constexpr int kDefaultPathCap = 256;

/// Enumerates pre-paths of `target`. Search stops at the first arrival of
/// each walk (paths never run through the target and come back).
PathSet enumerate_pre_paths(const Cfg& cfg, int target, int path_cap = kDefaultPathCap);

}  // namespace exlife
