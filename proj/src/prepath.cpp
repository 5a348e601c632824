#include "exlife/prepath.hpp"

#include <deque>

namespace exlife {

namespace {

/// Nodes from which `target` is reachable (including target itself).
std::vector<bool> reaches(const Cfg& cfg, int target) {
    std::vector<bool> out(cfg.node_count, false);
    out[target] = true;
    std::deque<int> work{target};
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (const auto& e : cfg.preds[v]) {
            if (!out[e.from]) {
                out[e.from] = true;
                work.push_back(e.from);
            }
        }
    }
    return out;
}

struct Search {
    const Cfg& cfg;
    int target;
    int cap;
    std::vector<bool> relevant;
    std::vector<int> visits;
    std::vector<int> path;
    PathSet out;
    bool abort = false;

    void dfs(int v) {
        if (abort) return;
        path.push_back(v);
        ++visits[v];
        if (v == target) {
            if (static_cast<int>(out.paths.size()) >= cap) {
                out.truncated = true;
                abort = true;
            } else {
                out.paths.push_back(path);
            }
        } else {
            for (const auto& e : cfg.succs[v]) {
                if (!relevant[e.to] || visits[e.to] >= 2) continue;
                dfs(e.to);
                if (abort) break;
            }
        }
        --visits[v];
        path.pop_back();
    }
};

}  // namespace

PathSet enumerate_pre_paths(const Cfg& cfg, int target, int path_cap) {
    Search s{cfg, target, path_cap, reaches(cfg, target),
             std::vector<int>(cfg.node_count, 0), {}, {}, false};
    if (!s.relevant[cfg.entry()]) {
        s.out.unreachable = true;
        return s.out;
    }
    s.dfs(cfg.entry());
    return s.out;
}

}  // namespace exlife
