#include "exlife/cdg.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace exlife {

PostDom compute_postdom(const Cfg& cfg) {
    const int n = cfg.node_count;
    PostDom pd;
    pd.sets.assign(n, std::vector<bool>(n, true));
    pd.sets[cfg.exit()].assign(n, false);
    pd.sets[cfg.exit()][cfg.exit()] = true;

    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = n - 1; v >= 0; --v) {
            if (v == cfg.exit()) continue;
            std::vector<bool> next(n, true);
            if (cfg.succs[v].empty()) next.assign(n, false);  // cannot happen after patching
            for (const auto& e : cfg.succs[v])
                for (int u = 0; u < n; ++u)
                    next[u] = next[u] && pd.sets[e.to][u];
            next[v] = true;
            if (next != pd.sets[v]) {
                pd.sets[v] = std::move(next);
                changed = true;
            }
        }
    }
    return pd;
}

Cdg build_cdg(const Cfg& cfg, const PostDom& pdom) {
    Cdg cdg;
    cdg.node_count = cfg.node_count;
    cdg.parents.resize(cfg.node_count);
    for (int c = 0; c < cfg.node_count; ++c) {
        if (cfg.succs[c].size() < 2) continue;
        for (const auto& e : cfg.succs[c]) {
            for (int dep = 0; dep < cfg.node_count; ++dep) {
                if (pdom.pdom(dep, e.to) && !pdom.pdom(dep, c))
                    cdg.edges.push_back({c, dep, e.label});
            }
        }
    }
    std::sort(cdg.edges.begin(), cdg.edges.end(), [](const CdgEdge& a, const CdgEdge& b) {
        if (a.ctrl != b.ctrl) return a.ctrl < b.ctrl;
        if (a.dep != b.dep) return a.dep < b.dep;
        return static_cast<int>(a.label) < static_cast<int>(b.label);
    });
    cdg.edges.erase(std::unique(cdg.edges.begin(), cdg.edges.end()), cdg.edges.end());
    for (const auto& e : cdg.edges) cdg.parents[e.dep].push_back(e);
    return cdg;
}

Cdg build_cdg(const Cfg& cfg) { return build_cdg(cfg, compute_postdom(cfg)); }

std::vector<bool> Cdg::ancestor_set(int node) const {
    std::vector<bool> seen(node_count, false);
    std::deque<int> work{node};
    std::vector<bool> out(node_count, false);
    seen[node] = true;
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (const auto& e : parents[v]) {
            out[e.ctrl] = true;
            if (!seen[e.ctrl]) {
                seen[e.ctrl] = true;
                work.push_back(e.ctrl);
            }
        }
    }
    return out;
}

std::string cdg_to_dot(const Cdg& cdg, const Cfg& cfg) {
    std::ostringstream os;
    os << "digraph cdg {\n";
    os << "  label=\"" << cfg.method->id.signature() << "\";\n";
    os << "  node [shape=box, fontname=\"monospace\"];\n";
    std::vector<bool> used(cfg.node_count, false);
    for (const auto& e : cdg.edges) used[e.ctrl] = used[e.dep] = true;
    for (int v = 0; v < cfg.node_count; ++v) {
        if (!used[v]) continue;
        os << "  n" << v << " [label=\"";
        if (cfg.is_statement(v)) {
            std::string text = print_statement(cfg.method->statements[v]);
            std::string escaped;
            for (char c : text) {
                if (c == '"' || c == '\\') escaped += '\\';
                escaped += c;
            }
            os << v << ": " << escaped;
        } else {
            os << cfg.node_name(v);
        }
        os << "\"];\n";
    }
    for (const auto& e : cdg.edges) {
        os << "  n" << e.ctrl << " -> n" << e.dep;
        if (e.label == BranchLabel::True) os << " [label=\"T\"]";
        if (e.label == BranchLabel::False) os << " [label=\"F\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace exlife
