#include "exlife/cfg.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace exlife {

namespace {

void add_edge(Cfg& cfg, int from, int to, BranchLabel label, bool synthetic = false) {
    CfgEdge e{from, to, label, synthetic};
    cfg.succs[from].push_back(e);
    cfg.preds[to].push_back(e);
}

/// Nodes from which EXIT is reachable.
std::vector<bool> reaches_exit(const Cfg& cfg) {
    std::vector<bool> reach(cfg.node_count, false);
    std::deque<int> work{cfg.exit()};
    reach[cfg.exit()] = true;
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (const auto& e : cfg.preds[v]) {
            if (!reach[e.from]) {
                reach[e.from] = true;
                work.push_back(e.from);
            }
        }
    }
    return reach;
}

/// Adds EXIT edges out of components that can never terminate. One edge per
/// sink component of the trapped subgraph, from its smallest node, so the
/// result is deterministic and minimal.
void patch_trapped_components(Cfg& cfg) {
    std::vector<bool> reach = reaches_exit(cfg);
    std::vector<int> trapped;
    for (int v = 0; v < cfg.node_count; ++v)
        if (!reach[v]) trapped.push_back(v);
    if (trapped.empty()) return;

    // Tarjan over the trapped subgraph only.
    const int n = cfg.node_count;
    std::vector<int> index(n, -1), lowlink(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int counter = 0, comp_count = 0;
    struct Frame { int v; size_t edge; };
    for (int root : trapped) {
        if (index[root] >= 0) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, edge] = frames.back();
            if (edge < cfg.succs[v].size()) {
                int w = cfg.succs[v][edge++].to;
                if (reach[w]) continue;  // never happens; trapped nodes only reach trapped nodes
                if (index[w] < 0) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comp_count;
                    } while (w != v);
                    ++comp_count;
                }
                int done = v;
                frames.pop_back();
                if (!frames.empty())
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[done]);
            }
        }
    }

    std::vector<bool> is_sink(comp_count, true);
    for (int v : trapped)
        for (const auto& e : cfg.succs[v])
            if (comp[e.to] != comp[v]) is_sink[comp[v]] = false;

    std::vector<int> rep(comp_count, -1);
    for (int v : trapped)
        if (rep[comp[v]] < 0 || v < rep[comp[v]]) rep[comp[v]] = v;
    for (int c = 0; c < comp_count; ++c)
        if (is_sink[c]) add_edge(cfg, rep[c], cfg.exit(), BranchLabel::None, true);
}

}  // namespace

Cfg build_cfg(const ExirMethod& method) {
    Cfg cfg;
    cfg.method = &method;
    const int n = static_cast<int>(method.statements.size());
    cfg.node_count = n + 2;
    cfg.succs.resize(cfg.node_count);
    cfg.preds.resize(cfg.node_count);

    add_edge(cfg, cfg.entry(), n == 0 ? cfg.exit() : 0, BranchLabel::None);
    for (int i = 0; i < n; ++i) {
        const auto& st = method.statements[i];
        const int fall = (i + 1 < n) ? i + 1 : cfg.exit();
        if (st.as<StThrow>() || st.as<StReturn>()) {
            add_edge(cfg, i, cfg.exit(), BranchLabel::None);
        } else if (const auto* g = st.as<StGoto>()) {
            add_edge(cfg, i, method.label_target(g->target), BranchLabel::None);
        } else if (const auto* br = st.as<StIfGoto>()) {
            add_edge(cfg, i, method.label_target(br->target), BranchLabel::True);
            add_edge(cfg, i, fall, BranchLabel::False);
        } else {
            add_edge(cfg, i, fall, BranchLabel::None);
        }
    }
    patch_trapped_components(cfg);

    // Every node now reaches EXIT and only branches carry labels.
    assert([&] {
        auto reach = reaches_exit(cfg);
        return std::all_of(reach.begin(), reach.end(), [](bool b) { return b; });
    }());
    return cfg;
}

std::string Cfg::node_name(int node) const {
    if (node == entry()) return "ENTRY";
    if (node == exit()) return "EXIT";
    return std::to_string(node);
}

std::string cfg_to_dot(const Cfg& cfg) {
    std::ostringstream os;
    os << "digraph cfg {\n";
    os << "  label=\"" << cfg.method->id.signature() << "\";\n";
    os << "  node [shape=box, fontname=\"monospace\"];\n";
    for (int v = 0; v < cfg.node_count; ++v) {
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
    for (int v = 0; v < cfg.node_count; ++v) {
        for (const auto& e : cfg.succs[v]) {
            os << "  n" << e.from << " -> n" << e.to;
            std::vector<std::string> attrs;
            if (e.label == BranchLabel::True) attrs.push_back("label=\"T\"");
            if (e.label == BranchLabel::False) attrs.push_back("label=\"F\"");
            if (e.synthetic) attrs.push_back("style=dashed");
            if (!attrs.empty()) {
                os << " [" << attrs[0];
                for (size_t i = 1; i < attrs.size(); ++i) os << ", " << attrs[i];
                os << "]";
            }
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace exlife
