#include "exlife/callgraph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace exlife {

namespace {

/// Iterative Tarjan. Components are emitted callees-first; member order and
/// component order are deterministic because edge lists follow statement order.
struct TarjanState {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, lowlink;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int counter = 0;
    std::vector<std::vector<int>> sccs;

    explicit TarjanState(const std::vector<std::vector<int>>& a)
        : adj(a), index(a.size(), -1), lowlink(a.size(), 0), on_stack(a.size(), false) {}

    void run(int root) {
        struct Frame { int v; size_t edge; };
        std::vector<Frame> frames{{root, 0}};
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, edge] = frames.back();
            if (edge < adj[v].size()) {
                int w = adj[v][edge++];
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
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                    } while (w != v);
                    std::sort(comp.begin(), comp.end());
                    sccs.push_back(std::move(comp));
                }
                int done = v;
                frames.pop_back();
                if (!frames.empty())
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[done]);
            }
        }
    }
};

}  // namespace

CallGraph build_call_graph(const ExirProgram& program) {
    CallGraph g;
    g.program = &program;
    const int n = static_cast<int>(program.methods.size());
    g.sites.resize(n);
    g.callees.resize(n);

    for (int mi = 0; mi < n; ++mi) {
        std::set<int> seen;
        for (const auto& st : program.methods[mi].statements) {
            const CallRef* ref = nullptr;
            if (const auto* c = st.as<StAssignCall>()) ref = &c->call;
            if (const auto* c = st.as<StCallVoid>()) ref = &c->call;
            if (!ref) continue;
            CallSite site;
            site.caller = mi;
            site.stmt = st.index;
            site.ref = *ref;
            site.callee = program.resolve(ref->class_name, ref->name,
                                          static_cast<int>(ref->args.size()));
            if (site.callee && seen.insert(*site.callee).second)
                g.callees[mi].push_back(*site.callee);
            g.sites[mi].push_back(std::move(site));
        }
    }

    TarjanState tarjan(g.callees);
    for (int mi = 0; mi < n; ++mi)
        if (tarjan.index[mi] < 0) tarjan.run(mi);
    g.sccs = std::move(tarjan.sccs);

    g.scc_of.assign(n, -1);
    for (size_t ci = 0; ci < g.sccs.size(); ++ci)
        for (int m : g.sccs[ci]) g.scc_of[m] = static_cast<int>(ci);

    g.scc_recursive.assign(g.sccs.size(), false);
    for (size_t ci = 0; ci < g.sccs.size(); ++ci) {
        if (g.sccs[ci].size() > 1) {
            g.scc_recursive[ci] = true;
            continue;
        }
        const int m = g.sccs[ci][0];
        for (int callee : g.callees[m])
            if (callee == m) g.scc_recursive[ci] = true;
    }
    return g;
}

std::vector<int> CallGraph::analysis_order() const {
    std::vector<int> order;
    for (const auto& comp : sccs)
        for (int m : comp) order.push_back(m);
    return order;
}

}  // namespace exlife
