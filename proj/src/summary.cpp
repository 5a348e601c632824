#include "exlife/summary.hpp"

#include <map>

#include "exlife/message.hpp"
#include "exlife/prepath.hpp"

namespace exlife {

namespace {

struct MethodAnalyzer {
    const ExirProgram& program;
    const CallGraph& graph;
    const ExtractOptions& opts;
    ExtractionResult& result;
    int method_index;

    const ExirMethod& method;
    const std::vector<bool>& finalized;
    Cfg cfg;
    Cdg cdg;
    Refiner refiner;
    bool dropped_backedge = false;
    std::map<int, PathSet> path_cache;
    // Negated exception condition of one call site under one argument
    // rendering; reused across every later target that passes the site.
    std::map<std::pair<int, std::string>, TreeDnf> avoid_cache;

    MethodAnalyzer(const ExirProgram& p, const CallGraph& g, const ExtractOptions& o,
                   ExtractionResult& r, int mi, const std::vector<bool>& done)
        : program(p), graph(g), opts(o), result(r), method_index(mi),
          method(p.methods[mi]), finalized(done), cfg(build_cfg(method)),
          cdg(build_cdg(cfg)), refiner(p, method, o.depth_limit) {}

    const PathSet& paths_to(int node) {
        auto it = path_cache.find(node);
        if (it != path_cache.end()) return it->second;
        return path_cache.emplace(node, enumerate_pre_paths(cfg, node, opts.path_cap))
            .first->second;
    }

    /// Summaries of a callee, or null for a cycle back edge (the callee has
    /// not been finalized yet; the caller is marked approximate instead).
    const std::vector<ThrowSummary>* callee_summaries(int callee) const {
        return finalized[callee] ? &result.per_method[callee] : nullptr;
    }

    /// Substitutes call arguments into one callee-level formula. Literals
    /// that collapse to constants are evaluated; a false literal kills its
    /// clause.
    TreeDnf lift_formula(const TreeDnf& callee_dnf, const std::vector<ExprPtr>& args) {
        TreeDnf out;
        out.truncated = callee_dnf.truncated;
        out.clause_limit_hit = callee_dnf.clause_limit_hit;
        for (const auto& clause : callee_dnf.clauses) {
            std::vector<TreeLit> lifted;
            bool dead = false;
            for (const auto& lit : clause) {
                TreeLit next = simplify_lit(subst_params(lit.expr, args), lit.positive);
                if (auto verdict = lit_verdict(next)) {
                    if (!*verdict) {
                        dead = true;
                        break;
                    }
                    continue;
                }
                lifted.push_back(std::move(next));
            }
            if (dead) {
                ++result.infeasible_clauses_dropped;
                continue;
            }
            out.clauses.push_back(std::move(lifted));
        }
        result.infeasible_clauses_dropped += dnf_canonicalize(out);
        return out;
    }

    std::vector<ExprPtr> arg_trees(const std::vector<int>& path, size_t pos,
                                   const CallRef& call) {
        std::vector<ExprPtr> args;
        args.reserve(call.args.size());
        for (const auto& a : call.args) args.push_back(refiner.resolve(path, pos, a));
        return args;
    }

    /// Negation of "some summary of this call site's callee fires", under
    /// the given argument bindings.
    const TreeDnf& avoidance(int site_stmt, const std::vector<ExprPtr>& args,
                             const std::vector<ThrowSummary>& callee) {
        std::string key;
        for (const auto& a : args) key += render_expr(a) + "\x1f";
        auto cache_key = std::make_pair(site_stmt, std::move(key));
        auto it = avoid_cache.find(cache_key);
        if (it != avoid_cache.end()) return it->second;

        TreeDnf acc = TreeDnf::make_true();
        for (const auto& q : callee) {
            TreeDnf fires = lift_formula(q.precondition, args);
            acc = dnf_conjoin(acc, dnf_negate(fires, opts.clause_limit,
                                              result.infeasible_clauses_dropped),
                              result.infeasible_clauses_dropped);
        }
        return avoid_cache.emplace(std::move(cache_key), std::move(acc)).first->second;
    }

    /// Conjunction of avoidance constraints for every resolved call site the
    /// path passes before its final node. Each site counts once, at its
    /// first occurrence.
    TreeDnf earlier_calls_constraint(const std::vector<int>& path) {
        TreeDnf acc = TreeDnf::make_true();
        std::vector<int> seen;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            const int node = path[i];
            if (!cfg.is_statement(node)) continue;
            const CallSite* site = site_at(node);
            if (!site || !site->callee) continue;
            if (std::find(seen.begin(), seen.end(), node) != seen.end()) continue;
            seen.push_back(node);
            const auto* callee = callee_summaries(*site->callee);
            if (!callee) {
                dropped_backedge = true;
                continue;
            }
            if (callee->empty()) continue;
            acc = dnf_conjoin(acc, avoidance(node, arg_trees(path, i, site->ref), *callee),
                              result.infeasible_clauses_dropped);
        }
        return acc;
    }

    const CallSite* site_at(int stmt) const {
        for (const auto& s : graph.sites[method_index])
            if (s.stmt == stmt) return &s;
        return nullptr;
    }

    void finalize(ThrowSummary& s) {
        for (const auto& clause : s.precondition.clauses)
            for (const auto& lit : clause)
                if (contains_unknown(lit.expr)) s.imprecise = true;
        for (const auto& clause : s.key_precondition.clauses)
            for (const auto& lit : clause)
                if (contains_unknown(lit.expr)) s.imprecise = true;
        result.per_method[method_index].push_back(std::move(s));
    }

    void summarize_throw(const ExirStatement& stmt) {
        ThrowSummary s;
        s.exception_type = stmt.as<StThrow>()->exception_type;
        s.message_pattern = message_pattern(method, stmt);
        s.origin_method = method.id.signature();
        s.origin_stmt = stmt.index;

        const PathSet& ps = paths_to(stmt.index);
        if (ps.unreachable) {
            s.precondition = TreeDnf::make_false();
            s.key_precondition = TreeDnf::make_false();
            s.unreachable = true;
            finalize(s);
            return;
        }
        const std::vector<bool> ancestors = cdg.ancestor_set(stmt.index);
        TreeDnf pre = TreeDnf::make_false();
        TreeDnf key = TreeDnf::make_false();
        pre.truncated = key.truncated = ps.truncated;
        for (const auto& path : ps.paths) {
            PathClause pc = guards_on_path(refiner, cfg, ancestors, path);
            if (pc.infeasible) {
                ++result.infeasible_clauses_dropped;
                continue;
            }
            TreeDnf contrib{{pc.lits}, false, false};
            if (opts.mode == Mode::Inter)
                contrib = dnf_conjoin(contrib, earlier_calls_constraint(path),
                                      result.infeasible_clauses_dropped);
            pre = dnf_disjoin(pre, contrib, result.infeasible_clauses_dropped);

            TreeDnf key_contrib = pc.innermost
                                      ? TreeDnf{{{*pc.innermost}}, false, false}
                                      : TreeDnf::make_true();
            key = dnf_disjoin(key, key_contrib, result.infeasible_clauses_dropped);
        }
        s.precondition = std::move(pre);
        s.key_precondition = std::move(key);
        finalize(s);
    }

    void summarize_call_site(const CallSite& site) {
        const auto* callee = callee_summaries(*site.callee);
        if (!callee) {
            dropped_backedge = true;
            return;
        }
        if (callee->empty()) return;
        const PathSet& ps = paths_to(site.stmt);
        if (ps.unreachable) return;  // the call never runs, nothing propagates
        const std::vector<bool> ancestors = cdg.ancestor_set(site.stmt);
        const std::string callee_sig = program.methods[*site.callee].id.signature();

        for (const auto& q : *callee) {
            ThrowSummary s;
            s.exception_type = q.exception_type;
            s.message_pattern = q.message_pattern;
            s.origin_method = q.origin_method;
            s.origin_stmt = q.origin_stmt;
            s.call_chain.push_back(callee_sig);
            s.call_chain.insert(s.call_chain.end(), q.call_chain.begin(),
                                q.call_chain.end());
            s.recursive_approx = q.recursive_approx;
            s.unreachable = q.unreachable;

            TreeDnf pre = TreeDnf::make_false();
            TreeDnf key = TreeDnf::make_false();
            pre.truncated = key.truncated = ps.truncated;
            for (const auto& path : ps.paths) {
                const size_t call_pos = path.size() - 1;
                PathClause pc = guards_on_path(refiner, cfg, ancestors, path);
                if (pc.infeasible) {
                    ++result.infeasible_clauses_dropped;
                    continue;
                }
                std::vector<ExprPtr> args = arg_trees(path, call_pos, site.ref);
                TreeDnf contrib = lift_formula(q.precondition, args);
                contrib = dnf_conjoin(contrib, TreeDnf{{pc.lits}, false, false},
                                      result.infeasible_clauses_dropped);
                contrib = dnf_conjoin(contrib, earlier_calls_constraint(path),
                                      result.infeasible_clauses_dropped);
                pre = dnf_disjoin(pre, contrib, result.infeasible_clauses_dropped);
                key = dnf_disjoin(key, lift_formula(q.key_precondition, args),
                                  result.infeasible_clauses_dropped);
            }
            s.precondition = std::move(pre);
            s.key_precondition = std::move(key);
            finalize(s);
        }
    }

    void run() {
        ++result.stats.method_visits[method_index];
        for (const auto& stmt : method.statements) {
            if (stmt.as<StThrow>()) {
                summarize_throw(stmt);
                continue;
            }
            if (opts.mode != Mode::Inter) continue;
            const CallSite* site = site_at(stmt.index);
            if (site && site->callee) summarize_call_site(*site);
        }
        if (dropped_backedge)
            for (auto& s : result.per_method[method_index]) s.recursive_approx = true;
    }
};

}  // namespace

ExtractionResult extract_summaries(const ExirProgram& program,
                                   const ExtractOptions& options) {
    CallGraph graph = build_call_graph(program);
    ExtractionResult result;
    result.per_method.resize(program.methods.size());
    result.stats.method_visits.assign(program.methods.size(), 0);

    std::vector<bool> finalized(program.methods.size(), false);
    for (int mi : graph.analysis_order()) {
        MethodAnalyzer(program, graph, options, result, mi, finalized).run();
        finalized[mi] = true;
    }
    return result;
}

}  // namespace exlife
