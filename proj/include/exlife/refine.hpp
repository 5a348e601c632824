/**
 * @file refine.hpp
 * @brief Condition refinement along a pre-path.
 *
 * Guard conditions and call arguments mention locals. Refinement walks the
 * pre-path backwards, replacing each local with its nearest definition above
 * the use, until only parameters, constants, immutable fields and opaque
 * call results remain. Substitution positions strictly decrease along the
 * path, so the walk terminates even through loops; a depth budget guards
 * degenerate chains and yields Unknown past it.
 */
#pragma once

#include <optional>

#include "exlife/cdg.hpp"
#include "exlife/cfg.hpp"
#include "exlife/constraint.hpp"
#include "exlife/expr.hpp"

namespace exlife {

/// DNF literal carrying the expression tree plus its cached rendering.
struct TreeLit {
    ExprPtr expr;
    bool positive = true;
    std::string rendered;

    const std::string& text() const { return rendered; }
    TreeLit negated() const { return {expr, !positive, rendered}; }
    bool operator==(const TreeLit& o) const {
        return positive == o.positive && rendered == o.rendered;
    }
};

using TreeDnf = Dnf<TreeLit>;

TreeLit make_tree_lit(ExprPtr expr, bool positive);

/// Collapses boolean-test shapes into the literal polarity: `E == true`
/// becomes E, `E == false` flips, `!=` mirrors those, and a leading `!`
/// flips. Applied repeatedly until the shape is stable.
TreeLit simplify_lit(ExprPtr expr, bool positive);

/// Constant verdict of a literal: true when it always holds, false when it
/// never can, nullopt for ordinary opaque atoms.
std::optional<bool> lit_verdict(const TreeLit& lit);

constexpr int kDefaultDepthLimit = 64;

class Refiner {
public:
    Refiner(const ExirProgram& program, const ExirMethod& method,
            int depth_limit = kDefaultDepthLimit)
        : program_(program), method_(method), depth_limit_(depth_limit) {}

    /// Value of `op` observed just before path position `pos`.
    ExprPtr resolve(const std::vector<int>& path, size_t pos, const Operand& op) const;

    /// Literal for the branch at path position `pos` going in direction
    /// `taken` (true edge or false edge).
    TreeLit condition_lit(const std::vector<int>& path, size_t pos,
                          const Condition& cond, bool taken) const;

private:
    ExprPtr resolve_at(const std::vector<int>& path, size_t pos, const Operand& op,
                       int depth) const;

    const ExirProgram& program_;
    const ExirMethod& method_;
    int depth_limit_;
};

/// The refined guard constraints one pre-path imposes on its target.
struct PathClause {
    bool infeasible = false;          // a guard refined to a constant contradiction
    std::vector<TreeLit> lits;
    std::optional<TreeLit> innermost; // last guard kept, in path order
};

/// Walks `path` and collects one literal per transitive controller of the
/// target that the path passes through, refined at its own position and
/// oriented by the branch the path takes there.
PathClause guards_on_path(const Refiner& refiner, const Cfg& cfg,
                          const std::vector<bool>& ancestors,
                          const std::vector<int>& path);

}  // namespace exlife
