#include "exlife/refine.hpp"

namespace exlife {

namespace {

/// The variable a statement defines, if any.
const std::string* defined_var(const StatementBody& body) {
    if (const auto* s = std::get_if<StParamBind>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignConst>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignBinop>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignUnop>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignFieldGet>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignStrcat>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignCall>(&body)) return &s->var;
    return nullptr;
}

bool is_bool_const(const ExprPtr& e) {
    return e->kind == Expr::Kind::Const && e->constant.kind == Operand::Kind::Bool;
}

}  // namespace

TreeLit make_tree_lit(ExprPtr expr, bool positive) {
    std::string text = render_expr(expr);
    return {std::move(expr), positive, std::move(text)};
}

TreeLit simplify_lit(ExprPtr expr, bool positive) {
    for (;;) {
        if (expr->kind == Expr::Kind::Unop && expr->op == "!") {
            positive = !positive;
            expr = expr->children[0];
            continue;
        }
        if (expr->kind == Expr::Kind::Binop && (expr->op == "==" || expr->op == "!=")) {
            const ExprPtr& lhs = expr->children[0];
            const ExprPtr& rhs = expr->children[1];
            const ExprPtr* value = nullptr;
            const ExprPtr* other = nullptr;
            if (is_bool_const(rhs)) { value = &rhs; other = &lhs; }
            else if (is_bool_const(lhs)) { value = &lhs; other = &rhs; }
            if (value) {
                bool want = (*value)->constant.bool_value;
                if (expr->op == "!=") want = !want;
                if (!want) positive = !positive;
                expr = *other;
                continue;
            }
        }
        break;
    }
    return make_tree_lit(std::move(expr), positive);
}

std::optional<bool> lit_verdict(const TreeLit& lit) {
    if (!is_bool_const(lit.expr)) return std::nullopt;
    return lit.expr->constant.bool_value == lit.positive;
}

ExprPtr Refiner::resolve(const std::vector<int>& path, size_t pos,
                         const Operand& op) const {
    return resolve_at(path, pos, op, depth_limit_);
}

ExprPtr Refiner::resolve_at(const std::vector<int>& path, size_t pos,
                            const Operand& op, int depth) const {
    switch (op.kind) {
        case Operand::Kind::Int:
        case Operand::Kind::Str:
        case Operand::Kind::Null:
        case Operand::Kind::Bool:
            return make_const(op);
        case Operand::Kind::Var:
            break;
    }
    if (depth <= 0) return make_unknown();

    const int stmt_count = static_cast<int>(method_.statements.size());
    for (size_t j = pos; j-- > 0;) {
        const int node = path[j];
        if (node >= stmt_count) continue;  // ENTRY, EXIT
        const auto& body = method_.statements[node].body;
        const std::string* var = defined_var(body);
        if (!var || *var != op.text) continue;

        if (const auto* s = std::get_if<StParamBind>(&body)) return make_param(s->index);
        if (const auto* s = std::get_if<StAssignConst>(&body)) return make_const(s->value);
        if (const auto* s = std::get_if<StAssignBinop>(&body))
            return make_binop(s->op, resolve_at(path, j, s->lhs, depth - 1),
                              resolve_at(path, j, s->rhs, depth - 1));
        if (const auto* s = std::get_if<StAssignUnop>(&body))
            return make_unop(s->op, resolve_at(path, j, s->operand, depth - 1));
        if (const auto* s = std::get_if<StAssignFieldGet>(&body)) {
            const FieldDecl* decl = program_.field_decl(s->field);
            if (!decl) return make_field(s->field);
            if (program_.field_is_mutated(s->field)) return make_unknown();
            return make_const(decl->initial);
        }
        if (const auto* s = std::get_if<StAssignStrcat>(&body)) {
            std::vector<ExprPtr> parts;
            for (const auto& p : s->parts) parts.push_back(resolve_at(path, j, p, depth - 1));
            return make_concat(std::move(parts));
        }
        if (const auto* s = std::get_if<StAssignCall>(&body)) {
            std::vector<ExprPtr> args;
            for (const auto& a : s->call.args) args.push_back(resolve_at(path, j, a, depth - 1));
            return make_call(s->call.class_name, s->call.name, std::move(args));
        }
    }
    return make_unknown();  // used before any definition on this path
}

TreeLit Refiner::condition_lit(const std::vector<int>& path, size_t pos,
                               const Condition& cond, bool taken) const {
    ExprPtr expr;
    if (cond.relop) {
        expr = make_binop(*cond.relop, resolve(path, pos, cond.lhs),
                          resolve(path, pos, cond.rhs));
    } else {
        expr = resolve(path, pos, cond.lhs);
    }
    return simplify_lit(std::move(expr), taken);
}

PathClause guards_on_path(const Refiner& refiner, const Cfg& cfg,
                          const std::vector<bool>& ancestors,
                          const std::vector<int>& path) {
    PathClause out;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const int node = path[i];
        if (!cfg.is_statement(node) || !ancestors[node]) continue;
        const auto* branch = cfg.method->statements[node].as<StIfGoto>();
        if (!branch) continue;
        const int next = path[i + 1];
        BranchLabel label = BranchLabel::None;
        for (const auto& e : cfg.succs[node]) {
            if (e.to == next) {
                label = e.label;
                break;
            }
        }
        if (label == BranchLabel::None) continue;  // synthetic edge out of a trap
        TreeLit lit = refiner.condition_lit(path, i, branch->cond,
                                            label == BranchLabel::True);
        if (auto verdict = lit_verdict(lit)) {
            if (!*verdict) {
                out.infeasible = true;
                return out;
            }
            continue;  // tautology adds nothing
        }
        out.lits.push_back(lit);
        out.innermost = std::move(lit);
    }
    return out;
}

}  // namespace exlife
