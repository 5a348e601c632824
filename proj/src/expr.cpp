#include "exlife/expr.hpp"

namespace exlife {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

std::string render(const ExprPtr& e, bool top);

std::string render_args(const std::vector<ExprPtr>& args, size_t first) {
    std::string out = "(";
    for (size_t i = first; i < args.size(); ++i) {
        if (i > first) out += ", ";
        out += render(args[i], true);
    }
    return out + ")";
}

std::string render(const ExprPtr& e, bool top) {
    switch (e->kind) {
        case Expr::Kind::Const:
            return render_operand(e->constant);
        case Expr::Kind::Param:
            return "parameter" + std::to_string(e->param_index);
        case Expr::Kind::Field:
            return e->field.display();
        case Expr::Kind::Call:
            if (e->children.empty())
                return e->call_class + "." + e->call_name + "()";
            return render(e->children[0], false) + "." + e->call_name +
                   render_args(e->children, 1);
        case Expr::Kind::Binop: {
            std::string inner = render(e->children[0], false) + " " + e->op + " " +
                                render(e->children[1], false);
            return top ? inner : "(" + inner + ")";
        }
        case Expr::Kind::Unop:
            return e->op + render(e->children[0], false);
        case Expr::Kind::Concat: {
            std::string inner;
            for (size_t i = 0; i < e->children.size(); ++i) {
                if (i) inner += " ++ ";
                inner += render(e->children[i], false);
            }
            return top ? inner : "(" + inner + ")";
        }
        case Expr::Kind::Format: {
            std::string out = "format(" + render_operand(Operand::str_const(e->format));
            for (const auto& c : e->children) out += ", " + render(c, true);
            return out + ")";
        }
        case Expr::Kind::Unknown:
            return "?";
    }
    return "?";
}

}  // namespace

ExprPtr make_const(Operand value) {
    Expr e;
    e.kind = Expr::Kind::Const;
    e.constant = std::move(value);
    return make(std::move(e));
}

ExprPtr make_param(int index) {
    Expr e;
    e.kind = Expr::Kind::Param;
    e.param_index = index;
    return make(std::move(e));
}

ExprPtr make_field(FieldRef ref) {
    Expr e;
    e.kind = Expr::Kind::Field;
    e.field = std::move(ref);
    return make(std::move(e));
}

ExprPtr make_call(std::string class_name, std::string name, std::vector<ExprPtr> args) {
    Expr e;
    e.kind = Expr::Kind::Call;
    e.call_class = std::move(class_name);
    e.call_name = std::move(name);
    e.children = std::move(args);
    return make(std::move(e));
}

ExprPtr make_binop(std::string op, ExprPtr lhs, ExprPtr rhs) {
    Expr e;
    e.kind = Expr::Kind::Binop;
    e.op = std::move(op);
    e.children = {std::move(lhs), std::move(rhs)};
    return make(std::move(e));
}

ExprPtr make_unop(std::string op, ExprPtr operand) {
    Expr e;
    e.kind = Expr::Kind::Unop;
    e.op = std::move(op);
    e.children = {std::move(operand)};
    return make(std::move(e));
}

ExprPtr make_concat(std::vector<ExprPtr> parts) {
    Expr e;
    e.kind = Expr::Kind::Concat;
    e.children = std::move(parts);
    return make(std::move(e));
}

ExprPtr make_format(std::string format, std::vector<ExprPtr> args) {
    Expr e;
    e.kind = Expr::Kind::Format;
    e.format = std::move(format);
    e.children = std::move(args);
    return make(std::move(e));
}

ExprPtr make_unknown() {
    static const ExprPtr u = make(Expr{});
    return u;
}

bool contains_unknown(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Unknown) return true;
    for (const auto& c : e->children)
        if (contains_unknown(c)) return true;
    return false;
}

ExprPtr subst_params(const ExprPtr& e, const std::vector<ExprPtr>& args) {
    if (e->kind == Expr::Kind::Param) {
        if (e->param_index >= 0 && e->param_index < static_cast<int>(args.size()))
            return args[e->param_index];
        return make_unknown();
    }
    if (e->children.empty()) return e;
    Expr copy = *e;
    bool changed = false;
    for (auto& c : copy.children) {
        ExprPtr next = subst_params(c, args);
        if (next != c) changed = true;
        c = std::move(next);
    }
    return changed ? make(std::move(copy)) : e;
}

std::string render_expr(const ExprPtr& e) { return render(e, true); }

}  // namespace exlife
