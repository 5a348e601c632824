/**
 * @file expr.hpp
 * @brief Symbolic value trees produced by backward substitution.
 *
 * Refinement rewrites a condition over locals into an expression over the
 * enclosing method's parameters, constants, immutable fields and opaque
 * call results. Trees (not strings) are kept until serialization so that
 * interprocedural substitution composes without re-parsing.
 */
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "exlife/exir.hpp"

namespace exlife {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Const, Param, Field, Call, Binop, Unop, Concat, Format, Unknown };
    Kind kind = Kind::Unknown;

    Operand constant;                     // Const
    int param_index = -1;                 // Param
    FieldRef field;                       // Field: undeclared, kept symbolic
    std::string call_class, call_name;    // Call
    std::string op;                       // Binop, Unop
    std::string format;                   // Format template
    std::vector<ExprPtr> children;        // call args, operands, parts
};

ExprPtr make_const(Operand value);
ExprPtr make_param(int index);
ExprPtr make_field(FieldRef ref);
ExprPtr make_call(std::string class_name, std::string name, std::vector<ExprPtr> args);
ExprPtr make_binop(std::string op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_unop(std::string op, ExprPtr operand);
ExprPtr make_concat(std::vector<ExprPtr> parts);
ExprPtr make_format(std::string format, std::vector<ExprPtr> args);
ExprPtr make_unknown();

/// True when any node in the tree is Unknown.
bool contains_unknown(const ExprPtr& e);

/// Rewrites Param(i) to args[i] everywhere. Used to lift a callee-level
/// expression to the caller through the call's argument bindings.
ExprPtr subst_params(const ExprPtr& e, const std::vector<ExprPtr>& args);

/// Canonical text. Top-level binops are bare (`a == b`); nested ones are
/// parenthesized. Calls render receiver-first: `arg0.name(rest...)`, or
/// `Class.name()` when there are no arguments. Unknown renders as `?`.
std::string render_expr(const ExprPtr& e);

}  // namespace exlife
