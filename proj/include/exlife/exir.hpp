/**
 * @file exir.hpp
 * @brief EXIR text format: data model, parser, printer, validation.
 *
 * EXIR is a small language-neutral three-address IR. One statement per line,
 * labels on their own line (or prefixing a statement), methods grouped under
 * `method Class::name(T1,T2) { ... }` blocks. See README for the full grammar.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace exlife {

/// Parse or validation failure. Positions are 1-based; col 0 = whole line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& msg)
        : std::runtime_error(format(line, col, msg)), line_(line), col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    static std::string format(int line, int col, const std::string& msg);
    int line_;
    int col_;
};

struct MethodId {
    std::string class_name;
    std::string name;
    std::vector<std::string> params;

    std::string signature() const;
    bool operator==(const MethodId&) const = default;
    auto operator<=>(const MethodId&) const = default;
};

struct Operand {
    enum class Kind { Var, Int, Str, Null, Bool };
    Kind kind = Kind::Null;
    std::string text;       // Var: name, Str: raw contents (unescaped)
    long long int_value = 0;
    bool bool_value = false;

    static Operand var(std::string name);
    static Operand int_const(long long v);
    static Operand str_const(std::string v);
    static Operand null_const();
    static Operand bool_const(bool v);
    bool is_const() const { return kind != Kind::Var; }
    bool operator==(const Operand&) const = default;
};

/// `lhs relop rhs`, or a bare boolean variable test when relop is absent.
struct Condition {
    Operand lhs;
    std::optional<std::string> relop;  // one of == != < <= > >=
    Operand rhs;
    bool operator==(const Condition&) const = default;
};

struct FieldRef {
    std::string class_name;
    std::string field_name;
    std::string display() const { return class_name + "." + field_name; }
    bool operator==(const FieldRef&) const = default;
    auto operator<=>(const FieldRef&) const = default;
};

/// Target of a call statement: resolved against the program during validation.
struct CallRef {
    std::string class_name;
    std::string name;
    std::vector<Operand> args;
    bool operator==(const CallRef&) const = default;
};

/// Message expression of a throw: a concat chain or a format template.
struct MessageExpr {
    bool is_format = false;
    std::string format;            // format template when is_format
    std::vector<Operand> parts;    // concat parts, or format arguments
    bool operator==(const MessageExpr&) const = default;
};

// Statement payloads. `kind()` on ExirStatement names them for diagnostics.
struct StParamBind { std::string var; int index = 0; };
struct StAssignConst { std::string var; Operand value; };
struct StAssignBinop { std::string var; Operand lhs; std::string op; Operand rhs; };
struct StAssignUnop { std::string var; std::string op; Operand operand; };
struct StAssignFieldGet { std::string var; FieldRef field; };
struct StFieldPut { FieldRef field; Operand value; };
struct StAssignStrcat { std::string var; std::vector<Operand> parts; };
struct StAssignCall { std::string var; CallRef call; };
struct StIfGoto { Condition cond; std::string target; };
struct StGoto { std::string target; };
struct StThrow { std::string exception_type; MessageExpr message; };
struct StReturn { std::optional<Operand> value; };
struct StCallVoid { CallRef call; };

inline bool operator==(const StParamBind& a, const StParamBind& b) { return a.var == b.var && a.index == b.index; }
inline bool operator==(const StAssignConst& a, const StAssignConst& b) { return a.var == b.var && a.value == b.value; }
inline bool operator==(const StAssignBinop& a, const StAssignBinop& b) { return a.var == b.var && a.lhs == b.lhs && a.op == b.op && a.rhs == b.rhs; }
inline bool operator==(const StAssignUnop& a, const StAssignUnop& b) { return a.var == b.var && a.op == b.op && a.operand == b.operand; }
inline bool operator==(const StAssignFieldGet& a, const StAssignFieldGet& b) { return a.var == b.var && a.field == b.field; }
inline bool operator==(const StFieldPut& a, const StFieldPut& b) { return a.field == b.field && a.value == b.value; }
inline bool operator==(const StAssignStrcat& a, const StAssignStrcat& b) { return a.var == b.var && a.parts == b.parts; }
inline bool operator==(const StAssignCall& a, const StAssignCall& b) { return a.var == b.var && a.call == b.call; }
inline bool operator==(const StIfGoto& a, const StIfGoto& b) { return a.cond == b.cond && a.target == b.target; }
inline bool operator==(const StGoto& a, const StGoto& b) { return a.target == b.target; }
inline bool operator==(const StThrow& a, const StThrow& b) { return a.exception_type == b.exception_type && a.message == b.message; }
inline bool operator==(const StReturn& a, const StReturn& b) { return a.value == b.value; }
inline bool operator==(const StCallVoid& a, const StCallVoid& b) { return a.call == b.call; }

using StatementBody = std::variant<StParamBind, StAssignConst, StAssignBinop,
                                   StAssignUnop, StAssignFieldGet, StFieldPut,
                                   StAssignStrcat, StAssignCall, StIfGoto,
                                   StGoto, StThrow, StReturn, StCallVoid>;

struct ExirStatement {
    int index = 0;                     // 0-based position within the method body
    int src_line = 0;                  // 1-based line in the source text
    std::optional<std::string> label;
    StatementBody body;

    std::string kind() const;
    template <typename T> const T* as() const { return std::get_if<T>(&body); }
    bool operator==(const ExirStatement& o) const {
        return label == o.label && body == o.body;
    }
};

struct ExirMethod {
    MethodId id;
    bool is_private = false;
    std::vector<ExirStatement> statements;

    /// Statement index a label resolves to; validation guarantees presence.
    int label_target(const std::string& label) const;
    bool operator==(const ExirMethod& o) const {
        return id == o.id && is_private == o.is_private && statements == o.statements;
    }
};

struct FieldDecl {
    FieldRef field;
    Operand initial;  // always a constant
    bool operator==(const FieldDecl&) const = default;
};

struct ExirProgram {
    std::string version_label;
    std::vector<FieldDecl> fields;
    std::vector<ExirMethod> methods;

    /// Index into methods, or nullopt. Resolution key is (class, name, arity).
    std::optional<int> resolve(const std::string& class_name,
                               const std::string& name, int arity) const;
    const FieldDecl* field_decl(const FieldRef& ref) const;
    bool field_is_mutated(const FieldRef& ref) const;

    bool operator==(const ExirProgram& o) const {
        return fields == o.fields && methods == o.methods;
    }
};

/// Parses and validates a whole program. Throws ParseError on any problem.
ExirProgram parse_program(const std::string& text, const std::string& version_label);

/// Renders a program back to EXIR text. parse(print(p)) is structurally == p.
std::string print_program(const ExirProgram& program);

std::string print_statement(const ExirStatement& stmt);
std::string render_operand(const Operand& op);
std::string render_condition(const Condition& cond);

}  // namespace exlife
