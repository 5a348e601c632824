#include "exlife/exir.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace exlife {

namespace {

struct Token {
    enum class Kind { Ident, Int, Str, Punct };
    Kind kind;
    std::string text;
    int col;  // 1-based
};

const std::set<std::string> kReserved = {
    "method", "private", "field", "param", "call", "if", "goto",
    "throw", "return", "format", "null", "true", "false"};

const std::set<std::string> kRelops = {"==", "!=", "<", "<=", ">", ">="};
const std::set<std::string> kBinops = {"+", "-", "*", "/", "%", "==", "!=",
                                       "<", "<=", ">", ">=", "&&", "||"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

std::vector<Token> lex_line(const std::string& line, int line_no) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') { ++i; continue; }
        int col = static_cast<int>(i) + 1;
        if (c == '/' && i + 1 < line.size() && line[i + 1] == '/') break;
        if (c == '"') {
            std::string s;
            ++i;
            bool closed = false;
            while (i < line.size()) {
                char d = line[i];
                if (d == '\\') {
                    if (i + 1 >= line.size())
                        throw ParseError(line_no, static_cast<int>(i) + 1, "dangling escape in string literal");
                    char e = line[i + 1];
                    switch (e) {
                        case 'n': s += '\n'; break;
                        case 't': s += '\t'; break;
                        case '"': s += '"'; break;
                        case '\\': s += '\\'; break;
                        default:
                            throw ParseError(line_no, static_cast<int>(i) + 2,
                                             std::string("unsupported escape '\\") + e + "'");
                    }
                    i += 2;
                } else if (d == '"') {
                    ++i;
                    closed = true;
                    break;
                } else {
                    s += d;
                    ++i;
                }
            }
            if (!closed) throw ParseError(line_no, col, "unterminated string literal");
            out.push_back({Token::Kind::Str, s, col});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) s += line[i++];
            out.push_back({Token::Kind::Int, s, col});
            continue;
        }
        if (ident_start(c)) {
            std::string s;
            while (i < line.size() && ident_char(line[i])) s += line[i++];
            out.push_back({Token::Kind::Ident, s, col});
            continue;
        }
        static const std::vector<std::string> two = {"::", ":=", "++", "==", "!=",
                                                     "<=", ">=", "&&", "||"};
        bool matched = false;
        for (const auto& t : two) {
            if (line.compare(i, 2, t) == 0) {
                out.push_back({Token::Kind::Punct, t, col});
                i += 2;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        static const std::string one = "{}(),:<>+-*/%!.";
        if (one.find(c) != std::string::npos) {
            out.push_back({Token::Kind::Punct, std::string(1, c), col});
            ++i;
            continue;
        }
        throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
    }
    return out;
}

class LineParser {
public:
    LineParser(std::vector<Token> tokens, int line_no)
        : tokens_(std::move(tokens)), line_(line_no) {}

    bool done() const { return pos_ >= tokens_.size(); }
    const Token& peek(size_t ahead = 0) const {
        static const Token eol{Token::Kind::Punct, "", 0};
        return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : eol;
    }
    Token next() {
        if (done()) fail("unexpected end of line");
        return tokens_[pos_++];
    }
    bool accept_punct(const std::string& p) {
        if (!done() && peek().kind == Token::Kind::Punct && peek().text == p) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect_punct(const std::string& p) {
        if (!accept_punct(p)) fail("expected '" + p + "'");
    }
    std::string expect_ident() {
        const Token t = next();
        if (t.kind != Token::Kind::Ident) fail("expected identifier", t.col);
        return t.text;
    }
    void expect_end() {
        if (!done()) fail("trailing tokens", peek().col);
    }
    [[noreturn]] void fail(const std::string& msg, int col = 0) const {
        throw ParseError(line_, col ? col : (done() ? 0 : peek().col), msg);
    }

    std::string parse_dotted_name() {
        std::string s = expect_ident();
        while (peek().kind == Token::Kind::Punct && peek().text == "." &&
               peek(1).kind == Token::Kind::Ident) {
            next();
            s += "." + expect_ident();
        }
        return s;
    }

    /// `a.b.Class.name` -> class "a.b.Class", field "name".
    FieldRef parse_field_ref() {
        std::string cls = expect_ident();
        expect_punct(".");
        std::string field = expect_ident();
        while (peek().kind == Token::Kind::Punct && peek().text == "." &&
               peek(1).kind == Token::Kind::Ident) {
            next();
            cls += "." + field;
            field = expect_ident();
        }
        return {cls, field};
    }

    std::string parse_type() {
        std::string s = parse_dotted_name();
        if (peek().text == "." && peek(1).text == "." && peek(2).text == ".") {
            next(); next(); next();
            s += "...";
        }
        return s;
    }

    Operand parse_operand() {
        const Token t = peek();
        if (t.kind == Token::Kind::Str) { next(); return Operand::str_const(t.text); }
        if (t.kind == Token::Kind::Int) { next(); return Operand::int_const(std::stoll(t.text)); }
        if (t.kind == Token::Kind::Punct && t.text == "-" && peek(1).kind == Token::Kind::Int) {
            next();
            return Operand::int_const(-std::stoll(next().text));
        }
        if (t.kind == Token::Kind::Ident) {
            next();
            if (t.text == "null") return Operand::null_const();
            if (t.text == "true") return Operand::bool_const(true);
            if (t.text == "false") return Operand::bool_const(false);
            if (kReserved.count(t.text))
                fail("reserved word '" + t.text + "' cannot be used as a variable", t.col);
            return Operand::var(t.text);
        }
        fail("expected operand", t.col);
    }

    CallRef parse_call_ref() {
        CallRef ref;
        ref.class_name = parse_dotted_name();
        expect_punct("::");
        ref.name = expect_ident();
        expect_punct("(");
        if (!accept_punct(")")) {
            ref.args.push_back(parse_operand());
            while (accept_punct(",")) ref.args.push_back(parse_operand());
            expect_punct(")");
        }
        return ref;
    }

private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    int line_;
};

bool is_relop_tok(const Token& t) {
    return t.kind == Token::Kind::Punct && kRelops.count(t.text) > 0;
}
bool is_binop_tok(const Token& t) {
    return t.kind == Token::Kind::Punct && kBinops.count(t.text) > 0;
}

StatementBody parse_assign(LineParser& lp, const std::string& var) {
    const Token head = lp.peek();
    if (head.kind == Token::Kind::Ident && head.text == "param") {
        lp.next();
        const Token idx = lp.next();
        if (idx.kind != Token::Kind::Int) lp.fail("expected parameter index", idx.col);
        lp.expect_end();
        return StParamBind{var, std::stoi(idx.text)};
    }
    if (head.kind == Token::Kind::Ident && head.text == "call") {
        lp.next();
        CallRef ref = lp.parse_call_ref();
        lp.expect_end();
        return StAssignCall{var, std::move(ref)};
    }
    if (head.kind == Token::Kind::Ident && head.text == "field") {
        lp.next();
        FieldRef ref = lp.parse_field_ref();
        lp.expect_end();
        return StAssignFieldGet{var, std::move(ref)};
    }
    if (head.kind == Token::Kind::Punct && head.text == "!") {
        lp.next();
        Operand op = lp.parse_operand();
        lp.expect_end();
        return StAssignUnop{var, "!", std::move(op)};
    }
    if (head.kind == Token::Kind::Punct && head.text == "-" &&
        lp.peek(1).kind == Token::Kind::Ident) {
        lp.next();
        Operand op = lp.parse_operand();
        lp.expect_end();
        return StAssignUnop{var, "-", std::move(op)};
    }
    Operand first = lp.parse_operand();
    if (lp.done()) {
        if (!first.is_const())
            lp.fail("plain variable copy is not a statement; use an explicit operation");
        return StAssignConst{var, std::move(first)};
    }
    if (lp.peek().kind == Token::Kind::Punct && lp.peek().text == "++") {
        StAssignStrcat cat{var, {std::move(first)}};
        while (lp.accept_punct("++")) cat.parts.push_back(lp.parse_operand());
        lp.expect_end();
        return cat;
    }
    const Token op = lp.next();
    if (!is_binop_tok(op)) lp.fail("expected binary operator", op.col);
    Operand rhs = lp.parse_operand();
    lp.expect_end();
    return StAssignBinop{var, std::move(first), op.text, std::move(rhs)};
}

MessageExpr parse_message(LineParser& lp) {
    MessageExpr msg;
    if (lp.done()) return msg;
    if (lp.peek().kind == Token::Kind::Ident && lp.peek().text == "format") {
        lp.next();
        lp.expect_punct("(");
        const Token fmt = lp.next();
        if (fmt.kind != Token::Kind::Str) lp.fail("format template must be a string literal", fmt.col);
        msg.is_format = true;
        msg.format = fmt.text;
        while (lp.accept_punct(",")) msg.parts.push_back(lp.parse_operand());
        lp.expect_punct(")");
        lp.expect_end();
        return msg;
    }
    msg.parts.push_back(lp.parse_operand());
    while (lp.accept_punct("++")) msg.parts.push_back(lp.parse_operand());
    lp.expect_end();
    return msg;
}

StatementBody parse_statement_body(LineParser& lp) {
    const Token head = lp.peek();
    if (head.kind == Token::Kind::Ident) {
        if (head.text == "if") {
            lp.next();
            Condition cond;
            cond.lhs = lp.parse_operand();
            if (is_relop_tok(lp.peek())) {
                cond.relop = lp.next().text;
                cond.rhs = lp.parse_operand();
            } else if (cond.lhs.kind != Operand::Kind::Var) {
                lp.fail("bare condition must be a boolean variable");
            }
            const std::string kw = lp.expect_ident();
            if (kw != "goto") lp.fail("expected 'goto'");
            std::string target = lp.expect_ident();
            lp.expect_end();
            return StIfGoto{std::move(cond), std::move(target)};
        }
        if (head.text == "goto") {
            lp.next();
            std::string target = lp.expect_ident();
            lp.expect_end();
            return StGoto{std::move(target)};
        }
        if (head.text == "throw") {
            lp.next();
            std::string type = lp.parse_dotted_name();
            MessageExpr msg = parse_message(lp);
            return StThrow{std::move(type), std::move(msg)};
        }
        if (head.text == "return") {
            lp.next();
            StReturn ret;
            if (!lp.done()) ret.value = lp.parse_operand();
            lp.expect_end();
            return ret;
        }
        if (head.text == "call") {
            lp.next();
            CallRef ref = lp.parse_call_ref();
            lp.expect_end();
            return StCallVoid{std::move(ref)};
        }
        if (head.text == "field") {
            lp.next();
            FieldRef ref = lp.parse_field_ref();
            lp.expect_punct(":=");
            Operand value = lp.parse_operand();
            lp.expect_end();
            return StFieldPut{std::move(ref), std::move(value)};
        }
        if (kReserved.count(head.text))
            lp.fail("unexpected keyword '" + head.text + "'", head.col);
        std::string var = lp.expect_ident();
        lp.expect_punct(":=");
        return parse_assign(lp, var);
    }
    lp.fail("expected statement", head.col);
}

void validate_method(const ExirMethod& m, const std::vector<int>& src_lines) {
    std::map<std::string, int> labels;
    for (const auto& st : m.statements) {
        if (st.label) {
            auto [it, inserted] = labels.emplace(*st.label, st.index);
            if (!inserted)
                throw ParseError(src_lines[st.index], 0, "duplicate label '" + *st.label + "'");
        }
    }
    const int arity = static_cast<int>(m.id.params.size());
    for (const auto& st : m.statements) {
        const int line = src_lines[st.index];
        if (const auto* p = st.as<StParamBind>()) {
            if (p->index < 0 || p->index >= arity)
                throw ParseError(line, 0, "parameter index " + std::to_string(p->index) +
                                              " out of range for " + m.id.signature());
        } else if (const auto* g = st.as<StGoto>()) {
            if (!labels.count(g->target))
                throw ParseError(line, 0, "unresolved label '" + g->target + "'");
        } else if (const auto* i = st.as<StIfGoto>()) {
            if (!labels.count(i->target))
                throw ParseError(line, 0, "unresolved label '" + i->target + "'");
        }
    }
}

void validate_program(const ExirProgram& prog,
                      const std::vector<std::vector<int>>& src_lines) {
    std::set<std::string> sigs;
    for (const auto& m : prog.methods) {
        if (!sigs.insert(m.id.signature()).second)
            throw ParseError(0, 0, "duplicate method signature " + m.id.signature());
    }
    for (size_t mi = 0; mi < prog.methods.size(); ++mi) {
        const auto& m = prog.methods[mi];
        validate_method(m, src_lines[mi]);
        for (const auto& st : m.statements) {
            const CallRef* ref = nullptr;
            if (const auto* c = st.as<StAssignCall>()) ref = &c->call;
            if (const auto* c = st.as<StCallVoid>()) ref = &c->call;
            if (!ref) continue;
            int hits = 0;
            for (const auto& cand : prog.methods) {
                if (cand.id.class_name == ref->class_name && cand.id.name == ref->name &&
                    cand.id.params.size() == ref->args.size())
                    ++hits;
            }
            if (hits > 1)
                throw ParseError(src_lines[mi][st.index], 0,
                                 "ambiguous call to " + ref->class_name + "::" + ref->name);
        }
    }
    std::set<std::string> field_names;
    for (const auto& f : prog.fields) {
        if (!field_names.insert(f.field.display()).second)
            throw ParseError(0, 0, "duplicate field declaration " + f.field.display());
    }
}

std::string escape_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string render_call(const CallRef& c) {
    std::string out = c.class_name + "::" + c.name + "(";
    for (size_t i = 0; i < c.args.size(); ++i) {
        if (i) out += ", ";
        out += render_operand(c.args[i]);
    }
    return out + ")";
}

std::string render_message(const MessageExpr& m) {
    if (m.is_format) {
        std::string out = "format(" + escape_string(m.format);
        for (const auto& a : m.parts) out += ", " + render_operand(a);
        return out + ")";
    }
    std::string out;
    for (size_t i = 0; i < m.parts.size(); ++i) {
        if (i) out += " ++ ";
        out += render_operand(m.parts[i]);
    }
    return out;
}

}  // namespace

std::string ParseError::format(int line, int col, const std::string& msg) {
    std::ostringstream os;
    if (line > 0) {
        os << "line " << line;
        if (col > 0) os << ", col " << col;
        os << ": ";
    }
    os << msg;
    return os.str();
}

std::string MethodId::signature() const {
    std::string s = class_name + "::" + name + "(";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) s += ",";
        s += params[i];
    }
    return s + ")";
}

Operand Operand::var(std::string name) { return {Kind::Var, std::move(name), 0, false}; }
Operand Operand::int_const(long long v) { return {Kind::Int, std::to_string(v), v, false}; }
Operand Operand::str_const(std::string v) { return {Kind::Str, std::move(v), 0, false}; }
Operand Operand::null_const() { return {Kind::Null, "", 0, false}; }
Operand Operand::bool_const(bool v) { return {Kind::Bool, "", 0, v}; }

std::string ExirStatement::kind() const {
    struct V {
        std::string operator()(const StParamBind&) { return "param-bind"; }
        std::string operator()(const StAssignConst&) { return "assign-const"; }
        std::string operator()(const StAssignBinop&) { return "assign-binop"; }
        std::string operator()(const StAssignUnop&) { return "assign-unop"; }
        std::string operator()(const StAssignFieldGet&) { return "assign-fieldget"; }
        std::string operator()(const StFieldPut&) { return "field-put"; }
        std::string operator()(const StAssignStrcat&) { return "assign-strcat"; }
        std::string operator()(const StAssignCall&) { return "assign-call"; }
        std::string operator()(const StIfGoto&) { return "if-goto"; }
        std::string operator()(const StGoto&) { return "goto"; }
        std::string operator()(const StThrow&) { return "throw"; }
        std::string operator()(const StReturn&) { return "return"; }
        std::string operator()(const StCallVoid&) { return "call-void"; }
    };
    return std::visit(V{}, body);
}

int ExirMethod::label_target(const std::string& label) const {
    for (const auto& st : statements)
        if (st.label && *st.label == label) return st.index;
    throw std::logic_error("unresolved label '" + label + "' in " + id.signature());
}

std::optional<int> ExirProgram::resolve(const std::string& class_name,
                                        const std::string& name, int arity) const {
    for (size_t i = 0; i < methods.size(); ++i) {
        const auto& m = methods[i];
        if (m.id.class_name == class_name && m.id.name == name &&
            static_cast<int>(m.id.params.size()) == arity)
            return static_cast<int>(i);
    }
    return std::nullopt;
}

const FieldDecl* ExirProgram::field_decl(const FieldRef& ref) const {
    for (const auto& f : fields)
        if (f.field == ref) return &f;
    return nullptr;
}

bool ExirProgram::field_is_mutated(const FieldRef& ref) const {
    for (const auto& m : methods)
        for (const auto& st : m.statements)
            if (const auto* put = st.as<StFieldPut>())
                if (put->field == ref) return true;
    return false;
}

ExirProgram parse_program(const std::string& text, const std::string& version_label) {
    ExirProgram prog;
    prog.version_label = version_label;
    std::vector<std::vector<int>> src_lines;

    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        lines.push_back(cur);
    }

    ExirMethod* current = nullptr;
    std::optional<std::string> pending_label;
    int pending_label_line = 0;

    for (size_t ln = 0; ln < lines.size(); ++ln) {
        const int line_no = static_cast<int>(ln) + 1;
        std::vector<Token> toks = lex_line(lines[ln], line_no);
        if (toks.empty()) continue;
        LineParser lp(std::move(toks), line_no);

        if (!current) {
            const Token head = lp.peek();
            if (head.kind == Token::Kind::Ident && head.text == "field") {
                lp.next();
                FieldDecl decl;
                decl.field = lp.parse_field_ref();
                lp.expect_punct(":=");
                decl.initial = lp.parse_operand();
                if (!decl.initial.is_const())
                    lp.fail("field declarations take a constant initial value");
                lp.expect_end();
                prog.fields.push_back(std::move(decl));
                continue;
            }
            bool is_private = false;
            if (head.kind == Token::Kind::Ident && head.text == "private") {
                lp.next();
                is_private = true;
            }
            const std::string kw = lp.expect_ident();
            if (kw != "method") lp.fail("expected 'method' or 'field' declaration");
            ExirMethod m;
            m.is_private = is_private;
            m.id.class_name = lp.parse_dotted_name();
            lp.expect_punct("::");
            m.id.name = lp.expect_ident();
            lp.expect_punct("(");
            if (!lp.accept_punct(")")) {
                m.id.params.push_back(lp.parse_type());
                while (lp.accept_punct(",")) m.id.params.push_back(lp.parse_type());
                lp.expect_punct(")");
            }
            lp.expect_punct("{");
            lp.expect_end();
            prog.methods.push_back(std::move(m));
            src_lines.emplace_back();
            current = &prog.methods.back();
            continue;
        }

        // Inside a method body.
        if (lp.peek().kind == Token::Kind::Punct && lp.peek().text == "}") {
            lp.next();
            lp.expect_end();
            if (pending_label)
                throw ParseError(pending_label_line, 0,
                                 "label '" + *pending_label + "' is not attached to a statement");
            current = nullptr;
            continue;
        }
        std::optional<std::string> label = std::move(pending_label);
        pending_label.reset();
        if (lp.peek().kind == Token::Kind::Ident &&
            lp.peek(1).kind == Token::Kind::Punct && lp.peek(1).text == ":") {
            if (label) lp.fail("statement already has a label '" + *label + "'");
            label = lp.expect_ident();
            lp.expect_punct(":");
            if (lp.done()) {
                pending_label = std::move(label);
                pending_label_line = line_no;
                continue;
            }
        }
        ExirStatement st;
        st.index = static_cast<int>(current->statements.size());
        st.src_line = line_no;
        st.label = std::move(label);
        st.body = parse_statement_body(lp);
        current->statements.push_back(std::move(st));
        src_lines.back().push_back(line_no);
    }
    if (current)
        throw ParseError(static_cast<int>(lines.size()), 0,
                         "missing '}' for method " + current->id.signature());

    validate_program(prog, src_lines);
    return prog;
}

std::string render_operand(const Operand& op) {
    switch (op.kind) {
        case Operand::Kind::Var: return op.text;
        case Operand::Kind::Int: return std::to_string(op.int_value);
        case Operand::Kind::Str: return escape_string(op.text);
        case Operand::Kind::Null: return "null";
        case Operand::Kind::Bool: return op.bool_value ? "true" : "false";
    }
    return "?";
}

std::string render_condition(const Condition& cond) {
    if (!cond.relop) return render_operand(cond.lhs);
    return render_operand(cond.lhs) + " " + *cond.relop + " " + render_operand(cond.rhs);
}

std::string print_statement(const ExirStatement& stmt) {
    struct V {
        std::string operator()(const StParamBind& s) {
            return s.var + " := param " + std::to_string(s.index);
        }
        std::string operator()(const StAssignConst& s) {
            return s.var + " := " + render_operand(s.value);
        }
        std::string operator()(const StAssignBinop& s) {
            return s.var + " := " + render_operand(s.lhs) + " " + s.op + " " + render_operand(s.rhs);
        }
        std::string operator()(const StAssignUnop& s) {
            return s.var + " := " + s.op + render_operand(s.operand);
        }
        std::string operator()(const StAssignFieldGet& s) {
            return s.var + " := field " + s.field.display();
        }
        std::string operator()(const StFieldPut& s) {
            return "field " + s.field.display() + " := " + render_operand(s.value);
        }
        std::string operator()(const StAssignStrcat& s) {
            std::string out = s.var + " :=";
            for (size_t i = 0; i < s.parts.size(); ++i)
                out += (i ? " ++ " : " ") + render_operand(s.parts[i]);
            return out;
        }
        std::string operator()(const StAssignCall& s) {
            return s.var + " := call " + render_call(s.call);
        }
        std::string operator()(const StIfGoto& s) {
            return "if " + render_condition(s.cond) + " goto " + s.target;
        }
        std::string operator()(const StGoto& s) { return "goto " + s.target; }
        std::string operator()(const StThrow& s) {
            std::string out = "throw " + s.exception_type;
            const std::string msg = render_message(s.message);
            if (!msg.empty()) out += " " + msg;
            return out;
        }
        std::string operator()(const StReturn& s) {
            return s.value ? "return " + render_operand(*s.value) : "return";
        }
        std::string operator()(const StCallVoid& s) { return "call " + render_call(s.call); }
    };
    return std::visit(V{}, stmt.body);
}

std::string print_program(const ExirProgram& program) {
    std::ostringstream os;
    for (const auto& f : program.fields)
        os << "field " << f.field.display() << " := " << render_operand(f.initial) << "\n";
    if (!program.fields.empty()) os << "\n";
    for (size_t mi = 0; mi < program.methods.size(); ++mi) {
        const auto& m = program.methods[mi];
        if (mi) os << "\n";
        if (m.is_private) os << "private ";
        os << "method " << m.id.signature() << " {\n";
        for (const auto& st : m.statements) {
            if (st.label) os << *st.label << ":\n";
            os << "  " << print_statement(st) << "\n";
        }
        os << "}\n";
    }
    return os.str();
}

}  // namespace exlife
