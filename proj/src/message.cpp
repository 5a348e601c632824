#include "exlife/message.hpp"

namespace exlife {

namespace {

constexpr int kTraceDepth = 64;
const std::string kWild = ".*";

/// Appends a fragment, collapsing adjacent wildcards.
void append(std::string& pattern, const std::string& frag) {
    if (frag == kWild && pattern.size() >= 2 &&
        pattern.compare(pattern.size() - 2, 2, kWild) == 0)
        return;
    pattern += frag;
}

void trace_operand(const ExirMethod& method, int before, const Operand& op,
                   std::string& pattern, int depth);

/// Definitions that always force a wildcard when traced.
const std::string* opaque_def(const StatementBody& body) {
    if (const auto* s = std::get_if<StParamBind>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignBinop>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignUnop>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignFieldGet>(&body)) return &s->var;
    if (const auto* s = std::get_if<StAssignCall>(&body)) return &s->var;
    return nullptr;
}

/// Nearest definition of `var` above statement `before`, in source order.
void trace_var(const ExirMethod& method, int before, const std::string& var,
               std::string& pattern, int depth) {
    if (depth <= 0) {
        append(pattern, kWild);
        return;
    }
    for (int j = before - 1; j >= 0; --j) {
        const auto& body = method.statements[j].body;
        if (const auto* c = std::get_if<StAssignConst>(&body)) {
            if (c->var != var) continue;
            trace_operand(method, j, c->value, pattern, depth - 1);
            return;
        }
        if (const auto* s = std::get_if<StAssignStrcat>(&body)) {
            if (s->var != var) continue;
            for (const auto& p : s->parts) trace_operand(method, j, p, pattern, depth - 1);
            return;
        }
        const std::string* defined = opaque_def(body);
        if (defined && *defined == var) {
            append(pattern, kWild);
            return;
        }
    }
    append(pattern, kWild);  // no definition at all, value comes from outside
}

void trace_operand(const ExirMethod& method, int before, const Operand& op,
                   std::string& pattern, int depth) {
    switch (op.kind) {
        case Operand::Kind::Str:
            append(pattern, regex_escape(op.text));
            return;
        case Operand::Kind::Int:
            append(pattern, regex_escape(std::to_string(op.int_value)));
            return;
        case Operand::Kind::Bool:
            append(pattern, op.bool_value ? "true" : "false");
            return;
        case Operand::Kind::Null:
            append(pattern, "null");
            return;
        case Operand::Kind::Var:
            trace_var(method, before, op.text, pattern, depth);
            return;
    }
}

}  // namespace

std::string regex_escape(const std::string& raw) {
    static const std::string special = ".[]()*+?{}|^$\\";
    std::string out;
    for (char c : raw) {
        if (special.find(c) != std::string::npos) out += '\\';
        out += c;
    }
    return out;
}

std::string message_pattern(const ExirMethod& method, const ExirStatement& stmt) {
    const auto* thr = stmt.as<StThrow>();
    if (!thr) return "";
    const MessageExpr& msg = thr->message;
    std::string pattern;
    if (msg.is_format) {
        const std::string& f = msg.format;
        for (size_t i = 0; i < f.size(); ++i) {
            if (f[i] == '%' && i + 1 < f.size()) {
                if (f[i + 1] == '%') {
                    append(pattern, "%");
                } else {
                    append(pattern, kWild);
                }
                ++i;
                continue;
            }
            append(pattern, regex_escape(std::string(1, f[i])));
        }
        return pattern;
    }
    for (const auto& part : msg.parts)
        trace_operand(method, stmt.index, part, pattern, kTraceDepth);
    return pattern;
}

}  // namespace exlife
