/**
 * @file constraint.hpp
 * @brief Precondition formulas in disjunctive normal form.
 *
 * A precondition is a set of clauses (disjuncts); a clause is a set of
 * literals (conjuncts); a literal is an atom plus a polarity. TRUE is the
 * single empty clause, FALSE is the empty clause set. Canonicalization
 * sorts, deduplicates and drops internally contradictory clauses. It does
 * not absorb, fold constants, or reason about semantic equivalence: two
 * formulas are the same precondition only when their canonical forms agree
 * literal for literal.
 *
 * The only semantic identification applied anywhere is relop folding, and
 * only where normalization is explicitly wanted (contradiction detection
 * and match keys): a negated comparison equals the complemented positive
 * one, e.g. not(a == b) folds to a != b.
 *
 * The template is shared by two literal types: tree-backed literals during
 * extraction (substitution needs structure) and plain text literals when
 * reports are loaded back for diffing.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace exlife {

/// Literal over an opaque atom string. The atom never encodes polarity.
struct TextLit {
    std::string atom;
    bool positive = true;

    const std::string& text() const { return atom; }
    TextLit negated() const { return {atom, !positive}; }
    bool operator==(const TextLit&) const = default;
};

template <typename L>
bool lit_less(const L& a, const L& b) {
    if (a.text() != b.text()) return a.text() < b.text();
    return a.positive < b.positive;
}

template <typename L>
bool lit_eq(const L& a, const L& b) {
    return a.text() == b.text() && a.positive == b.positive;
}

/// Locates the relational operator of an atom, if the atom is a top-level
/// comparison. Paren depth and string literals (with escapes) are respected;
/// rendering guarantees at most one top-level operator.
inline std::optional<std::pair<size_t, std::string>> find_top_relop(const std::string& s) {
    int depth = 0;
    bool in_str = false;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (in_str) {
            if (c == '\\') ++i;
            else if (c == '"') in_str = false;
            continue;
        }
        if (c == '"') { in_str = true; continue; }
        if (c == '(') { ++depth; continue; }
        if (c == ')') { --depth; continue; }
        if (depth != 0) continue;
        if (i + 1 < s.size()) {
            std::string two = s.substr(i, 2);
            if (two == "==" || two == "!=" || two == "<=" || two == ">=")
                return {{i, two}};
        }
        if (c == '<' || c == '>') return {{i, std::string(1, c)}};
    }
    return std::nullopt;
}

inline std::string complement_relop(const std::string& op) {
    if (op == "==") return "!=";
    if (op == "!=") return "==";
    if (op == "<") return ">=";
    if (op == "<=") return ">";
    if (op == ">") return "<=";
    if (op == ">=") return "<";
    return op;
}

/// Key used for contradiction detection and matching. A negative literal
/// whose atom is a comparison becomes the complemented positive literal;
/// anything else is kept as is.
inline std::pair<std::string, bool> fold_literal(const std::string& text, bool positive) {
    if (positive) return {text, true};
    if (auto hit = find_top_relop(text)) {
        auto [pos, op] = *hit;
        return {text.substr(0, pos) + complement_relop(op) + text.substr(pos + op.size()), true};
    }
    return {text, false};
}

template <typename L>
std::pair<std::string, bool> fold_key(const L& lit) {
    return fold_literal(lit.text(), lit.positive);
}

template <typename L>
struct Dnf {
    using Clause = std::vector<L>;
    std::vector<Clause> clauses;
    bool truncated = false;
    bool clause_limit_hit = false;

    static Dnf make_true() { return {{Clause{}}, false, false}; }
    static Dnf make_false() { return {{}, false, false}; }

    bool is_true() const {
        return std::any_of(clauses.begin(), clauses.end(),
                           [](const Clause& c) { return c.empty(); });
    }
    bool is_false() const { return clauses.empty(); }

    bool operator==(const Dnf&) const = default;
};

constexpr int kDefaultClauseLimit = 16;

template <typename L>
bool clause_contradictory(const std::vector<L>& clause) {
    std::vector<std::pair<std::string, bool>> keys;
    keys.reserve(clause.size());
    for (const auto& l : clause) keys.push_back(fold_key(l));
    for (const auto& l : clause) {
        auto neg = fold_key(l.negated());
        if (std::find(keys.begin(), keys.end(), neg) != keys.end()) return true;
    }
    return false;
}

/// Sorts and dedups literals and clauses, then drops contradictory clauses.
/// Returns how many clauses were dropped. Any surviving empty clause makes
/// the whole formula TRUE.
template <typename L>
int dnf_canonicalize(Dnf<L>& d) {
    int dropped = 0;
    std::vector<typename Dnf<L>::Clause> kept;
    for (auto& clause : d.clauses) {
        std::sort(clause.begin(), clause.end(), lit_less<L>);
        clause.erase(std::unique(clause.begin(), clause.end(), lit_eq<L>), clause.end());
        if (clause_contradictory(clause)) {
            ++dropped;
            continue;
        }
        kept.push_back(std::move(clause));
    }
    for (const auto& c : kept) {
        if (c.empty()) {
            d.clauses = {{}};
            return dropped;
        }
    }
    auto clause_less = [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            lit_less<L>);
    };
    auto clause_eq = [](const auto& a, const auto& b) {
        return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), lit_eq<L>);
    };
    std::sort(kept.begin(), kept.end(), clause_less);
    kept.erase(std::unique(kept.begin(), kept.end(), clause_eq), kept.end());
    d.clauses = std::move(kept);
    return dropped;
}

template <typename L>
Dnf<L> dnf_conjoin(const Dnf<L>& a, const Dnf<L>& b, int& dropped) {
    Dnf<L> out;
    out.truncated = a.truncated || b.truncated;
    out.clause_limit_hit = a.clause_limit_hit || b.clause_limit_hit;
    for (const auto& ca : a.clauses) {
        for (const auto& cb : b.clauses) {
            auto merged = ca;
            merged.insert(merged.end(), cb.begin(), cb.end());
            out.clauses.push_back(std::move(merged));
        }
    }
    dropped += dnf_canonicalize(out);
    return out;
}

template <typename L>
Dnf<L> dnf_disjoin(const Dnf<L>& a, const Dnf<L>& b, int& dropped) {
    Dnf<L> out;
    out.truncated = a.truncated || b.truncated;
    out.clause_limit_hit = a.clause_limit_hit || b.clause_limit_hit;
    out.clauses = a.clauses;
    out.clauses.insert(out.clauses.end(), b.clauses.begin(), b.clauses.end());
    dropped += dnf_canonicalize(out);
    return out;
}

/// De Morgan negation. When the raw distribution would exceed clause_limit
/// clauses the result degrades to TRUE and records the loss of precision.
template <typename L>
Dnf<L> dnf_negate(const Dnf<L>& d, int clause_limit, int& dropped) {
    long long raw = 1;
    for (const auto& c : d.clauses) {
        raw *= static_cast<long long>(c.size());
        if (raw > clause_limit) {
            Dnf<L> out = Dnf<L>::make_true();
            out.truncated = d.truncated;
            out.clause_limit_hit = true;
            return out;
        }
    }
    Dnf<L> out = Dnf<L>::make_true();
    out.truncated = d.truncated;
    out.clause_limit_hit = d.clause_limit_hit;
    for (const auto& clause : d.clauses) {
        Dnf<L> alts = Dnf<L>::make_false();
        for (const auto& lit : clause) alts.clauses.push_back({lit.negated()});
        out = dnf_conjoin(out, alts, dropped);
    }
    return out;
}

// Counter-free conveniences for callers that do not track drop statistics.
template <typename L>
Dnf<L> dnf_conjoin(const Dnf<L>& a, const Dnf<L>& b) {
    int n = 0;
    return dnf_conjoin(a, b, n);
}
template <typename L>
Dnf<L> dnf_disjoin(const Dnf<L>& a, const Dnf<L>& b) {
    int n = 0;
    return dnf_disjoin(a, b, n);
}
template <typename L>
Dnf<L> dnf_negate(const Dnf<L>& d, int clause_limit = kDefaultClauseLimit) {
    int n = 0;
    return dnf_negate(d, clause_limit, n);
}

template <typename L>
std::string render_clause(const std::vector<L>& clause) {
    std::string out;
    for (size_t i = 0; i < clause.size(); ++i) {
        if (i) out += " && ";
        if (!clause[i].positive) out += "!";
        out += clause[i].text();
    }
    return out;
}

/// Raw-polarity rendering: TRUE and FALSE by name, otherwise parenthesized
/// clauses joined with ||.
template <typename L>
std::string dnf_render(const Dnf<L>& d) {
    if (d.is_false()) return "false";
    if (d.is_true()) return "true";
    std::string out;
    for (size_t i = 0; i < d.clauses.size(); ++i) {
        if (i) out += " || ";
        out += "(" + render_clause(d.clauses[i]) + ")";
    }
    return out;
}

/// Folded rendering: the normalized form used as a match key. Two formulas
/// that differ only by relop folding render identically here.
template <typename L>
std::string dnf_fold_render(const Dnf<L>& d) {
    if (d.is_false()) return "false";
    if (d.is_true()) return "true";
    std::vector<std::string> clause_texts;
    for (const auto& clause : d.clauses) {
        std::vector<TextLit> folded;
        for (const auto& lit : clause) {
            auto [text, pos] = fold_key(lit);
            folded.push_back({std::move(text), pos});
        }
        std::sort(folded.begin(), folded.end(), lit_less<TextLit>);
        folded.erase(std::unique(folded.begin(), folded.end()), folded.end());
        clause_texts.push_back("(" + render_clause(folded) + ")");
    }
    std::sort(clause_texts.begin(), clause_texts.end());
    clause_texts.erase(std::unique(clause_texts.begin(), clause_texts.end()),
                       clause_texts.end());
    std::string out;
    for (size_t i = 0; i < clause_texts.size(); ++i) {
        if (i) out += " || ";
        out += clause_texts[i];
    }
    return out;
}

using TextDnf = Dnf<TextLit>;

}  // namespace exlife
