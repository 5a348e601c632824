#include "exlife/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exlife {

const std::vector<std::string> kEventKinds = {
    "api-added",
    "api-removed",
    "exception-added",
    "exception-removed",
    "exception-type-changed",
    "exception-message-changed",
    "exception-precondition-changed",
};

namespace {

int kind_rank(const std::string& kind) {
    for (size_t i = 0; i < kEventKinds.size(); ++i)
        if (kEventKinds[i] == kind) return static_cast<int>(i);
    return static_cast<int>(kEventKinds.size());
}

TextDnf to_text_dnf(const TreeDnf& d) {
    TextDnf out;
    out.truncated = d.truncated;
    out.clause_limit_hit = d.clause_limit_hit;
    for (const auto& clause : d.clauses) {
        std::vector<TextLit> c;
        c.reserve(clause.size());
        for (const auto& lit : clause) c.push_back({lit.rendered, lit.positive});
        out.clauses.push_back(std::move(c));
    }
    return out;
}

std::vector<std::string> summary_flags(const ThrowSummary& s) {
    std::vector<std::string> flags;
    if (s.imprecise) flags.push_back("imprecise");
    if (s.precondition.is_false() && !s.unreachable) flags.push_back("infeasible");
    if (s.recursive_approx) flags.push_back("recursive-approx");
    if (s.precondition.truncated || s.key_precondition.truncated)
        flags.push_back("truncated");
    if (s.precondition.is_true()) flags.push_back("unconditional");
    if (s.unreachable) flags.push_back("unreachable");
    std::sort(flags.begin(), flags.end());
    return flags;
}

bool summary_less(const ReportSummary& a, const ReportSummary& b) {
    auto key = [](const ReportSummary& s) {
        return std::make_tuple(s.type, s.message_pattern, dnf_render(s.precondition),
                               dnf_render(s.key_precondition), s.origin_method,
                               s.origin_stmt, s.call_chain, s.flags);
    };
    return key(a) < key(b);
}

json dnf_to_json(const TextDnf& d) {
    json clauses = json::array();
    for (const auto& clause : d.clauses) {
        json c = json::array();
        for (const auto& lit : clause)
            c.push_back({{"atom", lit.atom}, {"positive", lit.positive}});
        clauses.push_back(std::move(c));
    }
    return {{"clauses", std::move(clauses)},
            {"truncated", d.truncated},
            {"clause_limit_hit", d.clause_limit_hit}};
}

TextDnf dnf_from_json(const json& j) {
    TextDnf d;
    for (const auto& clause : j.at("clauses")) {
        std::vector<TextLit> c;
        for (const auto& lit : clause)
            c.push_back({lit.at("atom").get<std::string>(), lit.at("positive").get<bool>()});
        d.clauses.push_back(std::move(c));
    }
    d.truncated = j.at("truncated").get<bool>();
    d.clause_limit_hit = j.at("clause_limit_hit").get<bool>();
    return d;
}

}  // namespace

SummaryReport build_report(const ExirProgram& program, const ExtractionResult& extraction,
                           const ExtractOptions& options) {
    SummaryReport report;
    report.version = program.version_label;
    report.mode = mode_name(options.mode);
    report.infeasible_clauses_dropped = extraction.infeasible_clauses_dropped;

    for (size_t mi = 0; mi < program.methods.size(); ++mi) {
        const auto& method = program.methods[mi];
        if (method.is_private) continue;
        ReportApi api;
        api.id = method.id;
        for (const auto& s : extraction.per_method[mi]) {
            ReportSummary rs;
            rs.type = s.exception_type;
            rs.message_pattern = s.message_pattern;
            rs.precondition = to_text_dnf(s.precondition);
            rs.key_precondition = to_text_dnf(s.key_precondition);
            rs.origin_method = s.origin_method;
            rs.origin_stmt = s.origin_stmt;
            rs.call_chain = s.call_chain;
            rs.flags = summary_flags(s);
            api.summaries.push_back(std::move(rs));
        }
        std::sort(api.summaries.begin(), api.summaries.end(), summary_less);
        report.apis.push_back(std::move(api));
    }
    std::sort(report.apis.begin(), report.apis.end(),
              [](const ReportApi& a, const ReportApi& b) {
                  return a.id.signature() < b.id.signature();
              });
    return report;
}

void sort_events(std::vector<ChangeEvent>& events) {
    auto origin_of = [](const ChangeEvent& e) {
        const ReportSummary* s =
            e.old_summary ? &*e.old_summary : (e.new_summary ? &*e.new_summary : nullptr);
        return s ? std::make_pair(s->origin_method, s->origin_stmt)
                 : std::make_pair(std::string(), 0);
    };
    std::sort(events.begin(), events.end(),
              [&](const ChangeEvent& a, const ChangeEvent& b) {
                  if (a.api != b.api) return a.api < b.api;
                  auto oa = origin_of(a), ob = origin_of(b);
                  if (oa != ob) return oa < ob;
                  int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
                  if (ra != rb) return ra < rb;
                  return json_to_text(change_event_to_json(a)) <
                         json_to_text(change_event_to_json(b));
              });
}

json summary_to_json(const ReportSummary& s) {
    return {{"type", s.type},
            {"message_pattern", s.message_pattern},
            {"precondition", dnf_to_json(s.precondition)},
            {"key_precondition", dnf_to_json(s.key_precondition)},
            {"origin", {{"method", s.origin_method}, {"stmt", s.origin_stmt}}},
            {"call_chain", s.call_chain},
            {"flags", s.flags}};
}

ReportSummary summary_from_json(const json& j) {
    ReportSummary s;
    s.type = j.at("type").get<std::string>();
    s.message_pattern = j.at("message_pattern").get<std::string>();
    s.precondition = dnf_from_json(j.at("precondition"));
    s.key_precondition = dnf_from_json(j.at("key_precondition"));
    s.origin_method = j.at("origin").at("method").get<std::string>();
    s.origin_stmt = j.at("origin").at("stmt").get<int>();
    s.call_chain = j.at("call_chain").get<std::vector<std::string>>();
    s.flags = j.at("flags").get<std::vector<std::string>>();
    return s;
}

json report_to_json(const SummaryReport& r) {
    json apis = json::array();
    for (const auto& api : r.apis) {
        json summaries = json::array();
        for (const auto& s : api.summaries) summaries.push_back(summary_to_json(s));
        apis.push_back({{"id",
                         {{"class", api.id.class_name},
                          {"name", api.id.name},
                          {"params", api.id.params}}},
                        {"summaries", std::move(summaries)}});
    }
    return {{"version", r.version},
            {"mode", r.mode},
            {"infeasible_clauses_dropped", r.infeasible_clauses_dropped},
            {"apis", std::move(apis)}};
}

SummaryReport report_from_json(const json& j) {
    SummaryReport r;
    r.version = j.at("version").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.infeasible_clauses_dropped = j.at("infeasible_clauses_dropped").get<int>();
    for (const auto& a : j.at("apis")) {
        ReportApi api;
        api.id.class_name = a.at("id").at("class").get<std::string>();
        api.id.name = a.at("id").at("name").get<std::string>();
        api.id.params = a.at("id").at("params").get<std::vector<std::string>>();
        for (const auto& s : a.at("summaries")) api.summaries.push_back(summary_from_json(s));
        r.apis.push_back(std::move(api));
    }
    return r;
}

json change_event_to_json(const ChangeEvent& e) {
    json j = {{"kind", e.kind}, {"api", e.api}, {"rule", e.rule}};
    if (e.old_summary) j["old"] = summary_to_json(*e.old_summary);
    if (e.new_summary) j["new"] = summary_to_json(*e.new_summary);
    return j;
}

json change_to_json(const ChangeReport& r) {
    json events = json::array();
    for (const auto& e : r.events) events.push_back(change_event_to_json(e));
    return {{"old_version", r.old_version},
            {"new_version", r.new_version},
            {"mode", r.mode},
            {"events", std::move(events)}};
}

ChangeReport change_from_json(const json& j) {
    ChangeReport r;
    r.old_version = j.at("old_version").get<std::string>();
    r.new_version = j.at("new_version").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    for (const auto& e : j.at("events")) {
        ChangeEvent ev;
        ev.kind = e.at("kind").get<std::string>();
        ev.api = e.at("api").get<std::string>();
        ev.rule = e.at("rule").get<std::string>();
        if (e.contains("old")) ev.old_summary = summary_from_json(e.at("old"));
        if (e.contains("new")) ev.new_summary = summary_from_json(e.at("new"));
        r.events.push_back(std::move(ev));
    }
    return r;
}

std::string json_to_text(const json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace exlife
