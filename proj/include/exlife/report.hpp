/**
 * @file report.hpp
 * @brief Serialized summary and change reports.
 *
 * Reports are the stable interface between stages: extraction writes them,
 * diffing and lifecycle building read them back. Serialization is fully
 * deterministic (fixed key order, sorted collections, two-space indent, one
 * trailing newline) so byte equality is meaningful.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "exlife/constraint.hpp"
#include "exlife/summary.hpp"

namespace exlife {

using json = nlohmann::ordered_json;

struct ReportSummary {
    std::string type;
    std::string message_pattern;
    TextDnf precondition;
    TextDnf key_precondition;
    std::string origin_method;
    int origin_stmt = 0;
    std::vector<std::string> call_chain;
    std::vector<std::string> flags;  // sorted

    bool operator==(const ReportSummary&) const = default;
};

struct ReportApi {
    MethodId id;
    std::vector<ReportSummary> summaries;  // sorted, duplicates preserved
    bool operator==(const ReportApi&) const = default;
};

struct SummaryReport {
    std::string version;
    std::string mode;  // "intra" or "inter"
    int infeasible_clauses_dropped = 0;
    std::vector<ReportApi> apis;  // sorted by signature
    bool operator==(const SummaryReport&) const = default;
};

// Change event kinds, in canonical order.
extern const std::vector<std::string> kEventKinds;

struct ChangeEvent {
    std::string kind;
    std::string api;   // signature of the affected API
    std::string rule;  // matching rule that produced the event
    std::optional<ReportSummary> old_summary;
    std::optional<ReportSummary> new_summary;
    bool operator==(const ChangeEvent&) const = default;
};

struct ChangeReport {
    std::string old_version;
    std::string new_version;
    std::string mode;
    std::vector<ChangeEvent> events;  // sorted
    bool operator==(const ChangeReport&) const = default;
};

/// Collapses a tree-backed extraction into its serialized form. Only public
/// methods become APIs; private helpers were already folded into them.
SummaryReport build_report(const ExirProgram& program, const ExtractionResult& extraction,
                           const ExtractOptions& options);

void sort_events(std::vector<ChangeEvent>& events);

json summary_to_json(const ReportSummary& s);
ReportSummary summary_from_json(const json& j);

json report_to_json(const SummaryReport& r);
SummaryReport report_from_json(const json& j);

json change_event_to_json(const ChangeEvent& e);
json change_to_json(const ChangeReport& r);
ChangeReport change_from_json(const json& j);

/// dump(2) plus a trailing newline; the one true output format.
std::string json_to_text(const json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace exlife
