/**
 * @file lifecycle.hpp
 * @brief Exception-aware API lifecycle models over a version sequence.
 *
 * The model threads each exception summary through consecutive versions: a
 * lineage starts when its summary first appears, accumulates field-change
 * events (type, message, precondition) as diffs rewrite it, and closes when
 * the summary or its whole API disappears. A re-added summary starts a new
 * lineage; nothing resurrects. Replaying a lineage's events over its
 * introduced form reproduces the summary's normalized shape at every
 * version it lived through.
 */
#pragma once

#include <optional>

#include "exlife/matching.hpp"

namespace exlife {

struct LineageEvent {
    std::string version;    // version in which the new shape first holds
    std::string kind;       // "type", "message" or "precondition"
    std::string old_value;  // folded fragments, exact for replay
    std::string new_value;
    bool operator==(const LineageEvent&) const = default;
};

struct Lineage {
    std::string lineage_id;  // stable content hash
    std::string introduced;
    std::optional<std::string> removed;
    std::string origin_method;
    int origin_stmt = 0;
    std::vector<std::string> call_chain;
    // Normalized introduced shape: type, message, folded precondition.
    std::string type;
    std::string message_pattern;
    std::string precondition;
    std::vector<LineageEvent> events;
    bool operator==(const Lineage&) const = default;
};

struct ApiInterval {
    std::string introduced;
    std::optional<std::string> removed;  // absent while the API is live
    bool operator==(const ApiInterval&) const = default;
};

struct ApiModel {
    std::string signature;
    std::vector<ApiInterval> intervals;
    std::vector<Lineage> exceptions;
    bool operator==(const ApiModel&) const = default;
};

struct LifecycleModel {
    std::string mode;
    std::vector<std::string> versions;
    std::vector<ApiModel> apis;  // sorted by signature
    bool operator==(const LifecycleModel&) const = default;
};

/// Builds the model from per-version summary reports plus the diffs between
/// adjacent pairs. The inputs must agree on versions and mode; a mismatch
/// throws std::runtime_error.
LifecycleModel build_lifecycle(const std::vector<SummaryReport>& summaries,
                               const std::vector<ChangeReport>& changes);

struct Statistics {
    std::string mode;
    int versions = 0;
    int api_count = 0;
    int apis_with_exception_changes = 0;
    double apis_with_exception_changes_fraction = 0.0;
    int events_total = 0;                      // all seven kinds
    std::vector<std::pair<std::string, int>> events_by_kind;
    int events_independent = 0;                // exception events, origin-deduplicated
    int duplicated_propagations = 0;
    int lineages_total = 0;
    int lineages_independent = 0;
};

Statistics compute_statistics(const LifecycleModel& model,
                              const std::vector<ChangeReport>& changes);

json lifecycle_to_json(const LifecycleModel& model);
json statistics_to_json(const Statistics& stats);

/// Plain-text rendering for people; same content, fixed layout.
std::string render_lifecycle_text(const LifecycleModel& model);

std::string fnv1a_hex(const std::string& data);

}  // namespace exlife
