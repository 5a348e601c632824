/**
 * @file matching.hpp
 * @brief Pairing of exception summaries across two adjacent versions.
 *
 * Identical summaries pair first, by multiset on the normalized key
 * (type, message pattern, folded precondition). The rest run through
 * rounds of two steps until a fixpoint: a filter cascade that pairs
 * summaries differing in exactly one key field, then a rescue step that
 * pairs same-type summaries whose folded key preconditions agree even
 * though message and precondition both moved. Every non-identity pairing
 * requires the candidate to be unique in both directions, which keeps the
 * outcome symmetric. Whatever remains was removed or added.
 */
#pragma once

#include "exlife/report.hpp"

namespace exlife {

struct MatchedPair {
    int old_index = 0;
    int new_index = 0;
    std::string rule;  // R1 identical, R2 type, R3 message, R4 precondition, R5 rescue
};

struct MatchOutcome {
    std::vector<MatchedPair> pairs;
    std::vector<int> removed;  // unmatched old indices
    std::vector<int> added;    // unmatched new indices
    int rounds = 0;            // fixpoint iterations, including the final empty one
};

MatchOutcome match_summaries(const std::vector<ReportSummary>& olds,
                             const std::vector<ReportSummary>& news);

/// Full cross-version diff: APIs matched by signature, their summaries by
/// match_summaries. Throws std::runtime_error when modes differ.
ChangeReport diff_reports(const SummaryReport& old_report, const SummaryReport& new_report);

}  // namespace exlife
