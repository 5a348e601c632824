#include "exlife/matching.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace exlife {

namespace {

struct Normalized {
    std::string type;
    std::string message;
    std::string pre;  // folded precondition render
    std::string key;  // folded key precondition render
};

Normalized normalize(const ReportSummary& s) {
    return {s.type, s.message_pattern, dnf_fold_render(s.precondition),
            dnf_fold_render(s.key_precondition)};
}

int fields_differing(const Normalized& a, const Normalized& b) {
    return (a.type != b.type) + (a.message != b.message) + (a.pre != b.pre);
}

/// Deterministic order for zipping equal-key instances.
bool instance_less(const ReportSummary& a, const ReportSummary& b) {
    auto key = [](const ReportSummary& s) {
        return std::tie(s.origin_method, s.origin_stmt, s.call_chain);
    };
    if (key(a) != key(b)) return key(a) < key(b);
    return json_to_text(summary_to_json(a)) < json_to_text(summary_to_json(b));
}

/// The cascade: narrow by type, then message, then precondition. A filter
/// that would empty the pool is skipped, so the closest candidates survive.
std::vector<int> cascade(const Normalized& probe, const std::vector<Normalized>& all,
                         const std::vector<int>& pool) {
    std::vector<int> current = pool;
    auto narrow = [&](auto&& keep) {
        std::vector<int> next;
        for (int i : current)
            if (keep(all[i])) next.push_back(i);
        if (!next.empty()) current = std::move(next);
    };
    narrow([&](const Normalized& n) { return n.type == probe.type; });
    narrow([&](const Normalized& n) { return n.message == probe.message; });
    narrow([&](const Normalized& n) { return n.pre == probe.pre; });
    return current;
}

std::vector<int> rescue_candidates(const Normalized& probe, const std::vector<Normalized>& all,
                                   const std::vector<int>& pool) {
    std::vector<int> out;
    for (int i : pool) {
        const Normalized& n = all[i];
        if (n.type == probe.type && n.key == probe.key && n.message != probe.message &&
            n.pre != probe.pre)
            out.push_back(i);
    }
    return out;
}

void erase_index(std::vector<int>& pool, int value) {
    pool.erase(std::remove(pool.begin(), pool.end(), value), pool.end());
}

}  // namespace

MatchOutcome match_summaries(const std::vector<ReportSummary>& olds,
                             const std::vector<ReportSummary>& news) {
    MatchOutcome out;
    std::vector<Normalized> old_norm, new_norm;
    for (const auto& s : olds) old_norm.push_back(normalize(s));
    for (const auto& s : news) new_norm.push_back(normalize(s));

    std::vector<int> old_pool, new_pool;

    // Step 1: identical key triples pair by multiset, instances zipped in a
    // deterministic order.
    {
        std::map<std::tuple<std::string, std::string, std::string>,
                 std::pair<std::vector<int>, std::vector<int>>>
            buckets;
        for (size_t i = 0; i < olds.size(); ++i) {
            const auto& n = old_norm[i];
            buckets[{n.type, n.message, n.pre}].first.push_back(static_cast<int>(i));
        }
        for (size_t i = 0; i < news.size(); ++i) {
            const auto& n = new_norm[i];
            buckets[{n.type, n.message, n.pre}].second.push_back(static_cast<int>(i));
        }
        for (auto& [key, sides] : buckets) {
            auto& [o_side, n_side] = sides;
            std::sort(o_side.begin(), o_side.end(),
                      [&](int a, int b) { return instance_less(olds[a], olds[b]); });
            std::sort(n_side.begin(), n_side.end(),
                      [&](int a, int b) { return instance_less(news[a], news[b]); });
            const size_t zip = std::min(o_side.size(), n_side.size());
            for (size_t i = 0; i < zip; ++i)
                out.pairs.push_back({o_side[i], n_side[i], "R1"});
            for (size_t i = zip; i < o_side.size(); ++i) old_pool.push_back(o_side[i]);
            for (size_t i = zip; i < n_side.size(); ++i) new_pool.push_back(n_side[i]);
        }
        std::sort(old_pool.begin(), old_pool.end());
        std::sort(new_pool.begin(), new_pool.end());
    }

    // Rounds of step 2 (single-field cascade) and step 3 (key rescue) until
    // nothing new pairs.
    for (;;) {
        ++out.rounds;
        size_t paired_before = out.pairs.size();

        std::vector<MatchedPair> found;
        for (int o : old_pool) {
            std::vector<int> fwd = cascade(old_norm[o], new_norm, new_pool);
            if (fwd.size() != 1) continue;
            const int n = fwd[0];
            std::vector<int> bwd = cascade(new_norm[n], old_norm, old_pool);
            if (bwd.size() != 1 || bwd[0] != o) continue;
            const int diff = fields_differing(old_norm[o], new_norm[n]);
            if (diff != 1) continue;
            std::string rule = old_norm[o].type != new_norm[n].type      ? "R2"
                               : old_norm[o].message != new_norm[n].message ? "R3"
                                                                            : "R4";
            found.push_back({o, n, rule});
        }
        for (const auto& p : found) {
            out.pairs.push_back(p);
            erase_index(old_pool, p.old_index);
            erase_index(new_pool, p.new_index);
        }

        found.clear();
        for (int o : old_pool) {
            std::vector<int> fwd = rescue_candidates(old_norm[o], new_norm, new_pool);
            if (fwd.size() != 1) continue;
            const int n = fwd[0];
            std::vector<int> bwd = rescue_candidates(new_norm[n], old_norm, old_pool);
            if (bwd.size() != 1 || bwd[0] != o) continue;
            found.push_back({o, n, "R5"});
        }
        for (const auto& p : found) {
            out.pairs.push_back(p);
            erase_index(old_pool, p.old_index);
            erase_index(new_pool, p.new_index);
        }

        if (out.pairs.size() == paired_before) break;
    }

    out.removed = std::move(old_pool);
    out.added = std::move(new_pool);
    return out;
}

ChangeReport diff_reports(const SummaryReport& old_report, const SummaryReport& new_report) {
    if (old_report.mode != new_report.mode)
        throw std::runtime_error("cannot diff reports with different modes: " +
                                 old_report.mode + " vs " + new_report.mode);
    ChangeReport change;
    change.old_version = old_report.version;
    change.new_version = new_report.version;
    change.mode = old_report.mode;

    std::map<std::string, const ReportApi*> old_apis, new_apis;
    for (const auto& a : old_report.apis) old_apis[a.id.signature()] = &a;
    for (const auto& a : new_report.apis) new_apis[a.id.signature()] = &a;

    for (const auto& [sig, api] : old_apis) {
        (void)api;
        if (!new_apis.count(sig)) {
            ChangeEvent e;
            e.kind = "api-removed";
            e.api = sig;
            e.rule = "R8";
            change.events.push_back(std::move(e));
        }
    }
    for (const auto& [sig, api] : new_apis) {
        (void)api;
        if (!old_apis.count(sig)) {
            ChangeEvent e;
            e.kind = "api-added";
            e.api = sig;
            e.rule = "R8";
            change.events.push_back(std::move(e));
        }
    }

    for (const auto& [sig, old_api] : old_apis) {
        auto it = new_apis.find(sig);
        if (it == new_apis.end()) continue;
        const ReportApi* new_api = it->second;
        MatchOutcome m = match_summaries(old_api->summaries, new_api->summaries);
        for (const auto& p : m.pairs) {
            if (p.rule == "R1") continue;
            const ReportSummary& o = old_api->summaries[p.old_index];
            const ReportSummary& n = new_api->summaries[p.new_index];
            auto emit = [&](const std::string& kind) {
                ChangeEvent e;
                e.kind = kind;
                e.api = sig;
                e.rule = p.rule;
                e.old_summary = o;
                e.new_summary = n;
                change.events.push_back(std::move(e));
            };
            if (p.rule == "R2") emit("exception-type-changed");
            if (p.rule == "R3") emit("exception-message-changed");
            if (p.rule == "R4") emit("exception-precondition-changed");
            if (p.rule == "R5") {
                emit("exception-message-changed");
                emit("exception-precondition-changed");
            }
        }
        for (int idx : m.removed) {
            ChangeEvent e;
            e.kind = "exception-removed";
            e.api = sig;
            e.rule = "R6";
            e.old_summary = old_api->summaries[idx];
            change.events.push_back(std::move(e));
        }
        for (int idx : m.added) {
            ChangeEvent e;
            e.kind = "exception-added";
            e.api = sig;
            e.rule = "R7";
            e.new_summary = new_api->summaries[idx];
            change.events.push_back(std::move(e));
        }
    }
    sort_events(change.events);
    return change;
}

}  // namespace exlife
