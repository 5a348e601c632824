#include "exlife/lifecycle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "exlife/matching.hpp"

namespace exlife {

namespace {

struct ActiveLineage {
    Lineage data;
    int index;  // position in the current version's summary list
};

std::string chain_text(const std::vector<std::string>& chain) {
    std::string out;
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i) out += " -> ";
        out += chain[i];
    }
    return out;
}

class LineageBuilder {
public:
    LineageBuilder(const std::string& api_sig) : api_(api_sig) {}

    void open(const std::string& version, const ReportSummary& s, int index) {
        ActiveLineage a;
        a.data.introduced = version;
        a.data.origin_method = s.origin_method;
        a.data.origin_stmt = s.origin_stmt;
        a.data.call_chain = s.call_chain;
        a.data.type = s.type;
        a.data.message_pattern = s.message_pattern;
        a.data.precondition = dnf_fold_render(s.precondition);
        std::string seed = api_ + "\x1f" + version + "\x1f" + s.origin_method + "\x1f" +
                           std::to_string(s.origin_stmt) + "\x1f" + chain_text(s.call_chain);
        int ordinal = ordinals_[seed]++;
        a.data.lineage_id = fnv1a_hex(seed + "\x1f" + std::to_string(ordinal));
        a.index = index;
        active_.push_back(std::move(a));
    }

    void open_all(const std::string& version, const std::vector<ReportSummary>& summaries) {
        for (size_t i = 0; i < summaries.size(); ++i)
            open(version, summaries[i], static_cast<int>(i));
    }

    void close_all(const std::string& version) {
        for (auto& a : active_) {
            a.data.removed = version;
            done_.push_back(std::move(a.data));
        }
        active_.clear();
    }

    /// Advances the active lineages across one version pair. Identity is the
    /// summary pairing itself, re-derived from the two reports, so lineages
    /// survive refactors that move an origin without changing the summary
    /// triple (an R1 pair with no event). The change report must contain
    /// exactly the events the pairing implies; anything missing or left over
    /// means it was not produced from these summaries.
    void step(const std::string& new_version, const std::vector<ReportSummary>& olds,
              const std::vector<ReportSummary>& news,
              const std::vector<const ChangeEvent*>& events) {
        const MatchOutcome outcome = match_summaries(olds, news);
        std::vector<int> pair_of(olds.size(), -1);
        for (const auto& p : outcome.pairs) pair_of[p.old_index] = p.new_index;
        std::vector<bool> consumed(events.size(), false);

        auto take = [&](const std::string& kind, const ReportSummary* olde,
                        const ReportSummary* newe) {
            for (size_t i = 0; i < events.size(); ++i) {
                if (consumed[i] || events[i]->kind != kind) continue;
                if (olde && (!events[i]->old_summary || !(*events[i]->old_summary == *olde)))
                    continue;
                if (newe && (!events[i]->new_summary || !(*events[i]->new_summary == *newe)))
                    continue;
                consumed[i] = true;
                return;
            }
            throw std::runtime_error("change report does not line up with summaries for " +
                                     api_ + " (missing " + kind + " event)");
        };

        for (auto it = active_.begin(); it != active_.end();) {
            ActiveLineage& a = *it;
            const ReportSummary& olde = olds[static_cast<size_t>(a.index)];
            const int ni = pair_of[static_cast<size_t>(a.index)];
            if (ni < 0) {
                take("exception-removed", &olde, nullptr);
                a.data.removed = new_version;
                done_.push_back(std::move(a.data));
                it = active_.erase(it);
                continue;
            }
            const ReportSummary& newe = news[static_cast<size_t>(ni)];
            if (olde.type != newe.type) {
                take("exception-type-changed", &olde, &newe);
                a.data.events.push_back({new_version, "type", olde.type, newe.type});
            }
            if (olde.message_pattern != newe.message_pattern) {
                take("exception-message-changed", &olde, &newe);
                a.data.events.push_back(
                    {new_version, "message", olde.message_pattern, newe.message_pattern});
            }
            const std::string old_pre = dnf_fold_render(olde.precondition);
            const std::string new_pre = dnf_fold_render(newe.precondition);
            if (old_pre != new_pre) {
                take("exception-precondition-changed", &olde, &newe);
                a.data.events.push_back({new_version, "precondition", old_pre, new_pre});
            }
            a.index = ni;
            ++it;
        }
        for (int ni : outcome.added) {
            const ReportSummary& newe = news[static_cast<size_t>(ni)];
            take("exception-added", nullptr, &newe);
            open(new_version, newe, ni);
        }
        for (size_t i = 0; i < events.size(); ++i)
            if (!consumed[i])
                throw std::runtime_error("change report does not line up with summaries for " +
                                         api_ + " (stale " + events[i]->kind + " event)");
    }

    std::vector<Lineage> finish() {
        std::vector<Lineage> all = std::move(done_);
        for (auto& a : active_) all.push_back(std::move(a.data));
        active_.clear();
        std::sort(all.begin(), all.end(), [](const Lineage& x, const Lineage& y) {
            auto key = [](const Lineage& l) {
                return std::tie(l.introduced, l.origin_method, l.origin_stmt, l.call_chain,
                                l.type, l.message_pattern, l.precondition, l.lineage_id);
            };
            return key(x) < key(y);
        });
        return all;
    }

private:
    std::string api_;
    std::vector<ActiveLineage> active_;
    std::vector<Lineage> done_;
    std::map<std::string, int> ordinals_;
};

const ReportApi* find_api(const SummaryReport& r, const std::string& sig) {
    for (const auto& a : r.apis)
        if (a.id.signature() == sig) return &a;
    return nullptr;
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

LifecycleModel build_lifecycle(const std::vector<SummaryReport>& summaries,
                               const std::vector<ChangeReport>& changes) {
    if (summaries.empty()) throw std::runtime_error("lifecycle needs at least one version");
    if (changes.size() + 1 != summaries.size())
        throw std::runtime_error("expected one change report per adjacent version pair");
    for (size_t i = 0; i < changes.size(); ++i) {
        if (changes[i].old_version != summaries[i].version ||
            changes[i].new_version != summaries[i + 1].version)
            throw std::runtime_error("change report versions do not line up with summaries");
        if (changes[i].mode != summaries[i].mode)
            throw std::runtime_error("change report mode does not match summaries");
    }
    for (size_t i = 1; i < summaries.size(); ++i)
        if (summaries[i].mode != summaries[0].mode)
            throw std::runtime_error("summary reports mix modes");

    LifecycleModel model;
    model.mode = summaries[0].mode;
    for (const auto& r : summaries) model.versions.push_back(r.version);

    std::set<std::string> signatures;
    for (const auto& r : summaries)
        for (const auto& a : r.apis) signatures.insert(a.id.signature());

    for (const std::string& sig : signatures) {
        ApiModel api;
        api.signature = sig;

        std::vector<const ReportApi*> present(summaries.size());
        for (size_t v = 0; v < summaries.size(); ++v) present[v] = find_api(summaries[v], sig);

        for (size_t v = 0; v < summaries.size(); ++v) {
            if (!present[v]) continue;
            if (v == 0 || !present[v - 1]) {
                ApiInterval interval;
                interval.introduced = model.versions[v];
                size_t end = v;
                while (end + 1 < summaries.size() && present[end + 1]) ++end;
                if (end + 1 < summaries.size()) interval.removed = model.versions[end + 1];
                api.intervals.push_back(std::move(interval));
            }
        }

        LineageBuilder builder(sig);
        if (present[0]) builder.open_all(model.versions[0], present[0]->summaries);
        for (size_t i = 0; i < changes.size(); ++i) {
            const std::string& next_version = model.versions[i + 1];
            if (present[i] && !present[i + 1]) {
                builder.close_all(next_version);
                continue;
            }
            if (!present[i] && present[i + 1]) {
                builder.open_all(next_version, present[i + 1]->summaries);
                continue;
            }
            if (!present[i] && !present[i + 1]) continue;
            std::vector<const ChangeEvent*> events;
            for (const auto& e : changes[i].events)
                if (e.api == sig && e.kind != "api-added" && e.kind != "api-removed")
                    events.push_back(&e);
            builder.step(next_version, present[i]->summaries, present[i + 1]->summaries, events);
        }
        api.exceptions = builder.finish();
        model.apis.push_back(std::move(api));
    }
    return model;
}

Statistics compute_statistics(const LifecycleModel& model,
                              const std::vector<ChangeReport>& changes) {
    Statistics stats;
    stats.mode = model.mode;
    stats.versions = static_cast<int>(model.versions.size());
    stats.api_count = static_cast<int>(model.apis.size());

    std::map<std::string, int> by_kind;
    for (const auto& k : kEventKinds) by_kind[k] = 0;
    std::set<std::string> apis_changed;
    std::set<std::string> independent;
    int exception_events = 0;

    for (const auto& report : changes) {
        for (const auto& e : report.events) {
            ++stats.events_total;
            ++by_kind[e.kind];
            if (e.kind == "api-added" || e.kind == "api-removed") continue;
            ++exception_events;
            apis_changed.insert(e.api);
            auto origin = [](const std::optional<ReportSummary>& s) {
                return s ? s->origin_method + "#" + std::to_string(s->origin_stmt)
                         : std::string("-");
            };
            independent.insert(e.kind + "\x1f" + report.new_version + "\x1f" +
                               origin(e.old_summary) + "\x1f" + origin(e.new_summary));
        }
    }
    for (const auto& k : kEventKinds) stats.events_by_kind.emplace_back(k, by_kind[k]);
    stats.apis_with_exception_changes = static_cast<int>(apis_changed.size());
    stats.apis_with_exception_changes_fraction =
        stats.api_count ? static_cast<double>(stats.apis_with_exception_changes) /
                              static_cast<double>(stats.api_count)
                        : 0.0;
    stats.events_independent = static_cast<int>(independent.size());
    stats.duplicated_propagations = exception_events - stats.events_independent;

    std::set<std::string> lineage_keys;
    for (const auto& api : model.apis) {
        stats.lineages_total += static_cast<int>(api.exceptions.size());
        for (const auto& l : api.exceptions)
            lineage_keys.insert(l.introduced + "\x1f" + l.origin_method + "\x1f" +
                                std::to_string(l.origin_stmt));
    }
    stats.lineages_independent = static_cast<int>(lineage_keys.size());
    return stats;
}

json lifecycle_to_json(const LifecycleModel& model) {
    json apis = json::array();
    for (const auto& api : model.apis) {
        json intervals = json::array();
        for (const auto& iv : api.intervals) {
            json j = {{"introduced", iv.introduced}};
            j["removed"] = iv.removed ? json(*iv.removed) : json(nullptr);
            intervals.push_back(std::move(j));
        }
        json exceptions = json::array();
        for (const auto& l : api.exceptions) {
            json events = json::array();
            for (const auto& e : l.events)
                events.push_back({{"version", e.version},
                                  {"kind", e.kind},
                                  {"old", e.old_value},
                                  {"new", e.new_value}});
            json lj = {{"lineage_id", l.lineage_id}, {"introduced", l.introduced}};
            lj["removed"] = l.removed ? json(*l.removed) : json(nullptr);
            lj["origin"] = {{"method", l.origin_method}, {"stmt", l.origin_stmt}};
            lj["call_chain"] = l.call_chain;
            lj["introduced_summary"] = {{"type", l.type},
                                        {"message_pattern", l.message_pattern},
                                        {"precondition", l.precondition}};
            lj["events"] = std::move(events);
            exceptions.push_back(std::move(lj));
        }
        apis.push_back({{"signature", api.signature},
                        {"intervals", std::move(intervals)},
                        {"exceptions", std::move(exceptions)}});
    }
    return {{"mode", model.mode}, {"versions", model.versions}, {"apis", std::move(apis)}};
}

json statistics_to_json(const Statistics& stats) {
    json kinds;
    for (const auto& [k, n] : stats.events_by_kind) kinds[k] = n;
    return {{"mode", stats.mode},
            {"versions", stats.versions},
            {"api_count", stats.api_count},
            {"apis_with_exception_changes", stats.apis_with_exception_changes},
            {"apis_with_exception_changes_fraction", stats.apis_with_exception_changes_fraction},
            {"events_total", stats.events_total},
            {"events_by_kind", std::move(kinds)},
            {"events_independent", stats.events_independent},
            {"duplicated_propagations", stats.duplicated_propagations},
            {"lineages_total", stats.lineages_total},
            {"lineages_independent", stats.lineages_independent}};
}

std::string render_lifecycle_text(const LifecycleModel& model) {
    std::ostringstream os;
    os << "exception lifecycle model (" << model.mode << ")\n";
    os << "versions:";
    for (const auto& v : model.versions) os << " " << v;
    os << "\n";
    for (const auto& api : model.apis) {
        os << "\n" << api.signature << "\n";
        for (const auto& iv : api.intervals)
            os << "  interval " << iv.introduced << ".."
               << (iv.removed ? *iv.removed : std::string("open")) << "\n";
        for (const auto& l : api.exceptions) {
            os << "  lineage " << l.lineage_id << " " << l.type << " introduced="
               << l.introduced << " removed=" << (l.removed ? *l.removed : std::string("open"))
               << "\n";
            os << "    at " << l.origin_method << "#" << l.origin_stmt;
            if (!l.call_chain.empty()) os << " via " << chain_text(l.call_chain);
            os << "\n";
            os << "    message: " << l.message_pattern << "\n";
            os << "    precondition: " << l.precondition << "\n";
            for (const auto& e : l.events)
                os << "    event " << e.version << " " << e.kind << ": " << e.old_value
                   << " -> " << e.new_value << "\n";
        }
    }
    return os.str();
}

}  // namespace exlife
