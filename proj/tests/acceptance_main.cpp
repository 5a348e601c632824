/**
 * @file acceptance_main.cpp
 * @brief Scenario and property acceptance checks, one verdict line each.
 *
 * Exits nonzero when any criterion fails. Every check is self-contained:
 * corpus files live under tests/corpus, goldens under tests/golden, and the
 * randomized suites run from fixed seeds so reruns see the same inputs.
 */
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "exlife/cdg.hpp"
#include "exlife/cfg.hpp"
#include "exlife/cli.hpp"
#include "exlife/constraint.hpp"
#include "exlife/exir.hpp"
#include "exlife/lifecycle.hpp"
#include "exlife/matching.hpp"
#include "exlife/report.hpp"
#include "exlife/summary.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace exlife;
using namespace exlife::testing;

namespace {

using Errs = std::vector<std::string>;

void expect(Errs& errs, bool ok, const std::string& what) {
    if (!ok) errs.push_back(what);
}

std::string data_path(const std::string& rel) {
    return std::string(EXLIFE_TEST_DATA_DIR) + "/" + rel;
}

const std::vector<std::string> kMoveVersions = {"1.4", "2.0", "2.7", "2.9", "2.13"};

std::string move_path(const std::string& version) {
    return data_path("corpus/movefile/" + version + ".exir");
}

SummaryReport extract_file(const std::string& path, const std::string& version,
                           const ExtractOptions& options = {}) {
    ExirProgram program = parse_program(read_text_file(path), version);
    ExtractionResult extraction = extract_summaries(program, options);
    SummaryReport report = build_report(program, extraction, options);
    report.version = version;
    return report;
}

int count_kind(const std::vector<ChangeEvent>& events, const std::string& kind) {
    return static_cast<int>(
        std::count_if(events.begin(), events.end(),
                      [&](const ChangeEvent& e) { return e.kind == kind; }));
}

// 1. The moveFile corpus end to end: one open API interval, one lineage that
// survives a type change, a pure refactor, and a message+precondition rewrite
// rescued by its key precondition, with nothing else attributed to it.
void criterion_movefile(Errs& errs) {
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<SummaryReport> reports;
    for (const auto& v : kMoveVersions) reports.push_back(extract_file(move_path(v), v));
    std::vector<ChangeReport> changes;
    for (size_t i = 0; i + 1 < reports.size(); ++i)
        changes.push_back(diff_reports(reports[i], reports[i + 1]));
    LifecycleModel model = build_lifecycle(reports, changes);
    Statistics stats = compute_statistics(model, changes);

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    expect(errs, elapsed < 1000, "pipeline took " + std::to_string(elapsed) + " ms, budget is 1000");

    const std::string sig = "FileUtils::moveFile(File,File)";
    const ApiModel* api = nullptr;
    for (const auto& a : model.apis)
        if (a.signature == sig) api = &a;
    expect(errs, api != nullptr, "API " + sig + " missing from the model");
    if (!api) return;

    const std::vector<ApiInterval> want_intervals = {{"1.4", std::nullopt}};
    expect(errs, api->intervals == want_intervals, "expected a single open interval from 1.4");

    const Lineage* target = nullptr;
    for (const auto& ln : api->exceptions)
        if (ln.origin_method == sig && ln.origin_stmt == 18) target = &ln;
    expect(errs, target != nullptr, "destination-exists lineage not found");
    if (!target) return;

    expect(errs, target->introduced == "1.4", "lineage introduced at " + target->introduced);
    expect(errs, !target->removed.has_value(), "lineage unexpectedly removed");

    const std::string old_pre =
        "(parameter0 != null && parameter0.exists() && !parameter0.isDirectory() && "
        "parameter1 != null && parameter1.exists())";
    const std::string new_pre =
        "(parameter0 != null && parameter0.exists() && parameter0.isFile() && "
        "parameter1 != null && parameter1.exists())";
    const std::vector<LineageEvent> want_events = {
        {"2.0", "type", "IOException", "FileExistsException"},
        {"2.9", "message", "Destination .* already exists",
         "File element in parameter '.*' already exists: '.*'"},
        {"2.9", "precondition", old_pre, new_pre},
    };
    expect(errs, target->events == want_events,
           "lineage events differ from the expected type/message/precondition triple");

    // Rule attribution at each step. 1.4 -> 2.0 is a lone type change via the
    // type-only filter; 2.0 -> 2.7 and 2.9 -> 2.13 are silent; 2.7 -> 2.9
    // rewrites message and precondition together, so only the key-precondition
    // rescue may pair it.
    expect(errs, changes[0].events.size() == 1 &&
                     changes[0].events[0].kind == "exception-type-changed" &&
                     changes[0].events[0].rule == "R2" && changes[0].events[0].api == sig,
           "1.4 -> 2.0 must be exactly one R2 type change");
    expect(errs, changes[1].events.empty(), "2.0 -> 2.7 must report no events");
    expect(errs, changes[3].events.empty(), "2.9 -> 2.13 must report no events");

    const std::vector<ChangeEvent>& at29 = changes[2].events;
    expect(errs, count_kind(at29, "exception-message-changed") == 1 &&
                     count_kind(at29, "exception-precondition-changed") == 1 &&
                     count_kind(at29, "exception-type-changed") == 0,
           "2.7 -> 2.9 must carry one message change and one precondition change");
    expect(errs, count_kind(at29, "api-added") == 1 && count_kind(at29, "exception-removed") == 1 &&
                     count_kind(at29, "exception-added") == 2,
           "2.7 -> 2.9 side events differ (overload add, directory-check removal, two additions)");
    for (const auto& e : at29) {
        if (e.kind != "exception-message-changed" && e.kind != "exception-precondition-changed")
            continue;
        expect(errs, e.rule == "R5" && e.api == sig,
               "2.7 -> 2.9 modification must pair via R5 on " + sig);
        if (e.old_summary && e.new_summary) {
            expect(errs, dnf_fold_render(e.old_summary->key_precondition) ==
                                 "(parameter1.exists())" &&
                             dnf_fold_render(e.new_summary->key_precondition) ==
                                 "(parameter1.exists())",
                   "R5 key precondition must be the destination-exists check on both sides");
        } else {
            expect(errs, false, "modification event lost its summaries");
        }
    }

    auto kind_total = [&](const std::string& kind) {
        for (const auto& [k, n] : stats.events_by_kind)
            if (k == kind) return n;
        return -1;
    };
    expect(errs, kind_total("exception-type-changed") == 1 &&
                     kind_total("exception-message-changed") == 1 &&
                     kind_total("exception-precondition-changed") == 1,
           "statistics must count one modification of each kind");
}

// 2. Inter-mode extraction of the 2.9 sources gives the rewritten
// destination-exists exception a single-clause precondition whose folded
// literals are exactly the five parameter checks, for both overloads.
void criterion_single_clause(Errs& errs) {
    SummaryReport report = extract_file(move_path("2.9"), "2.9");

    const std::set<std::pair<std::string, bool>> want = {
        {"parameter0 != null", true}, {"parameter0.exists()", true},
        {"parameter0.isFile()", true}, {"parameter1 != null", true},
        {"parameter1.exists()", true},
    };

    for (const std::string sig : {"FileUtils::moveFile(File,File)",
                                  "FileUtils::moveFile(File,File,CopyOption...)"}) {
        const ReportApi* api = nullptr;
        for (const auto& a : report.apis)
            if (a.id.signature() == sig) api = &a;
        expect(errs, api != nullptr, "API " + sig + " missing");
        if (!api) continue;

        std::vector<const ReportSummary*> hits;
        for (const auto& s : api->summaries)
            if (s.type == "FileExistsException") hits.push_back(&s);
        expect(errs, hits.size() == 1, sig + ": expected one FileExistsException summary");
        if (hits.size() != 1) continue;

        const TextDnf& pre = hits[0]->precondition;
        expect(errs, pre.clauses.size() == 1, sig + ": precondition must be a single clause");
        if (pre.clauses.size() != 1) continue;
        expect(errs, pre.clauses[0].size() == 5, sig + ": clause must hold five literals");

        std::set<std::pair<std::string, bool>> folded;
        for (const auto& lit : pre.clauses[0]) folded.insert(fold_key(lit));
        expect(errs, folded == want, sig + ": folded literal set differs");
    }
}

// 3. Only control-dependent conditions reach a throw's constraint set: the
// guarded 1.4 corpus yields five (condition, polarity) pairs for the last
// throw, and the logging variant, where earlier checks fall through, yields
// exactly the destination-exists pair.
void criterion_control_dependence(Errs& errs) {
    auto destination_clause = [&](const SummaryReport& report, const std::string& label)
        -> std::optional<std::vector<TextLit>> {
        std::vector<const ReportSummary*> hits;
        for (const auto& api : report.apis)
            for (const auto& s : api.summaries)
                if (s.origin_stmt == 18 && s.message_pattern == "Destination .* already exists")
                    hits.push_back(&s);
        expect(errs, hits.size() == 1, label + ": expected one destination-exists summary");
        if (hits.size() != 1) return std::nullopt;
        expect(errs, hits[0]->precondition.clauses.size() == 1,
               label + ": precondition must be a single clause");
        if (hits[0]->precondition.clauses.size() != 1) return std::nullopt;
        return hits[0]->precondition.clauses[0];
    };

    SummaryReport guarded = extract_file(move_path("1.4"), "1.4");
    if (auto clause = destination_clause(guarded, "guarded")) {
        const std::set<std::pair<std::string, bool>> got(
            [&] {
                std::set<std::pair<std::string, bool>> s;
                for (const auto& lit : *clause) s.insert({lit.atom, lit.positive});
                return s;
            }());
        const std::set<std::pair<std::string, bool>> want = {
            {"parameter0 == null", false},    {"parameter1 == null", false},
            {"parameter0.exists()", true},    {"parameter0.isDirectory()", false},
            {"parameter1.exists()", true},
        };
        expect(errs, got == want, "guarded: raw (condition, polarity) pairs differ");
    }

    SummaryReport logging =
        extract_file(data_path("corpus/movefile_logging_variant.exir"), "variant");
    int total = 0;
    for (const auto& api : logging.apis) total += static_cast<int>(api.summaries.size());
    expect(errs, total == 1, "variant: expected exactly one summary overall");
    if (auto clause = destination_clause(logging, "variant")) {
        expect(errs, clause->size() == 1 && (*clause)[0].atom == "parameter1.exists()" &&
                         (*clause)[0].positive,
               "variant: only the destination-exists pair may remain");
    }
}

// 4. The bench corpus reproduces its committed goldens byte for byte across
// all six categories, with at least forty summaries in total.
void criterion_bench_goldens(Errs& errs) {
    const std::vector<std::string> names = {"basic",          "multiple_call", "multiple_path",
                                            "multiple_throw", "field_value",   "motivation"};
    int total = 0;
    for (const auto& name : names) {
        SummaryReport report = extract_file(data_path("corpus/bench/" + name + ".exir"), name);
        int here = 0;
        for (const auto& api : report.apis) here += static_cast<int>(api.summaries.size());
        expect(errs, here > 0, name + ": category contributed no summaries");
        total += here;
        const std::string got = json_to_text(report_to_json(report));
        const std::string want = read_text_file(data_path("golden/bench/" + name +
                                                          ".summary.json"));
        expect(errs, got == want, name + ": golden mismatch");
    }
    expect(errs, total >= 40, "bench corpus holds " + std::to_string(total) +
                                  " summaries, need at least 40");
}

// 5. Post-dominance and control dependence agree with the brute-force
// definitions on randomized small CFGs.
void criterion_cdg_oracle(Errs& errs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0xACCE5505);
    const int total = 1200;
    for (int i = 0; i < total && errs.size() < 8; ++i) {
        ExirProgram program = random_cfg_program(rng, 8);
        const Cfg cfg = build_cfg(program.methods[0]);
        if (cfg.node_count > 10) {
            expect(errs, false, "case " + std::to_string(i) + ": CFG exceeds 10 nodes");
            continue;
        }
        PostDom fast = compute_postdom(cfg);
        PostDom slow = oracle_postdom(cfg);
        expect(errs, fast.sets == slow.sets,
               "case " + std::to_string(i) + ": post-dominance disagrees with the oracle");
        expect(errs, build_cdg(cfg).edges == oracle_cdg_edges(cfg),
               "case " + std::to_string(i) + ": control dependence disagrees with the oracle");
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    expect(errs, elapsed < 60, "suite took " + std::to_string(elapsed) + " s, budget is 60");
}

// 6. Matching invariants on randomized summary queues: exact partition,
// self-diff silence, added/removed symmetry, bounded rounds, and per-pair
// consistency between the pairing rule and the actual field differences.
void criterion_matching(Errs& errs) {
    std::mt19937_64 rng(0xACCE5506);
    const int total = 5200;
    for (int i = 0; i < total && errs.size() < 8; ++i) {
        auto [olds, news] = random_summary_pair(rng);
        const std::string tag = "case " + std::to_string(i) + ": ";
        MatchOutcome out = match_summaries(olds, news);

        std::vector<int> old_seen(olds.size(), 0), new_seen(news.size(), 0);
        for (const auto& p : out.pairs) {
            ++old_seen[static_cast<size_t>(p.old_index)];
            ++new_seen[static_cast<size_t>(p.new_index)];
        }
        for (int idx : out.removed) ++old_seen[static_cast<size_t>(idx)];
        for (int idx : out.added) ++new_seen[static_cast<size_t>(idx)];
        auto once = [](const std::vector<int>& v) {
            return std::all_of(v.begin(), v.end(), [](int n) { return n == 1; });
        };
        expect(errs, once(old_seen) && once(new_seen), tag + "outcome is not a partition");

        const int bound = static_cast<int>(std::min(olds.size(), news.size())) + 1;
        expect(errs, out.rounds <= bound, tag + "fixpoint needed too many rounds");

        for (const auto& p : out.pairs) {
            const ReportSummary& o = olds[static_cast<size_t>(p.old_index)];
            const ReportSummary& n = news[static_cast<size_t>(p.new_index)];
            const bool t = o.type == n.type;
            const bool m = o.message_pattern == n.message_pattern;
            const bool c = dnf_fold_render(o.precondition) == dnf_fold_render(n.precondition);
            bool sound = false;
            if (p.rule == "R1") sound = t && m && c;
            else if (p.rule == "R2") sound = !t && m && c;
            else if (p.rule == "R3") sound = t && !m && c;
            else if (p.rule == "R4") sound = t && m && !c;
            else if (p.rule == "R5")
                sound = t && !m && !c &&
                        dnf_fold_render(o.key_precondition) ==
                            dnf_fold_render(n.key_precondition);
            expect(errs, sound, tag + "rule " + p.rule + " does not fit the field differences");
        }

        MatchOutcome rev = match_summaries(news, olds);
        auto sorted = [](std::vector<int> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        expect(errs, sorted(out.added) == sorted(rev.removed) &&
                         sorted(out.removed) == sorted(rev.added),
               tag + "added/removed do not mirror under input swap");

        MatchOutcome self = match_summaries(olds, olds);
        bool all_r1 = self.added.empty() && self.removed.empty();
        for (const auto& p : self.pairs) all_r1 = all_r1 && p.rule == "R1";
        expect(errs, all_r1, tag + "self match must pair everything identically");

        SummaryReport rep;
        rep.version = "v";
        rep.mode = "inter";
        rep.apis.push_back({MethodId{"C", "f", {}}, olds});
        expect(errs, diff_reports(rep, rep).events.empty(), tag + "self diff must be silent");
    }
}

// 7. Negation agrees with a 16-row truth table on every canonical DNF of up
// to three clauses over four atoms; when the clause limit trips, the result
// must be a flagged TRUE and nothing else.
void criterion_negation(Errs& errs) {
    const std::vector<std::string> names = {"a", "b", "c", "d"};
    std::vector<std::vector<TextLit>> pool;
    for (int mask = 1; mask < 16; ++mask) {
        std::vector<int> members;
        for (int bit = 0; bit < 4; ++bit)
            if (mask & (1 << bit)) members.push_back(bit);
        for (int pol = 0; pol < (1 << members.size()); ++pol) {
            std::vector<TextLit> clause;
            for (size_t j = 0; j < members.size(); ++j)
                clause.push_back({names[static_cast<size_t>(members[j])], (pol >> j & 1) != 0});
            pool.push_back(std::move(clause));
        }
    }

    std::vector<std::map<std::string, bool>> rows;
    for (int mask = 0; mask < 16; ++mask) {
        std::map<std::string, bool> row;
        for (int bit = 0; bit < 4; ++bit) row[names[static_cast<size_t>(bit)]] = (mask >> bit & 1) != 0;
        rows.push_back(std::move(row));
    }

    long long cases = 0;
    long long limit_hits = 0;
    auto run_case = [&](TextDnf d) {
        if (errs.size() >= 8) return;
        dnf_canonicalize(d);
        bool orig[16];
        for (int r = 0; r < 16; ++r) orig[r] = eval_dnf(d, rows[static_cast<size_t>(r)]);

        TextDnf wide = dnf_negate(d, 1 << 20);
        if (wide.clause_limit_hit) {
            expect(errs, false, "wide limit tripped for " + dnf_render(d));
            return;
        }
        for (int r = 0; r < 16; ++r) {
            if (eval_dnf(wide, rows[static_cast<size_t>(r)]) != !orig[r]) {
                expect(errs, false, "truth table mismatch for " + dnf_render(d));
                return;
            }
        }

        TextDnf tight = dnf_negate(d);
        if (tight.clause_limit_hit) {
            ++limit_hits;
            expect(errs, tight.is_true(), "limit hit must degrade to TRUE for " + dnf_render(d));
        } else {
            for (int r = 0; r < 16; ++r) {
                if (eval_dnf(tight, rows[static_cast<size_t>(r)]) != !orig[r]) {
                    expect(errs, false, "default-limit mismatch for " + dnf_render(d));
                    return;
                }
            }
        }
        ++cases;
    };

    run_case(TextDnf::make_false());
    run_case(TextDnf::make_true());
    const int n = static_cast<int>(pool.size());
    for (int i = 0; i < n; ++i) {
        run_case(TextDnf{{pool[static_cast<size_t>(i)]}, false, false});
        for (int j = i + 1; j < n; ++j) {
            run_case(TextDnf{{pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]},
                             false,
                             false});
            for (int k = j + 1; k < n; ++k)
                run_case(TextDnf{{pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)],
                                  pool[static_cast<size_t>(k)]},
                                 false,
                                 false});
        }
    }

    expect(errs, cases >= 85000,
           "only " + std::to_string(cases) + " formulas checked, expected the full space");
    expect(errs, limit_hits > 0, "no case exercised the clause limit");
}

// 8. Interprocedural extraction of a two-level program matches
// intra-procedural extraction of its hand-inlined equivalent, summary for
// summary, on everything but origin bookkeeping.
void criterion_inlining(Errs& errs) {
    std::mt19937_64 rng(0xACCE5508);
    const int total = 220;
    ExtractOptions inter;
    inter.mode = Mode::Inter;
    ExtractOptions intra;
    intra.mode = Mode::Intra;

    using Shape = std::tuple<std::string, std::string, std::string, std::string>;
    auto shapes = [](const ReportApi& api) {
        std::multiset<Shape> out;
        for (const auto& s : api.summaries)
            out.insert({s.type, s.message_pattern, dnf_render(s.precondition),
                        dnf_fold_render(s.precondition)});
        return out;
    };

    for (int i = 0; i < total && errs.size() < 8; ++i) {
        const std::string tag = "case " + std::to_string(i) + ": ";
        ExirProgram layered = random_two_level_program(rng);
        ExirProgram flat = inline_calls(layered);

        SummaryReport deep = build_report(layered, extract_summaries(layered, inter), inter);
        SummaryReport inlined = build_report(flat, extract_summaries(flat, intra), intra);

        expect(errs, deep.apis.size() == 1 && inlined.apis.size() == 1,
               tag + "both sides must expose exactly the public caller");
        if (deep.apis.size() != 1 || inlined.apis.size() != 1) continue;
        expect(errs, deep.apis[0].id == inlined.apis[0].id, tag + "API identity differs");
        expect(errs, shapes(deep.apis[0]) == shapes(inlined.apis[0]),
               tag + "summary shapes differ between inter and inlined intra");
    }
}

// 9. Repeated lifecycle runs write byte-identical artifacts; parallel
// extraction must not leak scheduling into the outputs.
void criterion_determinism(Errs& errs) {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "exlife_acceptance";
    std::error_code ec;
    fs::remove_all(base, ec);
    const fs::path run_a = base / "a";
    const fs::path run_b = base / "b";
    fs::create_directories(run_a);
    fs::create_directories(run_b);

    std::vector<std::string> inputs;
    for (const auto& v : kMoveVersions) inputs.push_back(move_path(v));
    RunConfig config;
    config.pretty = true;

    std::ostringstream err_a, err_b;
    const int code_a = cmd_lifecycle(inputs, run_a.string(), config, err_a);
    const int code_b = cmd_lifecycle(inputs, run_b.string(), config, err_b);
    expect(errs, code_a == 0, "first run failed: " + err_a.str());
    expect(errs, code_b == 0, "second run failed: " + err_b.str());
    if (code_a != 0 || code_b != 0) return;

    auto listing = [](const fs::path& dir) {
        std::vector<std::string> names;
        for (const auto& entry : fs::directory_iterator(dir))
            names.push_back(entry.path().filename().string());
        std::sort(names.begin(), names.end());
        return names;
    };
    const std::vector<std::string> files_a = listing(run_a);
    expect(errs, files_a == listing(run_b), "runs produced different file sets");
    expect(errs, files_a.size() >= 7, "expected change reports, model, statistics and text");
    for (const auto& name : files_a) {
        const std::string bytes_a = read_text_file((run_a / name).string());
        const std::string bytes_b = read_text_file((run_b / name).string());
        expect(errs, bytes_a == bytes_b, name + ": bytes differ between runs");
    }
    fs::remove_all(base, ec);
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*run)(Errs&);
    };
    const std::vector<Criterion> criteria = {
        {"movefile end-to-end", criterion_movefile},
        {"single-clause precondition", criterion_single_clause},
        {"control-dependent conditions", criterion_control_dependence},
        {"bench corpus goldens", criterion_bench_goldens},
        {"cdg oracle", criterion_cdg_oracle},
        {"matching invariants", criterion_matching},
        {"negation oracle", criterion_negation},
        {"inlining equivalence", criterion_inlining},
        {"determinism", criterion_determinism},
    };

    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Errs errs;
        try {
            criteria[i].run(errs);
        } catch (const std::exception& e) {
            errs.push_back(std::string("unexpected exception: ") + e.what());
        }
        std::printf("criterion %zu (%s): %s\n", i + 1, criteria[i].name,
                    errs.empty() ? "PASS" : "FAIL");
        for (const auto& line : errs) std::printf("    %s\n", line.c_str());
        if (!errs.empty()) ++failed;
    }
    if (failed > 0) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
