#include "exlife/cli.hpp"

#include <cctype>
#include <filesystem>
#include <future>
#include <ostream>

#include "exlife/cdg.hpp"
#include "exlife/lifecycle.hpp"
#include "exlife/matching.hpp"
#include "exlife/report.hpp"

namespace fs = std::filesystem;

namespace exlife {

namespace {

ExtractOptions extract_options(const RunConfig& config) {
    ExtractOptions opts;
    opts.mode = config.mode;
    opts.path_cap = config.path_cap;
    opts.clause_limit = config.clause_limit;
    opts.depth_limit = config.depth_limit;
    return opts;
}

struct LoadedVersion {
    SummaryReport report;
    std::optional<ExirProgram> program;  // only for exir inputs
    std::string error;                   // nonempty on failure
};

/// Reads one input: exir sources are parsed and summarized, summary reports
/// are loaded back. Never throws; failures land in `error`.
LoadedVersion load_version(const std::string& path, const std::string& label,
                           const RunConfig& config) {
    LoadedVersion out;
    try {
        const std::string text = read_text_file(path);
        if (path.ends_with(".exir")) {
            ExirProgram program = parse_program(text, label);
            ExtractionResult extraction = extract_summaries(program, extract_options(config));
            out.report = build_report(program, extraction, extract_options(config));
            out.program = std::move(program);
        } else {
            out.report = report_from_json(json::parse(text));
        }
    } catch (const std::exception& e) {
        out.error = path + ": " + e.what();
    }
    return out;
}

std::vector<LoadedVersion> load_all(const std::vector<std::string>& inputs,
                                    const std::vector<std::string>& labels,
                                    const RunConfig& config) {
    std::vector<std::future<LoadedVersion>> futures;
    futures.reserve(inputs.size());
    for (size_t i = 0; i < inputs.size(); ++i)
        futures.push_back(std::async(std::launch::async, load_version, inputs[i], labels[i],
                                     config));
    std::vector<LoadedVersion> out;
    out.reserve(inputs.size());
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                        c == '-' || c == '.';
        out += ok ? c : '_';
    }
    return out;
}

void dump_dots(const ExirProgram& program, const std::string& label, const fs::path& dir) {
    fs::create_directories(dir);
    for (const auto& method : program.methods) {
        const Cfg cfg = build_cfg(method);
        const Cdg cdg = build_cdg(cfg);
        const std::string base = sanitize(label + "." + method.id.signature());
        write_text_file((dir / (base + ".cfg.dot")).string(), cfg_to_dot(cfg));
        write_text_file((dir / (base + ".cdg.dot")).string(), cdg_to_dot(cdg, cfg));
    }
}

int report_errors(const std::vector<LoadedVersion>& loaded, std::ostream& err) {
    int failures = 0;
    for (const auto& v : loaded) {
        if (!v.error.empty()) {
            err << v.error << "\n";
            ++failures;
        }
    }
    return failures;
}

std::vector<std::string> derive_labels(const std::vector<std::string>& inputs,
                                       const RunConfig& config, std::string& problem) {
    std::vector<std::string> labels;
    for (const auto& p : inputs) labels.push_back(version_label_of(p));
    if (!config.version_label.empty()) {
        if (inputs.size() != 1) {
            problem = "--version-label applies to a single input only";
            return labels;
        }
        labels[0] = config.version_label;
    }
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) problem = "duplicate version label '" + labels[i] + "'";
    return labels;
}

}  // namespace

std::optional<Mode> parse_mode(const std::string& name) {
    if (name == "intra") return Mode::Intra;
    if (name == "inter") return Mode::Inter;
    return std::nullopt;
}

std::string version_label_of(const std::string& path) {
    std::string name = fs::path(path).filename().string();
    for (const std::string& suffix : {std::string(".summary.json"), std::string(".exir"),
                                      std::string(".json")}) {
        if (name.ends_with(suffix)) return name.substr(0, name.size() - suffix.size());
    }
    const size_t dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

int cmd_extract(const std::vector<std::string>& inputs, const std::string& outdir,
                const RunConfig& config, std::ostream& err) {
    if (inputs.empty()) {
        err << "extract: no inputs\n";
        return 2;
    }
    for (const auto& p : inputs) {
        if (!p.ends_with(".exir")) {
            err << "extract: expected an .exir source: " << p << "\n";
            return 2;
        }
    }
    std::string problem;
    std::vector<std::string> labels = derive_labels(inputs, config, problem);
    if (!problem.empty()) {
        err << "extract: " << problem << "\n";
        return 2;
    }
    std::vector<LoadedVersion> loaded = load_all(inputs, labels, config);
    if (report_errors(loaded, err)) return 2;

    fs::create_directories(outdir);
    for (size_t i = 0; i < loaded.size(); ++i) {
        const fs::path out = fs::path(outdir) / (labels[i] + ".summary.json");
        write_text_file(out.string(), json_to_text(report_to_json(loaded[i].report)));
        if (!config.dot_dump.empty())
            dump_dots(*loaded[i].program, labels[i], config.dot_dump);
    }
    return 0;
}

int cmd_diff(const std::string& old_input, const std::string& new_input,
             const std::string& out_path, const RunConfig& config, std::ostream& err) {
    if (!config.version_label.empty()) {
        err << "diff: --version-label applies to a single input only\n";
        return 2;
    }
    std::vector<std::string> inputs = {old_input, new_input};
    std::string problem;
    std::vector<std::string> labels = derive_labels(inputs, config, problem);
    if (!problem.empty()) {
        err << "diff: " << problem << "\n";
        return 2;
    }
    std::vector<LoadedVersion> loaded = load_all(inputs, labels, config);
    if (report_errors(loaded, err)) return 2;
    try {
        const ChangeReport change = diff_reports(loaded[0].report, loaded[1].report);
        write_text_file(out_path, json_to_text(change_to_json(change)));
    } catch (const std::exception& e) {
        err << "diff: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int cmd_lifecycle(const std::vector<std::string>& inputs, const std::string& outdir,
                  const RunConfig& config, std::ostream& err) {
    if (inputs.empty()) {
        err << "lifecycle: no inputs\n";
        return 2;
    }
    if (!config.version_label.empty() && inputs.size() != 1) {
        err << "lifecycle: --version-label applies to a single input only\n";
        return 2;
    }
    std::string problem;
    std::vector<std::string> labels = derive_labels(inputs, config, problem);
    if (!problem.empty()) {
        err << "lifecycle: " << problem << "\n";
        return 2;
    }
    std::vector<LoadedVersion> loaded = load_all(inputs, labels, config);
    if (report_errors(loaded, err)) return 2;

    std::vector<SummaryReport> reports;
    reports.reserve(loaded.size());
    for (auto& v : loaded) reports.push_back(std::move(v.report));
    for (const auto& r : reports) {
        if (r.mode != reports[0].mode) {
            err << "lifecycle: inputs mix modes (" << reports[0].mode << " vs " << r.mode
                << ")\n";
            return 2;
        }
    }

    try {
        std::vector<ChangeReport> changes;
        for (size_t i = 0; i + 1 < reports.size(); ++i)
            changes.push_back(diff_reports(reports[i], reports[i + 1]));
        const LifecycleModel model = build_lifecycle(reports, changes);
        const Statistics stats = compute_statistics(model, changes);

        fs::create_directories(outdir);
        for (const auto& c : changes) {
            const fs::path out = fs::path(outdir) / (sanitize(c.old_version) + "_to_" +
                                                     sanitize(c.new_version) + ".change.json");
            write_text_file(out.string(), json_to_text(change_to_json(c)));
        }
        write_text_file((fs::path(outdir) / "lifecycle.json").string(),
                        json_to_text(lifecycle_to_json(model)));
        write_text_file((fs::path(outdir) / "statistics.json").string(),
                        json_to_text(statistics_to_json(stats)));
        if (config.pretty)
            write_text_file((fs::path(outdir) / "lifecycle.txt").string(),
                            render_lifecycle_text(model));
        if (!config.dot_dump.empty()) {
            for (size_t i = 0; i < loaded.size(); ++i)
                if (loaded[i].program) dump_dots(*loaded[i].program, labels[i], config.dot_dump);
        }
    } catch (const std::exception& e) {
        err << "lifecycle: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace exlife
