/** @file main.cpp
 *  @brief exlife command line front end.
 */
#include <iostream>

#include "CLI11.hpp"

#include "exlife/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exception lifecycle analyzer for EXIR programs"};
    app.require_subcommand(1);

    std::string mode_name = "inter";
    exlife::RunConfig config;
    app.add_option("--mode", mode_name, "analysis mode: intra or inter")
        ->check(CLI::IsMember({"intra", "inter"}))
        ->capture_default_str();
    app.add_option("--path-cap", config.path_cap, "maximum pre-paths per target")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--clause-limit", config.clause_limit,
                   "clause budget for negation before giving up")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--pretty", config.pretty, "also write a plain-text lifecycle rendering");
    app.add_option("--dot-dump", config.dot_dump, "directory for CFG/CDG graphviz dumps");
    app.add_option("--version-label", config.version_label,
                   "version label override (single input only)");

    std::vector<std::string> inputs;
    std::string outdir = ".";
    std::string out_path = "change.json";
    std::string old_input, new_input;

    CLI::App* extract = app.add_subcommand("extract", "summarize exception behaviour");
    extract->add_option("inputs", inputs, "EXIR source files")->required();
    extract->add_option("-o,--out", outdir, "output directory")->capture_default_str();

    CLI::App* diff = app.add_subcommand("diff", "compare two versions");
    diff->add_option("old", old_input, "older version (.exir or .summary.json)")->required();
    diff->add_option("new", new_input, "newer version (.exir or .summary.json)")->required();
    diff->add_option("-o,--out", out_path, "change report file")->capture_default_str();

    CLI::App* lifecycle = app.add_subcommand("lifecycle", "build the full lifecycle model");
    lifecycle->add_option("inputs", inputs, "version sequence (.exir or .summary.json)")
        ->required();
    lifecycle->add_option("-o,--out", outdir, "output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    config.mode = *exlife::parse_mode(mode_name);

    if (extract->parsed()) return exlife::cmd_extract(inputs, outdir, config, std::cerr);
    if (diff->parsed()) return exlife::cmd_diff(old_input, new_input, out_path, config, std::cerr);
    return exlife::cmd_lifecycle(inputs, outdir, config, std::cerr);
}
