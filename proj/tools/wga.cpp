#include <CLI11.hpp>

#include <iostream>

#include "wga/report.hpp"

namespace {

void add_common_flags(CLI::App* cmd, wga::ExperimentConfig& cfg) {
    cmd->add_option("--group", cfg.group, "Group spec, e.g. \"Z\", \"Z^2xZ_4\", \"1\"");
    cmd->add_option("--weight", cfg.weight,
                    "Weight DSL, per-axis factors joined with '*', e.g. \"poly:1\", "
                    "\"exp:0.7\", \"subexp:1,0.5\", \"const:1\", \"table:[1,2,4]\"");
    cmd->add_option("--element", cfg.element, "Element literal: JSON [[coords...], re, im] triples");
    cmd->add_option("--measure", cfg.measure, "Measure literal: JSON [{character, mass}, ...]");
    cmd->add_option("--phi", cfg.phi, "Target character: JSON {free:[{re,im}...], torsion:[...]}");
    cmd->add_option("--exclude", cfg.exclude, "Characters to separate from: JSON array");
    cmd->add_option("--probes", cfg.probes, "Probe elements: JSON array of element literals");
    cmd->add_option("--max-exponent", cfg.max_exponent, "Top of the doubling ladder")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--samples", cfg.samples, "Samples per boundary circle")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", cfg.tolerance, "Verdict tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--out", cfg.out, "Output path (default: stdout)");
    cmd->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, wga::OutputFormat>{{"json", wga::OutputFormat::Json},
                                                     {"csv", wga::OutputFormat::Csv}},
            CLI::ignore_case));
    cmd->add_option("--seed", cfg.seed, "Seed for randomized probe families");
    cmd->add_flag("--force", cfg.force, "Overwrite an existing output file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for weighted convolution algebras on "
                 "finitely generated Abelian groups"};
    app.require_subcommand(1);
    app.set_version_flag("--version", wga::kToolVersion);

    wga::ExperimentConfig cfg;
    struct Sub {
        const char* name;
        const char* help;
        wga::Command command;
    };
    const Sub subs[] = {
        {"classify", "Classify a weight (regularity / nonquasianalyticity)", wga::Command::Classify},
        {"radius", "Spectral radius of an element: norm-limit ladder, comparison, oracle",
         wga::Command::Radius},
        {"spectrum", "Character space annuli and torsion cycles", wga::Command::Spectrum},
        {"example-paper", "Reproduce the worked example on Z with w(n) = 1 + |n|",
         wga::Command::ExamplePaper},
        {"probe-finite", "Gelfand transform probe for a finite group", wga::Command::ProbeFinite},
        {"separate", "Element whose transform is 1 at phi and 0 on the excluded set",
         wga::Command::Separate},
        {"bochner", "Gram positivity check for an atomic spectral measure", wga::Command::Bochner},
    };
    for (const auto& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        add_common_flags(cmd, cfg);
        cmd->callback([&cfg, command = sub.command] { cfg.command = command; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        wga::Report report = wga::run_command(cfg);
        if (cfg.out.empty()) {
            std::cout << (cfg.format == wga::OutputFormat::Json
                              ? wga::report_to_json_text(report)
                              : wga::report_to_csv_text(report));
        } else {
            wga::write_report(report, cfg.out, cfg.format, cfg.force);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
