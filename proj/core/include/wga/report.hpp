#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace wga {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

enum class Command { Classify, Radius, Spectrum, ExamplePaper, ProbeFinite, Separate, Bochner };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

enum class OutputFormat { Json, Csv };

/// One experiment: command, textual inputs, and numeric knobs. Round-trips
/// through JSON; unknown keys are rejected on the way in.
struct ExperimentConfig {
    Command command = Command::Classify;
    std::string group = "Z";
    std::string weight = "poly:1";
    std::string element;   // JSON element literal, when the command needs one
    std::string measure;   // JSON measure literal (bochner)
    std::string phi;       // JSON character (separate)
    std::string exclude;   // JSON character list (separate)
    std::string probes;    // JSON list of element literals (bochner)
    std::int64_t max_exponent = std::int64_t{1} << 20;
    std::int64_t samples = 4096;
    double tolerance = 1e-3;
    std::string out;       // output path; empty = stdout
    OutputFormat format = OutputFormat::Json;
    std::uint64_t seed = 0;
    bool force = false;    // allow overwriting an existing output file

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

/// The result of one run: inputs echoed, results (with curves as (x, value)
/// arrays), raised flags, timing.
struct Report {
    int schema_version = kReportSchemaVersion;
    std::string tool_version = kToolVersion;
    Command command = Command::Classify;
    nlohmann::json inputs;
    nlohmann::json results; // includes "curves": [{series, points:[[x,v],...]}]
    nlohmann::json flags;   // raised design-decision flags only
    double timing_seconds = 0.0;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
};

/// Serialize a Report; byte-identical output for an identical Report.
std::string report_to_json_text(const Report& r);
std::string report_to_csv_text(const Report& r);

/// Write to the given path in the given format. Refuses to overwrite an
/// existing file unless force is set.
void write_report(const Report& r, const std::string& path, OutputFormat format, bool force);

/// Run the experiment described by the config.
Report run_command(const ExperimentConfig& cfg);

} // namespace wga
