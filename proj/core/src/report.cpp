#include "wga/report.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "wga/errors.hpp"

namespace wga {

using nlohmann::json;

std::string to_string(Command c) {
    switch (c) {
        case Command::Classify: return "classify";
        case Command::Radius: return "radius";
        case Command::Spectrum: return "spectrum";
        case Command::ExamplePaper: return "example-paper";
        case Command::ProbeFinite: return "probe-finite";
        case Command::Separate: return "separate";
        case Command::Bochner: return "bochner";
    }
    return "classify";
}

Command command_from_string(const std::string& s) {
    if (s == "classify") return Command::Classify;
    if (s == "radius") return Command::Radius;
    if (s == "spectrum") return Command::Spectrum;
    if (s == "example-paper") return Command::ExamplePaper;
    if (s == "probe-finite") return Command::ProbeFinite;
    if (s == "separate") return Command::Separate;
    if (s == "bochner") return Command::Bochner;
    throw DomainError("unknown command '" + s + "'");
}

json ExperimentConfig::to_json() const {
    json j;
    j["command"] = to_string(command);
    j["group"] = group;
    j["weight"] = weight;
    j["element"] = element;
    j["measure"] = measure;
    j["phi"] = phi;
    j["exclude"] = exclude;
    j["probes"] = probes;
    j["max_exponent"] = max_exponent;
    j["samples"] = samples;
    j["tolerance"] = tolerance;
    j["out"] = out;
    j["format"] = format == OutputFormat::Json ? "json" : "csv";
    j["seed"] = seed;
    j["force"] = force;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    static const std::set<std::string> known = {
        "command", "group",  "weight",    "element", "measure", "phi",  "exclude", "probes",
        "max_exponent", "samples", "tolerance", "out",     "format",  "seed", "force"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key)) throw DomainError("config: unknown key '" + key + "'");
    }
    ExperimentConfig cfg;
    if (j.contains("command")) cfg.command = command_from_string(j.at("command").get<std::string>());
    if (j.contains("group")) cfg.group = j.at("group").get<std::string>();
    if (j.contains("weight")) cfg.weight = j.at("weight").get<std::string>();
    if (j.contains("element")) cfg.element = j.at("element").get<std::string>();
    if (j.contains("measure")) cfg.measure = j.at("measure").get<std::string>();
    if (j.contains("phi")) cfg.phi = j.at("phi").get<std::string>();
    if (j.contains("exclude")) cfg.exclude = j.at("exclude").get<std::string>();
    if (j.contains("probes")) cfg.probes = j.at("probes").get<std::string>();
    if (j.contains("max_exponent")) cfg.max_exponent = j.at("max_exponent").get<std::int64_t>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::int64_t>();
    if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("format")) {
        std::string f = j.at("format").get<std::string>();
        if (f == "json")
            cfg.format = OutputFormat::Json;
        else if (f == "csv")
            cfg.format = OutputFormat::Csv;
        else
            throw DomainError("config: unknown format '" + f + "'");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("force")) cfg.force = j.at("force").get<bool>();
    return cfg;
}

json Report::to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["tool_version"] = tool_version;
    j["command"] = to_string(command);
    j["inputs"] = inputs;
    j["results"] = results;
    j["flags"] = flags;
    j["timing"] = {{"seconds", timing_seconds}};
    j["seed"] = seed;
    return j;
}

std::string report_to_json_text(const Report& r) { return r.to_json().dump(2) + "\n"; }

std::string report_to_csv_text(const Report& r) {
    std::ostringstream os;
    os << "series,x,value\n";
    if (r.results.contains("curves")) {
        for (const auto& curve : r.results.at("curves")) {
            const std::string name = curve.at("series").get<std::string>();
            for (const auto& point : curve.at("points")) {
                os << name << "," << point[0].dump() << "," << point[1].dump() << "\n";
            }
        }
    }
    return os.str();
}

void write_report(const Report& r, const std::string& path, OutputFormat format, bool force) {
    if (path.empty()) throw DomainError("write_report: empty output path");
    if (!force && std::filesystem::exists(path))
        throw DomainError("write_report: '" + path + "' exists; pass --force to overwrite");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("write_report: cannot open '" + path + "' for writing");
    out << (format == OutputFormat::Json ? report_to_json_text(r) : report_to_csv_text(r));
    if (!out) throw Error("write_report: write to '" + path + "' failed");
}

} // namespace wga
