#include <chrono>
#include <cmath>
#include <random>

#include "wga/parse.hpp"
#include "wga/report.hpp"
#include "wga/representation.hpp"

namespace wga {

using nlohmann::json;

namespace {

json curve(const std::string& series, const std::vector<std::pair<std::int64_t, double>>& points) {
    json j;
    j["series"] = series;
    j["points"] = json::array();
    for (const auto& [x, v] : points) j["points"].push_back({x, v});
    return j;
}

json radius_estimate_json(const RadiusEstimate& r) {
    json j;
    j["estimate"] = r.estimate;
    j["n_reached"] = r.n_reached;
    j["exact"] = r.exact;
    if (r.exact) j["exact_value"] = r.exact_value;
    return j;
}

json annulus_json(const AnnulusBounds& a) {
    return {{"r_minus", a.r_minus},
            {"r_plus", a.r_plus},
            {"exact", a.exact},
            {"bracket_width", a.bracket_width}};
}

json run_classify(const ExperimentConfig& cfg, json& flags) {
    GroupSpec spec = parse_group_spec(cfg.group);
    Weight w = parse_weight(cfg.weight, spec);
    ClassifyOptions opts;
    opts.tolerance = cfg.tolerance;
    opts.max_exponent = cfg.max_exponent;
    ClassificationReport report = classify_weight(w, opts);

    json results;
    results["verdict"] = to_string(report.verdict);
    results["family_exact"] = report.family_exact;
    results["notes"] = report.notes;
    results["evidence"] = json::array();
    results["curves"] = json::array();
    for (const auto& ev : report.evidence) {
        json e;
        e["generator"] = ev.generator.to_string();
        e["radius"] = radius_estimate_json(ev.radius);
        if (!ev.domar_sums.empty()) {
            e["domar_top_gap"] = ev.domar_top_gap;
            results["curves"].push_back(curve("domar_sums" + ev.generator.to_string(), ev.domar_sums));
        }
        results["evidence"].push_back(e);
    }
    if (report.rescaled) {
        flags["rescaled_weight"] = true;
        results["rescale_factor"] = report.rescale_factor;
    }
    if (report.w_below_one) flags["w_below_one"] = true;
    if (report.radius_vs_limit_discrepancy) flags["radius_vs_limit_discrepancy"] = true;
    return results;
}

json run_radius(const ExperimentConfig& cfg, json& flags) {
    GroupSpec spec = parse_group_spec(cfg.group);
    Weight w = parse_weight(cfg.weight, spec);
    if (cfg.element.empty()) throw DomainError("radius: --element is required");
    AlgebraElement f = parse_element(cfg.element, spec);

    auto norm_limit = spectral_radius_normlimit(f, w, cfg.max_exponent);
    auto comparison = compare_radii(f, w, cfg.max_exponent);

    json results;
    results["norm_limit"] = {{"estimate", norm_limit.estimate}, {"n_reached", norm_limit.n_reached}};
    if (norm_limit.hit_resource_cap) flags["power_resource_cap"] = true;
    if (norm_limit.fft_fallback) flags["fft_fallback"] = true;
    results["comparison"] = {{"r_unweighted", comparison.r_unweighted},
                             {"r_weighted", comparison.r_weighted},
                             {"weight_sup", comparison.weight_sup},
                             {"sandwich_ok", comparison.sandwich_ok}};
    CharacterSpace cs = character_space(w, cfg.max_exponent);
    try {
        auto oracle = spectral_radius_oracle(f, cs, cfg.samples);
        results["oracle"] = {{"value", oracle.value}, {"sampling_bound", oracle.sampling_bound}};
    } catch (const ResourceError& err) {
        results["oracle"] = {{"refused", err.what()}, {"required_samples", err.largest_feasible}};
    }
    results["curves"] = json::array({curve("normlimit_ladder", norm_limit.ladder)});
    return results;
}

json run_spectrum(const ExperimentConfig& cfg, json&) {
    GroupSpec spec = parse_group_spec(cfg.group);
    Weight w = parse_weight(cfg.weight, spec);
    CharacterSpace cs = character_space(w, cfg.max_exponent);

    json results;
    results["annuli"] = json::array();
    for (const auto& a : cs.annuli) results["annuli"].push_back(annulus_json(a));
    results["torsion_cycles"] = cs.torsion_cycles;
    results["is_torus"] = cs.is_torus(cfg.tolerance);
    results["curves"] = json::array();
    for (int j = 0; j < spec.free_rank; ++j) {
        auto ladder = weight_radius_ladder(w, axis_generator(spec, static_cast<std::size_t>(j), +1),
                                           cfg.max_exponent);
        results["curves"].push_back(curve("rw_ladder_axis" + std::to_string(j), ladder));
    }
    return results;
}

json run_example_paper(const ExperimentConfig& cfg, json& flags) {
    // The worked example: the integers with w(n) = 1 + |n|.
    GroupSpec spec = parse_group_spec("Z");
    Weight w = parse_weight("poly:1", spec);
    GroupElement one = axis_generator(spec, 0, +1);

    std::int64_t max_exponent = std::max<std::int64_t>(cfg.max_exponent, std::int64_t{1} << 20);
    auto ladder = weight_radius_ladder(w, one, max_exponent);
    auto radius = weight_radius(w, one, max_exponent);

    // The example's one-sided sums sum_{n<=N} ln w(n) / (1+n^2); the weight is
    // symmetric, so they are exactly half the two-sided sums.
    std::vector<std::int64_t> domar_ladder = {100, 1000, 10'000, 100'000};
    auto domar = bd_partial_sums(w, one, domar_ladder);
    std::vector<std::pair<std::int64_t, double>> one_sided;
    for (auto [n, s] : domar.sums) one_sided.emplace_back(n, 0.5 * s);

    CharacterSpace cs = character_space(w, max_exponent);

    ClassifyOptions opts;
    opts.tolerance = cfg.tolerance;
    opts.max_exponent = max_exponent;
    ClassificationReport classification = classify_weight(w, opts);
    if (classification.rescaled) flags["rescaled_weight"] = true;

    json results;
    results["weight"] = w.to_string();
    results["rw_estimate"] = radius.estimate;
    results["rw_n_reached"] = radius.n_reached;
    results["rw_exact_value"] = radius.exact_value;
    results["domar_gap_top"] = one_sided.back().second - one_sided[one_sided.size() - 2].second;
    results["domar_monotone"] = [&] {
        for (std::size_t i = 1; i < one_sided.size(); ++i)
            if (one_sided[i].second < one_sided[i - 1].second) return false;
        return true;
    }();
    results["r_plus"] = cs.annuli[0].r_plus;
    results["r_minus"] = cs.annuli[0].r_minus;
    results["annulus_exact"] = cs.annuli[0].exact;
    results["character_space"] = cs.is_torus(cfg.tolerance) ? "T" : "annulus";
    results["verdict"] = to_string(classification.verdict);
    results["family_exact"] = classification.family_exact;
    results["curves"] = json::array({curve("rw_ladder", ladder), curve("domar_sums", one_sided)});
    return results;
}

json run_probe_finite(const ExperimentConfig& cfg, json&) {
    GroupSpec spec = parse_group_spec(cfg.group);
    if (!spec.is_finite()) throw DomainError("probe-finite: group must be finite");
    Weight w = parse_weight(cfg.weight, spec);
    std::vector<AlgebraElement> probes;
    if (!cfg.element.empty()) probes.push_back(parse_element(cfg.element, spec));
    auto probe = finite_gelfand_probe(spec, w, std::move(probes));

    json results;
    results["order"] = spec.finite_order();
    results["rank"] = probe.rank;
    results["surjective"] = probe.surjective;
    results["isometry_defect"] = probe.isometry_defect;
    results["witness"] = json::parse(element_to_json(probe.witness));
    results["curves"] = json::array();
    return results;
}

json run_separate(const ExperimentConfig& cfg, json&) {
    GroupSpec spec = parse_group_spec(cfg.group);
    Weight w = parse_weight(cfg.weight, spec);
    CharacterSpace cs = character_space(w, cfg.max_exponent);
    if (cfg.phi.empty()) throw DomainError("separate: --phi is required");
    Character phi = parse_character(cfg.phi, spec);
    std::vector<Character> exclude;
    if (!cfg.exclude.empty()) exclude = parse_character_list(cfg.exclude, spec);

    AlgebraElement f = separating_element(cs, exclude, phi);

    json results;
    results["element"] = json::parse(element_to_json(f));
    results["support_size"] = f.support_size();
    Complex at_phi = gelfand_eval(f, phi);
    results["value_at_phi"] = {{"re", at_phi.real()}, {"im", at_phi.imag()}};
    double worst = 0.0;
    for (const auto& e : exclude) worst = std::max(worst, std::abs(gelfand_eval(f, e)));
    results["max_on_excluded"] = worst;
    results["norm_l1w"] = norm_l1w(f, w);
    results["curves"] = json::array();
    return results;
}

json run_bochner(const ExperimentConfig& cfg, json&) {
    GroupSpec spec = parse_group_spec(cfg.group);
    Weight w = parse_weight(cfg.weight, spec);
    CharacterSpace cs = character_space(w, cfg.max_exponent);
    if (cfg.measure.empty()) throw DomainError("bochner: --measure is required");
    SpectralMeasure mu = parse_measure(cfg.measure, cs);
    Functional phi = synthesize_functional(mu);

    std::vector<AlgebraElement> probes;
    if (!cfg.probes.empty()) {
        json list = json::parse(cfg.probes);
        for (const auto& item : list) probes.push_back(parse_element(item.dump(), spec));
    } else {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        std::uniform_int_distribution<std::int64_t> pos(-4, 4);
        for (int p = 0; p < 8; ++p) {
            AlgebraElement f(spec);
            for (int k = 0; k < 3; ++k) {
                std::vector<std::int64_t> coords(spec.num_axes());
                for (auto& c : coords) c = pos(rng);
                f.add_at(make_element(spec, coords), Complex{amp(rng), amp(rng)});
            }
            if (!f.is_zero()) probes.push_back(f);
        }
    }

    GramReport gram = gram_positivity_check(phi, probes);
    json results;
    results["atoms"] = mu.atoms.size();
    results["probes"] = probes.size();
    results["min_eigenvalue"] = gram.min_eigenvalue;
    results["matrix_norm"] = gram.matrix_norm;
    results["hermiticity_defect"] = gram.hermiticity_defect;
    results["psd"] = gram.psd;
    results["eigenvalues"] = gram.eigenvalues;
    results["curves"] = json::array();
    return results;
}

} // namespace

Report run_command(const ExperimentConfig& cfg) {
    Report report;
    report.command = cfg.command;
    report.inputs = cfg.to_json();
    report.seed = cfg.seed;
    report.flags = json::object();

    auto start = std::chrono::steady_clock::now();
    switch (cfg.command) {
        case Command::Classify: report.results = run_classify(cfg, report.flags); break;
        case Command::Radius: report.results = run_radius(cfg, report.flags); break;
        case Command::Spectrum: report.results = run_spectrum(cfg, report.flags); break;
        case Command::ExamplePaper: report.results = run_example_paper(cfg, report.flags); break;
        case Command::ProbeFinite: report.results = run_probe_finite(cfg, report.flags); break;
        case Command::Separate: report.results = run_separate(cfg, report.flags); break;
        case Command::Bochner: report.results = run_bochner(cfg, report.flags); break;
    }
    report.timing_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace wga
