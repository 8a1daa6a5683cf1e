#include "wga/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wga {

namespace {

bool table_on_torsion_axis(const GroupSpec& spec, std::size_t axis) {
    return axis >= static_cast<std::size_t>(spec.free_rank);
}

/// |n| on a free axis; cycle distance min(t, m-t) on a torsion axis.
std::int64_t axis_abs(const GroupSpec& spec, std::size_t axis, std::int64_t coord) {
    if (axis < static_cast<std::size_t>(spec.free_rank)) return coord < 0 ? -coord : coord;
    std::int64_t m = spec.torsion_orders[axis - spec.free_rank];
    return std::min(coord, m - coord);
}

double table_log_value(const TableFactor& t, const GroupSpec& spec, std::size_t axis,
                       std::int64_t coord) {
    std::int64_t idx;
    if (table_on_torsion_axis(spec, axis)) {
        idx = coord; // residues are already reduced
    } else {
        idx = coord - t.window_lo;
        std::int64_t size = static_cast<std::int64_t>(t.values.size());
        if (idx < 0 || idx >= size) {
            if (t.extension == TableExtension::Strict)
                throw DomainError("table weight queried outside its window (strict extension)");
            idx = std::clamp<std::int64_t>(idx, 0, size - 1);
        }
    }
    return std::log(t.values[static_cast<std::size_t>(idx)]);
}

double factor_log_value(const AxisFactor& f, const GroupSpec& spec, std::size_t axis,
                        std::int64_t coord) {
    double a = static_cast<double>(axis_abs(spec, axis, coord));
    return std::visit(
        [&](const auto& fac) -> double {
            using T = std::decay_t<decltype(fac)>;
            if constexpr (std::is_same_v<T, ConstantFactor>) {
                return std::log(fac.value);
            } else if constexpr (std::is_same_v<T, PolyFactor>) {
                return fac.alpha * std::log1p(a);
            } else if constexpr (std::is_same_v<T, ExpFactor>) {
                return fac.rate * a;
            } else if constexpr (std::is_same_v<T, SubexpFactor>) {
                return fac.rate * std::pow(a, fac.beta);
            } else {
                return table_log_value(fac, spec, axis, coord);
            }
        },
        f);
}

double factor_value(const AxisFactor& f, const GroupSpec& spec, std::size_t axis,
                    std::int64_t coord) {
    double a = static_cast<double>(axis_abs(spec, axis, coord));
    return std::visit(
        [&](const auto& fac) -> double {
            using T = std::decay_t<decltype(fac)>;
            if constexpr (std::is_same_v<T, ConstantFactor>) {
                return fac.value;
            } else if constexpr (std::is_same_v<T, PolyFactor>) {
                return std::pow(1.0 + a, fac.alpha);
            } else if constexpr (std::is_same_v<T, ExpFactor>) {
                return std::exp(fac.rate * a);
            } else if constexpr (std::is_same_v<T, SubexpFactor>) {
                return std::exp(fac.rate * std::pow(a, fac.beta));
            } else {
                return std::exp(table_log_value(fac, spec, axis, coord));
            }
        },
        f);
}

std::int64_t axis_coord(const GroupSpec& spec, const GroupElement& x, std::size_t axis) {
    if (axis < static_cast<std::size_t>(spec.free_rank)) return x.free[axis];
    return x.torsion[axis - spec.free_rank];
}

void validate_factor(const AxisFactor& f, const GroupSpec& spec, std::size_t axis) {
    std::visit(
        [&](const auto& fac) {
            using T = std::decay_t<decltype(fac)>;
            if constexpr (std::is_same_v<T, ConstantFactor>) {
                if (!(fac.value > 0.0) || !std::isfinite(fac.value))
                    throw DomainError("constant weight factor must be positive and finite");
            } else if constexpr (std::is_same_v<T, PolyFactor>) {
                if (!(fac.alpha >= 0.0) || !std::isfinite(fac.alpha))
                    throw DomainError("poly weight exponent must be >= 0");
            } else if constexpr (std::is_same_v<T, ExpFactor>) {
                if (!(fac.rate >= 0.0) || !std::isfinite(fac.rate))
                    throw DomainError("exp weight rate must be >= 0");
            } else if constexpr (std::is_same_v<T, SubexpFactor>) {
                if (!(fac.rate >= 0.0) || !std::isfinite(fac.rate))
                    throw DomainError("subexp weight rate must be >= 0");
                if (!(fac.beta > 0.0 && fac.beta < 1.0))
                    throw DomainError("subexp weight exponent must lie in (0, 1)");
            } else {
                if (fac.values.empty()) throw DomainError("table weight has no values");
                for (double v : fac.values)
                    if (!(v > 0.0) || !std::isfinite(v))
                        throw DomainError("table weight values must be positive and finite");
                if (table_on_torsion_axis(spec, axis)) {
                    std::int64_t m = spec.torsion_orders[axis - spec.free_rank];
                    if (static_cast<std::int64_t>(fac.values.size()) != m)
                        throw DomainError("torsion-axis table must list one value per residue");
                } else {
                    std::int64_t hi = fac.window_lo + static_cast<std::int64_t>(fac.values.size()) - 1;
                    if (fac.window_lo > 0 || hi < 0)
                        throw DomainError("free-axis table window must contain 0");
                }
            }
        },
        f);
}

} // namespace

bool factor_is_table(const AxisFactor& f) {
    return std::holds_alternative<TableFactor>(f);
}

Weight::Weight(GroupSpec spec, std::vector<AxisFactor> factors)
    : spec_(std::move(spec)), factors_(std::move(factors)) {
    if (factors_.size() != spec_.num_axes())
        throw DomainError("weight must have one factor per group axis");
    for (std::size_t i = 0; i < factors_.size(); ++i) validate_factor(factors_[i], spec_, i);
}

bool Weight::all_family() const {
    return std::none_of(factors_.begin(), factors_.end(), factor_is_table);
}

bool Weight::is_constant_one() const {
    for (const auto& f : factors_) {
        if (const auto* c = std::get_if<ConstantFactor>(&f)) {
            if (c->value != 1.0) return false;
        } else if (const auto* p = std::get_if<PolyFactor>(&f)) {
            if (p->alpha != 0.0) return false;
        } else if (const auto* e = std::get_if<ExpFactor>(&f)) {
            if (e->rate != 0.0) return false;
        } else if (const auto* s = std::get_if<SubexpFactor>(&f)) {
            if (s->rate != 0.0) return false;
        } else {
            const auto& t = std::get<TableFactor>(f);
            for (double v : t.values)
                if (v != 1.0) return false;
        }
    }
    return true;
}

double Weight::value_at_identity() const {
    double v = 1.0;
    for (std::size_t i = 0; i < factors_.size(); ++i) v *= factor_value(factors_[i], spec_, i, 0);
    return v;
}

Weight Weight::normalized_at_identity() const {
    std::vector<AxisFactor> out = factors_;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (auto* c = std::get_if<ConstantFactor>(&out[i])) {
            c->value = 1.0;
        } else if (auto* t = std::get_if<TableFactor>(&out[i])) {
            double at0 = factor_value(factors_[i], spec_, i, 0);
            for (double& v : t->values) v /= at0;
        }
        // poly/exp/subexp already take the value 1 at the identity
    }
    return Weight(spec_, std::move(out));
}

std::string Weight::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << "*";
        std::visit(
            [&](const auto& fac) {
                using T = std::decay_t<decltype(fac)>;
                if constexpr (std::is_same_v<T, ConstantFactor>) {
                    os << "const:" << fac.value;
                } else if constexpr (std::is_same_v<T, PolyFactor>) {
                    os << "poly:" << fac.alpha;
                } else if constexpr (std::is_same_v<T, ExpFactor>) {
                    os << "exp:" << fac.rate;
                } else if constexpr (std::is_same_v<T, SubexpFactor>) {
                    os << "subexp:" << fac.rate << "," << fac.beta;
                } else {
                    os << "table:[";
                    for (std::size_t k = 0; k < fac.values.size(); ++k) {
                        if (k) os << ",";
                        os << fac.values[k];
                    }
                    os << "]";
                    if (!table_on_torsion_axis(spec_, i)) {
                        os << "@" << fac.window_lo;
                        if (fac.extension == TableExtension::Clamp) os << ":clamp";
                    }
                }
            },
            factors_[i]);
    }
    return os.str();
}

double evaluate_weight(const Weight& w, const GroupElement& x) {
    if (!element_belongs(w.spec(), x))
        throw DomainError("evaluate_weight: element does not belong to the weight's group");
    double v = 1.0;
    for (std::size_t i = 0; i < w.factors().size(); ++i)
        v *= factor_value(w.factors()[i], w.spec(), i, axis_coord(w.spec(), x, i));
    if (!std::isfinite(v)) throw DomainError("evaluate_weight: non-finite weight value");
    return v;
}

double log_evaluate_weight(const Weight& w, const GroupElement& x) {
    if (!element_belongs(w.spec(), x))
        throw DomainError("log_evaluate_weight: element does not belong to the weight's group");
    double lv = 0.0;
    for (std::size_t i = 0; i < w.factors().size(); ++i)
        lv += factor_log_value(w.factors()[i], w.spec(), i, axis_coord(w.spec(), x, i));
    if (!std::isfinite(lv)) throw DomainError("log_evaluate_weight: non-finite weight value");
    return lv;
}

Weight unit_weight(const GroupSpec& spec) {
    std::vector<AxisFactor> factors(spec.num_axes(), ConstantFactor{1.0});
    return Weight(spec, std::move(factors));
}

// --- submultiplicativity ---------------------------------------------------

namespace {

/// Dense log-value table over the ball of the given radius, indexed by the
/// same odometer order enumerate_ball produces.
struct BallTable {
    GroupSpec spec;
    std::int64_t radius;
    std::vector<double> logw;

    BallTable(const Weight& w, std::int64_t radius, std::int64_t cap) : spec(w.spec()), radius(radius) {
        auto ball = enumerate_ball(spec, radius, cap);
        logw.reserve(ball.size());
        for (const auto& e : ball) logw.push_back(log_evaluate_weight(w, e));
    }

    double at(const GroupElement& e) const {
        std::size_t idx = 0;
        for (int j = 0; j < spec.free_rank; ++j)
            idx = idx * static_cast<std::size_t>(2 * radius + 1) +
                  static_cast<std::size_t>(e.free[j] + radius);
        for (std::size_t t = 0; t < spec.torsion_orders.size(); ++t)
            idx = idx * static_cast<std::size_t>(spec.torsion_orders[t]) +
                  static_cast<std::size_t>(e.torsion[t]);
        return logw[idx];
    }
};

} // namespace

SubmultiplicativityResult check_submultiplicative(const Weight& w, std::int64_t radius,
                                                  std::int64_t cap) {
    const auto ball = enumerate_ball(w.spec(), radius, cap);
    BallTable table(w, 2 * radius, cap);
    const double slack = std::log1p(1e-12);

    SubmultiplicativityResult res;
    for (const auto& x : ball) {
        double lx = table.at(x);
        for (const auto& y : ball) {
            double excess = table.at(add(w.spec(), x, y)) - lx - table.at(y);
            if (excess > slack) {
                res.pass = false;
                res.x = x;
                res.y = y;
                res.ratio = std::exp(excess);
                return res;
            }
        }
    }
    res.pass = true;
    return res;
}

// --- weight spectral radius --------------------------------------------

namespace {

/// Exact per-axis radius contribution, when one exists. Torsion axes and
/// zero coordinates always contribute 1; a table on a free axis with a
/// nonzero step has no closed form.
std::optional<double> axis_exact_radius(const AxisFactor& f, const GroupSpec& spec,
                                        std::size_t axis, std::int64_t coord) {
    if (axis >= static_cast<std::size_t>(spec.free_rank)) return 1.0;
    if (coord == 0) return 1.0;
    double step = static_cast<double>(coord < 0 ? -coord : coord);
    if (std::holds_alternative<ConstantFactor>(f)) return 1.0;
    if (std::holds_alternative<PolyFactor>(f)) return 1.0;
    if (std::holds_alternative<SubexpFactor>(f)) return 1.0;
    if (const auto* e = std::get_if<ExpFactor>(&f)) return std::exp(e->rate * step);
    return std::nullopt;
}

} // namespace

RadiusEstimate weight_radius(const Weight& w, const GroupElement& x, std::int64_t max_exponent) {
    if (max_exponent < 2) throw DomainError("weight_radius: max_exponent must be >= 2");
    if (!element_belongs(w.spec(), x))
        throw DomainError("weight_radius: element does not belong to the weight's group");

    RadiusEstimate out;
    double exact = 1.0;
    bool all_exact = true;
    for (std::size_t i = 0; i < w.factors().size(); ++i) {
        auto c = axis_exact_radius(w.factors()[i], w.spec(), i, axis_coord(w.spec(), x, i));
        if (c)
            exact *= *c;
        else
            all_exact = false;
    }
    if (all_exact) {
        out.exact = true;
        out.exact_value = exact;
    }

    // Doubling ladder; log w(n x) is subadditive in n, so the running min is
    // a certified upper bound decreasing to r_w(x).
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t n = 1; n <= max_exponent; n *= 2) {
        double lw;
        try {
            lw = log_evaluate_weight(w, multiple(w.spec(), x, n));
        } catch (const DomainError&) {
            if (n == 1) throw; // not even w(x) is available
            break;             // strict table window exhausted; keep what we have
        }
        best = std::min(best, lw / static_cast<double>(n));
        out.n_reached = n;
        out.log_w_top = lw;
        if (n > max_exponent / 2) break; // avoid overflowing the loop variable
    }
    out.estimate = std::exp(best);
    return out;
}

std::vector<std::pair<std::int64_t, double>> weight_radius_ladder(const Weight& w,
                                                                  const GroupElement& x,
                                                                  std::int64_t max_exponent) {
    std::vector<std::pair<std::int64_t, double>> out;
    for (std::int64_t n = 1; n <= max_exponent; n *= 2) {
        double lw;
        try {
            lw = log_evaluate_weight(w, multiple(w.spec(), x, n));
        } catch (const DomainError&) {
            if (n == 1) throw;
            break;
        }
        out.emplace_back(n, std::exp(lw / static_cast<double>(n)));
        if (n > max_exponent / 2) break;
    }
    return out;
}

// --- nonquasianalyticity sums ---------------------------------------------

DomarSums bd_partial_sums(const Weight& w, const GroupElement& x,
                          const std::vector<std::int64_t>& n_ladder) {
    if (n_ladder.empty()) throw DomainError("bd_partial_sums: empty ladder");
    for (std::size_t i = 0; i < n_ladder.size(); ++i) {
        if (n_ladder[i] < 1 || (i > 0 && n_ladder[i] <= n_ladder[i - 1]))
            throw DomainError("bd_partial_sums: ladder must be ascending and >= 1");
    }

    DomarSums out;
    const GroupElement minus_x = inverse(w.spec(), x);
    double s = 0.0;
    std::size_t rung = 0;
    for (std::int64_t n = 1; n <= n_ladder.back(); ++n) {
        double lp = log_evaluate_weight(w, multiple(w.spec(), x, n));
        double lm = log_evaluate_weight(w, multiple(w.spec(), minus_x, n));
        if (lp < -1e-12 || lm < -1e-12) out.w_below_one = true;
        s += (lp + lm) / (1.0 + static_cast<double>(n) * static_cast<double>(n));
        if (n == n_ladder[rung]) {
            out.sums.emplace_back(n, s);
            ++rung;
        }
    }
    return out;
}

// --- classification ---------------------------------------------------------

std::string to_string(WeightVerdict v) {
    switch (v) {
        case WeightVerdict::RegularNonquasianalytic: return "regular_nonquasianalytic";
        case WeightVerdict::NotRegular: return "not_regular";
        case WeightVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

std::int64_t auto_check_radius(const Weight& w) {
    // Largest radius whose pair scan stays small; strict table windows on
    // free axes clip it further so the 2r sums remain evaluable.
    std::int64_t r = 12;
    const auto& spec = w.spec();
    while (r > 1) {
        double count = 1.0;
        for (int j = 0; j < spec.free_rank; ++j) count *= static_cast<double>(2 * r + 1);
        for (auto m : spec.torsion_orders) count *= static_cast<double>(m);
        if (count <= 2500.0) break;
        --r;
    }
    for (std::size_t i = 0; i < w.factors().size(); ++i) {
        if (i >= static_cast<std::size_t>(spec.free_rank)) continue;
        const auto* t = std::get_if<TableFactor>(&w.factors()[i]);
        if (!t || t->extension != TableExtension::Strict) continue;
        std::int64_t hi = t->window_lo + static_cast<std::int64_t>(t->values.size()) - 1;
        std::int64_t reach = std::min(-t->window_lo, hi) / 2;
        r = std::clamp<std::int64_t>(reach, 1, r);
    }
    return r;
}

bool free_axis_is_divergent_family(const AxisFactor& f) {
    const auto* e = std::get_if<ExpFactor>(&f);
    return e && e->rate > 0.0;
}

} // namespace

ClassificationReport classify_weight(const Weight& w, const ClassifyOptions& opts) {
    ClassificationReport report;

    std::int64_t radius = opts.check_radius > 0 ? opts.check_radius : auto_check_radius(w);
    auto sub = check_submultiplicative(w, radius);
    if (!sub.pass)
        throw SubmultiplicativityError("classify_weight: weight is not submultiplicative at x=" +
                                           sub.x.to_string() + ", y=" + sub.y.to_string() +
                                           " (ratio " + std::to_string(sub.ratio) + ")",
                                       sub);

    Weight wn = w;
    double at0 = w.value_at_identity();
    if (at0 != 1.0) {
        wn = w.normalized_at_identity();
        report.rescaled = true;
        report.rescale_factor = at0;
        report.notes.push_back("weight rescaled axis-wise so w(0) = 1");
    }

    const auto& spec = wn.spec();
    bool free_axes_family = true;
    bool family_divergent = false;
    for (int j = 0; j < spec.free_rank; ++j) {
        if (factor_is_table(wn.factors()[j])) free_axes_family = false;
        if (free_axis_is_divergent_family(wn.factors()[j])) family_divergent = true;
    }
    report.family_exact = free_axes_family;

    // Evidence per generator: radius ladder for +/- free generators and
    // torsion generators; two-sided Domar sums attached to the + entries.
    bool all_radii_near_one = true;
    bool radius_lower_evidence = false;
    bool domar_cauchy = true;
    bool domar_available = true;

    auto add_evidence = [&](const GroupElement& g, bool with_domar) {
        GeneratorEvidence ev;
        ev.generator = g;
        ev.radius = weight_radius(wn, g, opts.max_exponent);
        if (ev.radius.best() > 1.0 + opts.tolerance) all_radii_near_one = false;
        if (!ev.radius.exact) {
            // "sustained at the largest n": the certified upper bound stayed
            // above 1 + 10 tol through a ladder that ran to full depth. A
            // ladder truncated by a strict table window proves nothing.
            if (ev.radius.estimate >= 1.0 + 10.0 * opts.tolerance &&
                ev.radius.n_reached > opts.max_exponent / 2)
                radius_lower_evidence = true;
        } else if (ev.radius.exact_value >= 1.0 + 10.0 * opts.tolerance) {
            radius_lower_evidence = true;
        }
        if (ev.radius.best() <= 1.0 + opts.tolerance &&
            ev.radius.log_w_top > std::log1p(opts.tolerance)) {
            report.radius_vs_limit_discrepancy = true;
        }
        if (with_domar) {
            try {
                auto ds = bd_partial_sums(wn, g, opts.domar_ladder);
                ev.domar_sums = ds.sums;
                if (ds.w_below_one) report.w_below_one = true;
                if (ds.sums.size() >= 2) {
                    ev.domar_top_gap =
                        std::abs(ds.sums.back().second - ds.sums[ds.sums.size() - 2].second);
                    if (ev.domar_top_gap >= opts.tolerance) domar_cauchy = false;
                }
            } catch (const DomainError&) {
                domar_available = false; // strict table window too small for the ladder
            }
        }
        report.evidence.push_back(std::move(ev));
    };

    for (int j = 0; j < spec.free_rank; ++j) {
        add_evidence(axis_generator(spec, static_cast<std::size_t>(j), +1), true);
        add_evidence(axis_generator(spec, static_cast<std::size_t>(j), -1), false);
    }
    for (std::size_t t = 0; t < spec.torsion_orders.size(); ++t)
        add_evidence(axis_generator(spec, static_cast<std::size_t>(spec.free_rank) + t, +1), true);
    if (report.evidence.empty()) add_evidence(identity_element(spec), false); // trivial group

    if (report.radius_vs_limit_discrepancy)
        report.notes.push_back("r_w(x) = 1 on some generator while w(n x) itself does not tend to 1; "
                               "the classifier uses the n-th root form");

    if (family_divergent) {
        report.verdict = WeightVerdict::NotRegular;
        return report;
    }
    if (free_axes_family) {
        // poly/subexp/const on every free axis: r_w == 1 and the Domar series
        // converges, in closed form; torsion axes never affect the verdict.
        report.verdict = WeightVerdict::RegularNonquasianalytic;
        return report;
    }

    // Heuristic path for tabulated free axes.
    if (radius_lower_evidence) {
        report.verdict = WeightVerdict::NotRegular;
    } else if (all_radii_near_one && domar_cauchy && domar_available && !report.w_below_one) {
        report.verdict = WeightVerdict::RegularNonquasianalytic;
    } else {
        report.verdict = WeightVerdict::Inconclusive;
        if (!domar_available)
            report.notes.push_back("Domar ladder not evaluable inside the table window");
        if (report.w_below_one)
            report.notes.push_back("w < 1 on some orbit even after rescaling; the "
                                   "classification theorem's normalization fails");
    }
    return report;
}

// --- growth diagnostics -------------------------------------------------------

WeightDiagnostics weight_diagnostics(const Weight& w, std::int64_t radius, std::int64_t cap) {
    const auto ball = enumerate_ball(w.spec(), radius, cap);
    BallTable table(w, 2 * radius, cap);

    WeightDiagnostics d;
    double best_star = -std::numeric_limits<double>::infinity();
    double best_omega = std::numeric_limits<double>::infinity();
    for (const auto& x : ball) {
        double ls = table.at(x) + table.at(inverse(w.spec(), x));
        if (ls > best_star) {
            best_star = ls;
            d.argmax_wstar = x;
        }
    }
    for (const auto& x : ball) {
        double lx = table.at(x);
        for (const auto& y : ball) {
            double lo = table.at(add(w.spec(), x, y)) - lx - table.at(y);
            if (lo < best_omega) {
                best_omega = lo;
                d.argmin_omega_x = x;
                d.argmin_omega_y = y;
            }
        }
    }
    d.sup_wstar = std::exp(best_star);
    d.inf_omega = std::exp(best_omega);
    return d;
}

} // namespace wga
