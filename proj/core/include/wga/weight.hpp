#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wga/group.hpp"

namespace wga {

/// How a tabulated axis factor behaves outside its declared window.
enum class TableExtension { Strict, Clamp };

/// One multiplicative factor of a product weight, attached to a single group
/// axis. On torsion axes |n| means the cycle distance min(t, m-t).
struct ConstantFactor {
    double value = 1.0; // > 0
};
struct PolyFactor {
    double alpha = 0.0; // (1+|n|)^alpha, alpha >= 0
};
struct ExpFactor {
    double rate = 0.0; // e^{a|n|}, a >= 0
};
struct SubexpFactor {
    double rate = 0.0; // e^{a|n|^beta}, a >= 0
    double beta = 0.5; // 0 < beta < 1
};
struct TableFactor {
    std::vector<double> values;                       // strictly positive
    std::int64_t window_lo = 0;                       // free axes: window [lo, lo+size-1]
    TableExtension extension = TableExtension::Strict; // free axes only
};

using AxisFactor = std::variant<ConstantFactor, PolyFactor, ExpFactor, SubexpFactor, TableFactor>;

bool factor_is_table(const AxisFactor& f);

/// A submultiplicative weight on a GroupSpec, given as a product of per-axis
/// factors (free axes first, then torsion axes).
class Weight {
  public:
    Weight(GroupSpec spec, std::vector<AxisFactor> factors);

    const GroupSpec& spec() const { return spec_; }
    const std::vector<AxisFactor>& factors() const { return factors_; }

    bool all_family() const;      // no table factors
    bool is_constant_one() const; // w == 1 identically

    /// Weight with each factor divided by its value at 0 (so w(0) = 1).
    Weight normalized_at_identity() const;
    double value_at_identity() const;

    std::string to_string() const; // weight DSL text

  private:
    GroupSpec spec_;
    std::vector<AxisFactor> factors_;
};

/// Pointwise value w(x) > 0. Throws DomainError for a strict table factor
/// queried outside its window.
double evaluate_weight(const Weight& w, const GroupElement& x);

/// ln w(x); robust for arguments whose direct value would overflow.
double log_evaluate_weight(const Weight& w, const GroupElement& x);

/// Constant-1 weight on the given spec.
Weight unit_weight(const GroupSpec& spec);

// --- submultiplicativity -----------------------------------------------

struct SubmultiplicativityResult {
    bool pass = true;
    GroupElement x, y;  // first violating pair in enumeration order
    double ratio = 0.0; // w(x+y) / (w(x) w(y)) at the violation
};

/// Exhaustive scan of w(x+y) <= w(x)w(y)(1 + 1e-12) over the ball of the
/// given radius (pairs in lexicographic enumeration order).
SubmultiplicativityResult check_submultiplicative(const Weight& w, std::int64_t radius,
                                                  std::int64_t cap = default_enumeration_cap());

// --- weight spectral radius --------------------------------------------

struct RadiusEstimate {
    double estimate = 1.0;      // min over the doubling ladder of w(n x)^{1/n}; certified upper bound
    std::int64_t n_reached = 0; // largest exponent evaluated
    bool exact = false;         // a closed form exists
    double exact_value = 0.0;   // meaningful when exact
    /// lim_n w(n x): ln of the top-of-ladder weight value, exposed so callers
    /// can tell the w(x^n) -> 1 condition apart from w(x^n)^{1/n} -> 1.
    double log_w_top = 0.0;

    double best() const { return exact ? exact_value : estimate; }
};

/// r_w(x) = lim_n w(n x)^{1/n}, estimated on the doubling ladder
/// n in {1, 2, 4, ..., <= max_exponent}. Torsion-only x is exact 1.
RadiusEstimate weight_radius(const Weight& w, const GroupElement& x, std::int64_t max_exponent);

/// The raw ladder (n, w(n x)^{1/n}) behind weight_radius, for reporting.
std::vector<std::pair<std::int64_t, double>> weight_radius_ladder(const Weight& w,
                                                                  const GroupElement& x,
                                                                  std::int64_t max_exponent);

// --- nonquasianalyticity (Beurling-Domar) sums --------------------------

struct DomarSums {
    std::vector<std::pair<std::int64_t, double>> sums; // (N, S_N), two-sided
    bool w_below_one = false; // some ln w(n x) < 0 on the orbit: the w >= 1
                              // normalization of the classification theorem fails
};

/// Partial sums S_N = sum_{n=1..N} [ln w(n x) + ln w(-n x)] / (1 + n^2) for an
/// ascending ladder of N.
DomarSums bd_partial_sums(const Weight& w, const GroupElement& x,
                          const std::vector<std::int64_t>& n_ladder);

// --- classification ------------------------------------------------------

enum class WeightVerdict { RegularNonquasianalytic, NotRegular, Inconclusive };

std::string to_string(WeightVerdict v);

struct GeneratorEvidence {
    GroupElement generator;
    RadiusEstimate radius;
    std::vector<std::pair<std::int64_t, double>> domar_sums;
    double domar_top_gap = 0.0; // |S_{2N} - S_N| at the top of the ladder
};

struct ClassificationReport {
    WeightVerdict verdict = WeightVerdict::Inconclusive;
    bool family_exact = false;
    std::vector<GeneratorEvidence> evidence; // one entry per +/- free generator and torsion generator
    bool rescaled = false;                   // w was replaced by w / w(0), axis-wise
    double rescale_factor = 1.0;             // original w(0)
    bool w_below_one = false;                // w < 1 persisted after rescaling
    /// Set when some generator has r_w = 1 while w(n x) itself does not tend
    /// to 1; the two membership conditions then name different sets.
    bool radius_vs_limit_discrepancy = false;
    std::vector<std::string> notes;
};

/// Thrown when classification is refused because the weight is not
/// submultiplicative; carries the counterexample.
class SubmultiplicativityError : public DomainError {
  public:
    SubmultiplicativityError(const std::string& what, SubmultiplicativityResult counterexample)
        : DomainError(what), counterexample(std::move(counterexample)) {}

    SubmultiplicativityResult counterexample;
};

struct ClassifyOptions {
    double tolerance = 1e-3;
    std::int64_t max_exponent = 1 << 20;
    std::int64_t check_radius = -1; // -1: auto (largest radius with a small ball)
    std::vector<std::int64_t> domar_ladder = {100, 1000, 10'000, 50'000, 100'000};
};

ClassificationReport classify_weight(const Weight& w, const ClassifyOptions& opts = {});

// --- growth diagnostics ---------------------------------------------------

struct WeightDiagnostics {
    double sup_wstar = 0.0; // sup over the ball of w(x) w(-x)
    GroupElement argmax_wstar;
    double inf_omega = 0.0; // inf over pairs of w(x+y) / (w(x) w(y))
    GroupElement argmin_omega_x, argmin_omega_y;
};

WeightDiagnostics weight_diagnostics(const Weight& w, std::int64_t radius,
                                     std::int64_t cap = default_enumeration_cap());

} // namespace wga
