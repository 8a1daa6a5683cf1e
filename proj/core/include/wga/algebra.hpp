#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>

#include "wga/group.hpp"
#include "wga/weight.hpp"

namespace wga {

using Complex = std::complex<double>;

/// Amplitudes with magnitude at or below this are dropped after arithmetic;
/// far below every test tolerance in the library.
inline constexpr double kAmplitudeCleanup = 1e-30;

/// A finitely supported complex function on the group: an element of the
/// weighted convolution algebra. Stored sparsely; no zeros are kept, so the
/// weighted norm is automatically finite.
class AlgebraElement {
  public:
    using Support = std::map<GroupElement, Complex>;

    explicit AlgebraElement(GroupSpec spec) : spec_(std::move(spec)) {}
    AlgebraElement(GroupSpec spec, Support amplitudes);

    const GroupSpec& spec() const { return spec_; }
    const Support& support() const { return amplitudes_; }
    std::size_t support_size() const { return amplitudes_.size(); }
    bool is_zero() const { return amplitudes_.empty(); }

    Complex at(const GroupElement& x) const;

    /// Accumulate into one coefficient; entries at or below the cleanup
    /// threshold are removed.
    void add_at(const GroupElement& x, Complex amplitude);

    AlgebraElement operator+(const AlgebraElement& other) const;
    AlgebraElement operator-(const AlgebraElement& other) const;
    AlgebraElement operator*(Complex scalar) const;

  private:
    GroupSpec spec_;
    Support amplitudes_;
};

/// Point mass with the given amplitude.
AlgebraElement delta(const GroupSpec& spec, const GroupElement& x, Complex amplitude = 1.0);

enum class ConvolvePath { Auto, Direct, Fft };

/// Direct path below this product of support sizes, FFT above; correctness
/// never depends on the value.
inline constexpr std::size_t kDirectPathThreshold = 4096;

/// Cells cap for the FFT grid; beyond it the FFT path falls back to direct.
inline constexpr std::size_t kFftGridCap = std::size_t{1} << 26;

struct ConvolveInfo {
    bool used_fft = false;
    bool fft_fallback = false; // FFT grid would overflow; direct path used instead
};

/// Convolution f * g. The direct path is exact summation; the FFT path
/// zero-pads free axes to the Minkowski sum of the support bounding boxes and
/// transforms torsion axes cyclically at their natural size.
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g,
                        ConvolvePath path = ConvolvePath::Auto, ConvolveInfo* info = nullptr);

/// f*(x) = conj(f(-x)).
AlgebraElement involution(const AlgebraElement& f);

/// n-fold convolution power by repeated squaring. Throws ResourceError
/// (carrying the largest achievable n) if an intermediate support exceeds
/// support_cap.
AlgebraElement power(const AlgebraElement& f, std::int64_t n,
                     std::size_t support_cap = std::size_t{4} << 20);

/// Weighted l1 norm: sum over the support of |f(x)| w(x).
double norm_l1w(const AlgebraElement& f, const Weight& w);

/// Unweighted l1 norm.
double norm_l1(const AlgebraElement& f);

/// A member of the dual space: values on a finite window, 0 outside.
class DualElement {
  public:
    using Values = std::map<GroupElement, Complex>;

    explicit DualElement(GroupSpec spec) : spec_(std::move(spec)) {}
    DualElement(GroupSpec spec, Values values);

    const GroupSpec& spec() const { return spec_; }
    const Values& values() const { return values_; }
    Complex at(const GroupElement& x) const;
    void set(const GroupElement& x, Complex value);

  private:
    GroupSpec spec_;
    Values values_;
};

/// sup |g(x)| / w(x); finite automatically for a finite window.
double norm_inf_inv_w(const DualElement& g, const Weight& w);

struct DualPairing {
    Complex value;
    bool bound_ok = false; // |value| <= ||g||_{inf,1/w} ||f||_{1,w} + 1e-12
};

/// The dual pairing <f, g> = sum f(x) g(x), with the norm inequality checked.
DualPairing dual_pair(const AlgebraElement& f, const DualElement& g, const Weight& w);

/// The norm-attaining functional for f: g(x) = w(x) conj(f(x)) / |f(x)| on
/// the support, so that ||g||_{inf,1/w} = 1 and <f, g> = ||f||_{1,w}.
DualElement attaining_dual(const AlgebraElement& f, const Weight& w);

struct NormLimitEstimate {
    double estimate = 0.0;      // min over the ladder of ||f^n||^{1/n}; upper bound on r(f)
    std::int64_t n_reached = 0; // largest power actually evaluated
    bool hit_resource_cap = false;
    bool fft_fallback = false;  // some squaring fell back from the FFT path
    std::vector<std::pair<std::int64_t, double>> ladder; // (n, ||f^n||^{1/n}) per rung
};

/// Spectral radius upper bound from the norm sequence on the doubling ladder
/// n = 1, 2, 4, ..., <= max_exponent. Powers are computed with running
/// renormalization so coefficient magnitudes never overflow.
NormLimitEstimate spectral_radius_normlimit(const AlgebraElement& f, const Weight& w,
                                            std::int64_t max_exponent,
                                            std::size_t support_cap = std::size_t{4} << 20);

struct RadiiComparison {
    double r_unweighted = 0.0;
    double r_weighted = 0.0;
    double weight_sup = 1.0; // M = sup of w over supp(f) and its reflection
    bool sandwich_ok = false;
};

/// Both radius estimates on the same ladder together with the comparison
/// constant M and the sandwich check r_w in [r/M, M r] (1e-6 relative slack).
RadiiComparison compare_radii(const AlgebraElement& f, const Weight& w,
                              std::int64_t max_exponent);

} // namespace wga
