#include "wga/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wga/fft.hpp"

namespace wga {

AlgebraElement::AlgebraElement(GroupSpec spec, Support amplitudes)
    : spec_(std::move(spec)), amplitudes_(std::move(amplitudes)) {
    for (auto it = amplitudes_.begin(); it != amplitudes_.end();) {
        if (!element_belongs(spec_, it->first))
            throw DomainError("algebra element support point outside the group spec");
        if (std::abs(it->second) <= kAmplitudeCleanup)
            it = amplitudes_.erase(it);
        else
            ++it;
    }
}

Complex AlgebraElement::at(const GroupElement& x) const {
    auto it = amplitudes_.find(x);
    return it == amplitudes_.end() ? Complex{0.0, 0.0} : it->second;
}

void AlgebraElement::add_at(const GroupElement& x, Complex amplitude) {
    if (!element_belongs(spec_, x))
        throw DomainError("algebra element support point outside the group spec");
    auto [it, inserted] = amplitudes_.try_emplace(x, amplitude);
    if (!inserted) it->second += amplitude;
    if (std::abs(it->second) <= kAmplitudeCleanup) amplitudes_.erase(it);
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
    if (spec_ != other.spec_) throw DomainError("algebra elements belong to different groups");
    AlgebraElement out = *this;
    for (const auto& [x, a] : other.amplitudes_) out.add_at(x, a);
    return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const {
    if (spec_ != other.spec_) throw DomainError("algebra elements belong to different groups");
    AlgebraElement out = *this;
    for (const auto& [x, a] : other.amplitudes_) out.add_at(x, -a);
    return out;
}

AlgebraElement AlgebraElement::operator*(Complex scalar) const {
    AlgebraElement out(spec_);
    if (std::abs(scalar) <= kAmplitudeCleanup) return out;
    for (const auto& [x, a] : amplitudes_) out.add_at(x, a * scalar);
    return out;
}

AlgebraElement delta(const GroupSpec& spec, const GroupElement& x, Complex amplitude) {
    AlgebraElement out(spec);
    out.add_at(x, amplitude);
    return out;
}

namespace {

AlgebraElement convolve_direct(const AlgebraElement& f, const AlgebraElement& g) {
    AlgebraElement out(f.spec());
    for (const auto& [x, a] : f.support())
        for (const auto& [y, b] : g.support()) out.add_at(add(f.spec(), x, y), a * b);
    return out;
}

struct FreeBox {
    std::vector<std::int64_t> lo, hi;
};

FreeBox free_bounding_box(const AlgebraElement& f) {
    const int d = f.spec().free_rank;
    FreeBox box;
    box.lo.assign(d, 0);
    box.hi.assign(d, 0);
    bool first = true;
    for (const auto& [x, a] : f.support()) {
        (void)a;
        for (int j = 0; j < d; ++j) {
            if (first || x.free[j] < box.lo[j]) box.lo[j] = x.free[j];
            if (first || x.free[j] > box.hi[j]) box.hi[j] = x.free[j];
        }
        first = false;
    }
    return box;
}

AlgebraElement convolve_fft(const AlgebraElement& f, const AlgebraElement& g, bool& overflow) {
    const GroupSpec& spec = f.spec();
    const int d = spec.free_rank;
    FreeBox bf = free_bounding_box(f);
    FreeBox bg = free_bounding_box(g);

    // Output grid: Minkowski sum of the free bounding boxes, full cycles on
    // torsion axes.
    std::vector<int> dims;
    std::vector<std::int64_t> out_lo(d);
    std::size_t cells = 1;
    for (int j = 0; j < d; ++j) {
        std::int64_t len = (bf.hi[j] - bf.lo[j]) + (bg.hi[j] - bg.lo[j]) + 1;
        out_lo[j] = bf.lo[j] + bg.lo[j];
        if (len > (std::int64_t{1} << 26)) {
            overflow = true;
            return AlgebraElement(spec);
        }
        dims.push_back(static_cast<int>(len));
        cells *= static_cast<std::size_t>(len);
        if (cells > kFftGridCap) {
            overflow = true;
            return AlgebraElement(spec);
        }
    }
    for (auto m : spec.torsion_orders) {
        dims.push_back(static_cast<int>(m));
        cells *= static_cast<std::size_t>(m);
        if (cells > kFftGridCap) {
            overflow = true;
            return AlgebraElement(spec);
        }
    }
    overflow = false;

    auto flat_index = [&](const GroupElement& x, const std::vector<std::int64_t>& lo) {
        std::size_t idx = 0;
        for (int j = 0; j < d; ++j)
            idx = idx * static_cast<std::size_t>(dims[j]) + static_cast<std::size_t>(x.free[j] - lo[j]);
        for (std::size_t t = 0; t < spec.torsion_orders.size(); ++t)
            idx = idx * static_cast<std::size_t>(dims[d + t]) + static_cast<std::size_t>(x.torsion[t]);
        return idx;
    };

    std::vector<Complex> fa(cells, Complex{0.0, 0.0});
    std::vector<Complex> ga(cells, Complex{0.0, 0.0});
    for (const auto& [x, a] : f.support()) fa[flat_index(x, bf.lo)] = a;
    for (const auto& [x, a] : g.support()) ga[flat_index(x, bg.lo)] = a;

    if (!dims.empty()) {
        dft_nd(fa, dims, -1);
        dft_nd(ga, dims, -1);
    }
    for (std::size_t i = 0; i < cells; ++i) fa[i] *= ga[i];
    if (!dims.empty()) dft_nd(fa, dims, +1);

    const double scale = 1.0 / static_cast<double>(cells);
    double peak = 0.0;
    for (const auto& v : fa) peak = std::max(peak, std::abs(v));
    peak *= scale;
    // Grid roundoff floor: entries this far below the peak (or below the
    // input scale, when the true product cancels to zero) are transform noise.
    const double input_scale = norm_l1(f) * norm_l1(g);
    const double floor = std::max({kAmplitudeCleanup, 1e-13 * peak, 1e-14 * input_scale});

    AlgebraElement out(spec);
    GroupElement x = identity_element(spec);
    std::vector<std::size_t> odo(dims.size(), 0);
    for (std::size_t i = 0; i < cells; ++i) {
        Complex v = fa[i] * scale;
        if (std::abs(v) > floor) {
            for (int j = 0; j < d; ++j) x.free[j] = static_cast<std::int64_t>(odo[j]) + out_lo[j];
            for (std::size_t t = 0; t < spec.torsion_orders.size(); ++t)
                x.torsion[t] = static_cast<std::int64_t>(odo[d + t]);
            out.add_at(x, v);
        }
        for (std::size_t k = dims.size(); k-- > 0;) {
            if (++odo[k] < static_cast<std::size_t>(dims[k])) break;
            odo[k] = 0;
        }
    }
    return out;
}

} // namespace

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g, ConvolvePath path,
                        ConvolveInfo* info) {
    if (f.spec() != g.spec()) throw DomainError("convolve: elements belong to different groups");
    if (info) *info = ConvolveInfo{};
    if (f.is_zero() || g.is_zero()) return AlgebraElement(f.spec());

    if (path == ConvolvePath::Auto)
        path = f.support_size() * g.support_size() <= kDirectPathThreshold ? ConvolvePath::Direct
                                                                           : ConvolvePath::Fft;
    if (path == ConvolvePath::Fft) {
        bool overflow = false;
        AlgebraElement out = convolve_fft(f, g, overflow);
        if (!overflow) {
            if (info) info->used_fft = true;
            return out;
        }
        if (info) info->fft_fallback = true;
    }
    return convolve_direct(f, g);
}

AlgebraElement involution(const AlgebraElement& f) {
    AlgebraElement out(f.spec());
    for (const auto& [x, a] : f.support()) out.add_at(inverse(f.spec(), x), std::conj(a));
    return out;
}

AlgebraElement power(const AlgebraElement& f, std::int64_t n, std::size_t support_cap) {
    if (n < 1) throw DomainError("power: exponent must be >= 1");
    // Left-to-right binary method: square, then multiply by f on set bits.
    int top = 63;
    while (top > 0 && ((n >> top) & 1) == 0) --top;
    AlgebraElement acc = f;
    std::int64_t achieved = 1;
    for (int bit = top - 1; bit >= 0; --bit) {
        std::int64_t prev = achieved;
        acc = convolve(acc, acc);
        achieved *= 2;
        if ((n >> bit) & 1) {
            acc = convolve(acc, f);
            achieved += 1;
        }
        if (acc.support_size() > support_cap)
            throw ResourceError("power: support exceeds the memory cap", prev);
    }
    return acc;
}

double norm_l1w(const AlgebraElement& f, const Weight& w) {
    if (f.spec() != w.spec()) throw DomainError("norm_l1w: weight on a different group");
    double s = 0.0;
    for (const auto& [x, a] : f.support()) s += std::abs(a) * evaluate_weight(w, x);
    return s;
}

double norm_l1(const AlgebraElement& f) {
    double s = 0.0;
    for (const auto& [x, a] : f.support()) {
        (void)x;
        s += std::abs(a);
    }
    return s;
}

DualElement::DualElement(GroupSpec spec, Values values)
    : spec_(std::move(spec)), values_(std::move(values)) {
    for (const auto& [x, v] : values_) {
        (void)v;
        if (!element_belongs(spec_, x))
            throw DomainError("dual element window point outside the group spec");
    }
}

Complex DualElement::at(const GroupElement& x) const {
    auto it = values_.find(x);
    return it == values_.end() ? Complex{0.0, 0.0} : it->second;
}

void DualElement::set(const GroupElement& x, Complex value) {
    if (!element_belongs(spec_, x))
        throw DomainError("dual element window point outside the group spec");
    values_[x] = value;
}

double norm_inf_inv_w(const DualElement& g, const Weight& w) {
    if (g.spec() != w.spec()) throw DomainError("norm_inf_inv_w: weight on a different group");
    double best = 0.0;
    for (const auto& [x, v] : g.values()) best = std::max(best, std::abs(v) / evaluate_weight(w, x));
    return best;
}

DualPairing dual_pair(const AlgebraElement& f, const DualElement& g, const Weight& w) {
    if (f.spec() != g.spec()) throw DomainError("dual_pair: elements belong to different groups");
    DualPairing out;
    out.value = Complex{0.0, 0.0};
    for (const auto& [x, a] : f.support()) out.value += a * g.at(x);
    out.bound_ok = std::abs(out.value) <= norm_inf_inv_w(g, w) * norm_l1w(f, w) + 1e-12;
    return out;
}

DualElement attaining_dual(const AlgebraElement& f, const Weight& w) {
    if (f.spec() != w.spec()) throw DomainError("attaining_dual: weight on a different group");
    DualElement g(f.spec());
    for (const auto& [x, a] : f.support())
        g.set(x, evaluate_weight(w, x) * (std::conj(a) / std::abs(a)));
    return g;
}

NormLimitEstimate spectral_radius_normlimit(const AlgebraElement& f, const Weight& w,
                                            std::int64_t max_exponent, std::size_t support_cap) {
    if (max_exponent < 2) throw DomainError("spectral_radius_normlimit: max_exponent must be >= 2");
    if (f.is_zero()) throw DomainError("spectral_radius_normlimit: zero element");

    NormLimitEstimate out;
    double norm1 = norm_l1w(f, w);
    double log_norm = std::log(norm1); // ln ||f^n|| for the current n
    out.estimate = norm1;
    out.n_reached = 1;
    out.ladder.emplace_back(1, norm1);

    // Running renormalization: v holds f^n scaled to unit weighted norm, so
    // coefficients never overflow along the ladder.
    AlgebraElement v = f * Complex{1.0 / norm1, 0.0};
    for (std::int64_t n = 2; n <= max_exponent; n *= 2) {
        ConvolveInfo info;
        AlgebraElement sq = convolve(v, v, ConvolvePath::Auto, &info);
        out.fft_fallback = out.fft_fallback || info.fft_fallback;
        if (sq.support_size() > support_cap) {
            out.hit_resource_cap = true;
            break;
        }
        double nu = norm_l1w(sq, w);
        if (!(nu > 0.0)) break; // numerically annihilated; estimate stands
        log_norm = 2.0 * log_norm + std::log(nu);
        double rung = std::exp(log_norm / static_cast<double>(n));
        out.ladder.emplace_back(n, rung);
        out.estimate = std::min(out.estimate, rung);
        out.n_reached = n;
        v = sq * Complex{1.0 / nu, 0.0};
        if (n > max_exponent / 2) break;
    }
    return out;
}

RadiiComparison compare_radii(const AlgebraElement& f, const Weight& w, std::int64_t max_exponent) {
    RadiiComparison out;
    double m = 0.0;
    for (const auto& [x, a] : f.support()) {
        (void)a;
        m = std::max(m, evaluate_weight(w, x));
        m = std::max(m, evaluate_weight(w, inverse(w.spec(), x)));
    }
    out.weight_sup = m;
    out.r_unweighted = spectral_radius_normlimit(f, unit_weight(f.spec()), max_exponent).estimate;
    out.r_weighted = spectral_radius_normlimit(f, w, max_exponent).estimate;
    const double tol = 1e-6;
    out.sandwich_ok = out.r_weighted >= out.r_unweighted / m * (1.0 - tol) &&
                      out.r_weighted <= out.r_unweighted * m * (1.0 + tol);
    return out;
}

} // namespace wga
