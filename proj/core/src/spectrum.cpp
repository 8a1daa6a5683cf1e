#include "wga/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "wga/fft.hpp"

namespace wga {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex cpow_int(Complex z, std::int64_t n) {
    if (n == 0) return Complex{1.0, 0.0};
    bool neg = n < 0;
    std::uint64_t e = neg ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    Complex base = z;
    Complex acc{1.0, 0.0};
    while (e) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return neg ? Complex{1.0, 0.0} / acc : acc;
}

Complex root_of_unity(std::int64_t k, std::int64_t m) {
    return std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(m));
}

} // namespace

Character Character::trivial(const GroupSpec& spec) {
    Character chi;
    chi.spec = spec;
    chi.free_coords.assign(static_cast<std::size_t>(spec.free_rank), Complex{1.0, 0.0});
    chi.torsion_indices.assign(spec.torsion_orders.size(), 0);
    return chi;
}

Character make_character(const GroupSpec& spec, std::vector<Complex> free_coords,
                         std::vector<std::int64_t> torsion_indices) {
    if (free_coords.size() != static_cast<std::size_t>(spec.free_rank) ||
        torsion_indices.size() != spec.torsion_orders.size())
        throw DomainError("make_character: coordinate counts do not match the group spec");
    for (const auto& z : free_coords)
        if (!(std::abs(z) > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw DomainError("make_character: free coordinates must be nonzero and finite");
    for (std::size_t t = 0; t < torsion_indices.size(); ++t) {
        std::int64_t m = spec.torsion_orders[t];
        torsion_indices[t] = ((torsion_indices[t] % m) + m) % m;
    }
    Character chi;
    chi.spec = spec;
    chi.free_coords = std::move(free_coords);
    chi.torsion_indices = std::move(torsion_indices);
    return chi;
}

Complex character_eval(const Character& chi, const GroupElement& x) {
    if (!element_belongs(chi.spec, x))
        throw DomainError("character_eval: element does not belong to the character's group");
    double log_mag = 0.0;
    for (std::size_t j = 0; j < chi.free_coords.size(); ++j)
        log_mag += static_cast<double>(x.free[j]) * std::log(std::abs(chi.free_coords[j]));
    if (std::abs(log_mag) > 700.0) {
        std::ostringstream os;
        os << "character_eval: |chi(x)| overflows at exponent " << x.to_string();
        throw DomainError(os.str());
    }
    Complex v{1.0, 0.0};
    for (std::size_t j = 0; j < chi.free_coords.size(); ++j)
        v *= cpow_int(chi.free_coords[j], x.free[j]);
    for (std::size_t t = 0; t < chi.torsion_indices.size(); ++t)
        v *= root_of_unity(chi.torsion_indices[t] * x.torsion[t], chi.spec.torsion_orders[t]);
    return v;
}

bool CharacterSpace::is_torus(double tol) const {
    for (const auto& a : annuli)
        if (std::abs(a.r_minus - 1.0) > tol || std::abs(a.r_plus - 1.0) > tol) return false;
    return true;
}

CharacterSpace character_space(const Weight& w, std::int64_t max_exponent) {
    CharacterSpace cs;
    cs.spec = w.spec();
    cs.torsion_cycles = w.spec().torsion_orders;
    for (int j = 0; j < w.spec().free_rank; ++j) {
        auto plus = weight_radius(w, axis_generator(w.spec(), static_cast<std::size_t>(j), +1),
                                  max_exponent);
        auto minus = weight_radius(w, axis_generator(w.spec(), static_cast<std::size_t>(j), -1),
                                   max_exponent);
        AnnulusBounds a;
        a.exact = plus.exact && minus.exact;
        a.r_plus = plus.best();
        a.r_minus = 1.0 / minus.best();
        a.bracket_width = a.exact ? 0.0 : a.r_plus - a.r_minus;
        cs.annuli.push_back(a);
    }
    return cs;
}

CharacterValidation validate_character(const CharacterSpace& cs, const Character& chi) {
    if (cs.spec != chi.spec)
        throw DomainError("validate_character: character on a different group");
    CharacterValidation v;
    const double eps = 1e-9;
    for (std::size_t j = 0; j < cs.annuli.size(); ++j) {
        double mod = std::abs(chi.free_coords[j]);
        if (mod < cs.annuli[j].r_minus - eps || mod > cs.annuli[j].r_plus + eps) {
            v.pass = false;
            v.axis = j;
            v.modulus = mod;
            v.r_minus = cs.annuli[j].r_minus;
            v.r_plus = cs.annuli[j].r_plus;
            return v;
        }
    }
    return v;
}

Complex gelfand_eval(const AlgebraElement& f, const Character& chi) {
    if (f.spec() != chi.spec) throw DomainError("gelfand_eval: character on a different group");
    Complex s{0.0, 0.0};
    for (const auto& [x, a] : f.support()) s += a * character_eval(chi, x);
    return s;
}

// --- boundary-circle spectral radius oracle ---------------------------------

OracleResult spectral_radius_oracle(const AlgebraElement& f, const CharacterSpace& cs,
                                    std::int64_t samples_per_circle) {
    if (f.spec() != cs.spec)
        throw DomainError("spectral_radius_oracle: character space on a different group");
    const int d = f.spec().free_rank;

    std::vector<std::int64_t> span(static_cast<std::size_t>(d), 0);
    for (const auto& [x, a] : f.support()) {
        (void)a;
        for (int j = 0; j < d; ++j)
            span[static_cast<std::size_t>(j)] =
                std::max(span[static_cast<std::size_t>(j)], std::abs(x.free[j]));
    }
    std::int64_t required = 8;
    for (int j = 0; j < d; ++j) required = std::max(required, 8 * span[static_cast<std::size_t>(j)]);
    if (samples_per_circle < required)
        throw ResourceError("spectral_radius_oracle: sampling too coarse for the support span; "
                            "need at least " + std::to_string(required) + " samples per circle",
                            required);

    // Boundary radii per free axis (deduplicated when the annulus is a circle).
    std::vector<std::vector<double>> radii(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const auto& a = cs.annuli[static_cast<std::size_t>(j)];
        radii[static_cast<std::size_t>(j)].push_back(a.r_minus);
        if (a.r_plus > a.r_minus * (1.0 + 1e-15)) radii[static_cast<std::size_t>(j)].push_back(a.r_plus);
    }

    const std::int64_t m_samples = samples_per_circle;
    std::vector<Complex> unit_roots(static_cast<std::size_t>(m_samples));
    for (std::int64_t k = 0; k < m_samples; ++k)
        unit_roots[static_cast<std::size_t>(k)] = root_of_unity(k, m_samples);

    OracleResult out;

    std::vector<std::size_t> combo(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<double> rho(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) rho[static_cast<std::size_t>(j)] = radii[static_cast<std::size_t>(j)][combo[static_cast<std::size_t>(j)]];

        // Lipschitz constant in each angle: sum |f(x)| |x_j| prod rho^{x}.
        std::vector<double> lip(static_cast<std::size_t>(d), 0.0);
        for (const auto& [x, a] : f.support()) {
            double mag = std::abs(a);
            for (int j = 0; j < d; ++j)
                mag *= std::pow(rho[static_cast<std::size_t>(j)], static_cast<double>(x.free[j]));
            for (int j = 0; j < d; ++j)
                lip[static_cast<std::size_t>(j)] += mag * static_cast<double>(std::abs(x.free[j]));
        }
        double bound = 0.0;
        for (int j = 0; j < d; ++j)
            bound += lip[static_cast<std::size_t>(j)] * std::numbers::pi / static_cast<double>(m_samples);
        out.sampling_bound = std::max(out.sampling_bound, bound);

        // Scan the angle grid crossed with the torsion cycles.
        std::vector<std::int64_t> grid_dims;
        for (int j = 0; j < d; ++j) grid_dims.push_back(m_samples);
        for (auto m : f.spec().torsion_orders) grid_dims.push_back(m);

        std::vector<std::int64_t> idx(grid_dims.size(), 0);
        Character chi = Character::trivial(f.spec());
        while (true) {
            for (int j = 0; j < d; ++j)
                chi.free_coords[static_cast<std::size_t>(j)] =
                    rho[static_cast<std::size_t>(j)] * unit_roots[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            for (std::size_t t = 0; t < f.spec().torsion_orders.size(); ++t)
                chi.torsion_indices[t] = idx[static_cast<std::size_t>(d) + t];
            out.value = std::max(out.value, std::abs(gelfand_eval(f, chi)));

            std::size_t k = grid_dims.size();
            bool done = true;
            while (k-- > 0) {
                if (++idx[k] < grid_dims[k]) {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
            if (done || grid_dims.empty()) break;
        }

        // Next boundary combo.
        std::size_t j = 0;
        for (; j < static_cast<std::size_t>(d); ++j) {
            if (++combo[j] < radii[j].size()) break;
            combo[j] = 0;
        }
        if (j == static_cast<std::size_t>(d)) break;
    }
    return out;
}

// --- grid sampling and inversion ---------------------------------------------

std::size_t TransformGrid::cell_count() const {
    std::size_t n = 1;
    for (auto m : sizes) n *= static_cast<std::size_t>(m);
    for (auto m : spec.torsion_orders) n *= static_cast<std::size_t>(m);
    return n;
}

TransformGrid sample_gelfand(const AlgebraElement& f, const std::vector<double>& radii,
                             const std::vector<std::int64_t>& sizes) {
    const GroupSpec& spec = f.spec();
    if (radii.size() != static_cast<std::size_t>(spec.free_rank) || sizes.size() != radii.size())
        throw DomainError("sample_gelfand: need one radius and one size per free axis");
    for (auto m : sizes)
        if (m < 1) throw DomainError("sample_gelfand: grid sizes must be >= 1");

    TransformGrid grid;
    grid.spec = spec;
    grid.radii = radii;
    grid.sizes = sizes;
    grid.data.resize(grid.cell_count());

    std::vector<std::int64_t> dims(sizes.begin(), sizes.end());
    for (auto m : spec.torsion_orders) dims.push_back(m);

    std::vector<std::int64_t> idx(dims.size(), 0);
    Character chi = Character::trivial(spec);
    for (std::size_t cell = 0; cell < grid.data.size(); ++cell) {
        for (int j = 0; j < spec.free_rank; ++j)
            chi.free_coords[static_cast<std::size_t>(j)] =
                std::polar(radii[static_cast<std::size_t>(j)],
                           kTwoPi * static_cast<double>(idx[static_cast<std::size_t>(j)]) /
                               static_cast<double>(sizes[static_cast<std::size_t>(j)]));
        for (std::size_t t = 0; t < spec.torsion_orders.size(); ++t)
            chi.torsion_indices[t] = idx[static_cast<std::size_t>(spec.free_rank) + t];
        grid.data[cell] = gelfand_eval(f, chi);

        for (std::size_t k = dims.size(); k-- > 0;) {
            if (++idx[k] < dims[k]) break;
            idx[k] = 0;
        }
    }
    return grid;
}

AlgebraElement inverse_gelfand(const TransformGrid& grid, const CharacterSpace& cs,
                               const IndexWindow& window) {
    const GroupSpec& spec = grid.spec;
    if (cs.spec != spec) throw DomainError("inverse_gelfand: character space on a different group");
    const int d = spec.free_rank;
    if (window.lo.size() != static_cast<std::size_t>(d) || window.hi.size() != window.lo.size())
        throw DomainError("inverse_gelfand: window needs lo/hi per free axis");
    for (int j = 0; j < d; ++j) {
        std::size_t js = static_cast<std::size_t>(j);
        if (window.hi[js] < window.lo[js])
            throw DomainError("inverse_gelfand: empty index window");
        if (window.hi[js] - window.lo[js] + 1 >= grid.sizes[js])
            throw DomainError("inverse_gelfand: grid must be strictly larger than the index span");
        const auto& a = cs.annuli[js];
        if (grid.radii[js] < a.r_minus - 1e-9 || grid.radii[js] > a.r_plus + 1e-9)
            throw DomainError("inverse_gelfand: grid radius outside the annulus");
    }
    if (grid.data.size() != grid.cell_count())
        throw DomainError("inverse_gelfand: grid data size mismatch");

    // The samples are a backward DFT of f(x) rho^x indexed by residues, so a
    // forward transform and 1/cells rescale recovers c_m = sum_{x = m mod M} f(x) rho^x.
    std::vector<int> dims;
    for (auto m : grid.sizes) dims.push_back(static_cast<int>(m));
    for (auto m : spec.torsion_orders) dims.push_back(static_cast<int>(m));
    std::vector<Complex> c = grid.data;
    if (!dims.empty()) dft_nd(c, dims, -1);
    const double scale = 1.0 / static_cast<double>(c.size());
    for (auto& v : c) v *= scale;

    // Covered residues per free axis: the cyclic range [lo mod M, hi mod M].
    auto covered = [&](int axis, std::int64_t residue) {
        std::size_t js = static_cast<std::size_t>(axis);
        std::int64_t m = grid.sizes[js];
        std::int64_t lo = ((window.lo[js] % m) + m) % m;
        std::int64_t len = window.hi[js] - window.lo[js] + 1;
        std::int64_t off = residue - lo;
        if (off < 0) off += m;
        return off < len;
    };

    double energy_total = 0.0, energy_out = 0.0;
    std::vector<std::int64_t> idx(dims.size(), 0);
    for (std::size_t cell = 0; cell < c.size(); ++cell) {
        double e = std::norm(c[cell]);
        energy_total += e;
        for (int j = 0; j < d; ++j) {
            if (!covered(j, idx[static_cast<std::size_t>(j)])) {
                energy_out += e;
                break;
            }
        }
        for (std::size_t k = dims.size(); k-- > 0;) {
            if (++idx[k] < dims[k]) break;
            idx[k] = 0;
        }
    }
    if (energy_total == 0.0) return AlgebraElement(spec); // transform vanished: f = 0
    if (energy_out / energy_total > 1e-8)
        throw AliasingError("inverse_gelfand: energy outside the declared index window "
                            "(declared span too small?)",
                            energy_out / energy_total);

    // Read the window back out, descaling the radii.
    AlgebraElement out(spec);
    double peak = 0.0;
    for (const auto& v : c) peak = std::max(peak, std::abs(v));

    std::vector<std::int64_t> xfree(static_cast<std::size_t>(d), 0);
    for (int j = 0; j < d; ++j) xfree[static_cast<std::size_t>(j)] = window.lo[static_cast<std::size_t>(j)];
    bool more = true;
    while (more) {
        std::size_t cell = 0;
        for (int j = 0; j < d; ++j) {
            std::size_t js = static_cast<std::size_t>(j);
            std::int64_t m = grid.sizes[js];
            std::int64_t res = ((xfree[js] % m) + m) % m;
            cell = cell * static_cast<std::size_t>(m) + static_cast<std::size_t>(res);
        }
        std::size_t torsion_cells = 1;
        for (auto m : spec.torsion_orders) torsion_cells *= static_cast<std::size_t>(m);
        cell *= torsion_cells;

        double rho_pow = 1.0;
        for (int j = 0; j < d; ++j)
            rho_pow *= std::pow(grid.radii[static_cast<std::size_t>(j)],
                                -static_cast<double>(xfree[static_cast<std::size_t>(j)]));

        GroupElement x = identity_element(spec);
        x.free = xfree;
        std::vector<std::int64_t> tidx(spec.torsion_orders.size(), 0);
        for (std::size_t tc = 0; tc < torsion_cells; ++tc) {
            x.torsion = tidx;
            Complex v = c[cell + tc] * rho_pow;
            if (std::abs(v) > 1e-13 * peak) out.add_at(x, v);
            for (std::size_t k = tidx.size(); k-- > 0;) {
                if (++tidx[k] < spec.torsion_orders[k]) break;
                tidx[k] = 0;
            }
        }

        more = false;
        for (int j = d - 1; j >= 0; --j) {
            std::size_t js = static_cast<std::size_t>(j);
            if (xfree[js] < window.hi[js]) {
                ++xfree[js];
                more = true;
                break;
            }
            xfree[js] = window.lo[js];
        }
        if (d == 0) break;
    }
    return out;
}

// --- w-pointwise product ------------------------------------------------------

WPointwiseResult w_pointwise_product(const Character& chi, const Character& chi_prime,
                                     const Weight& w, std::int64_t probe_ball) {
    if (chi.spec != w.spec() || chi_prime.spec != w.spec())
        throw DomainError("w_pointwise_product: mismatched group specs");

    WPointwiseResult res;
    auto h_of = [&](const GroupElement& x) {
        return character_eval(chi, x) * character_eval(chi_prime, x) / evaluate_weight(w, x);
    };
    for (const auto& x : enumerate_ball_outward(w.spec(), probe_ball))
        res.table.emplace_back(x, h_of(x));

    const auto half = enumerate_ball_outward(w.spec(), probe_ball / 2);
    for (const auto& x : half) {
        Complex hx = h_of(x);
        for (const auto& y : half) {
            Complex lhs = h_of(add(w.spec(), x, y));
            Complex rhs = hx * h_of(y);
            if (std::abs(lhs - rhs) > 1e-9 * std::max(std::abs(lhs), std::abs(rhs))) {
                res.multiplicative = false;
                res.witness_x = x;
                res.witness_y = y;
                return res;
            }
        }
    }
    return res;
}

// --- separating elements --------------------------------------------------------

namespace {

AlgebraElement separating_by_interpolation(const CharacterSpace& cs,
                                           const std::vector<Character>& exclude,
                                           const Character& phi) {
    // Laurent interpolation on the circle: solve for coefficients on the
    // centered exponent range hitting 1 at phi and 0 on the excluded points.
    const std::size_t n = exclude.size() + 1;
    std::vector<Complex> nodes;
    nodes.push_back(phi.free_coords[0]);
    for (const auto& e : exclude) nodes.push_back(e.free_coords[0]);

    const std::int64_t e_lo = -static_cast<std::int64_t>((n - 1) / 2);
    Eigen::MatrixXcd a(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t i = 0; i < n; ++i)
            a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i)) =
                cpow_int(nodes[p], e_lo + static_cast<std::int64_t>(i));
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
    rhs(0) = Complex{1.0, 0.0};

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double cond = svd.singularValues()(0) /
                  svd.singularValues()(static_cast<Eigen::Index>(n - 1));
    if (!(cond < 1e8)) {
        double dmin = std::numeric_limits<double>::infinity();
        std::size_t pi = 0, pj = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(nodes[i] - nodes[j]) < dmin) {
                    dmin = std::abs(nodes[i] - nodes[j]);
                    pi = i;
                    pj = j;
                }
        std::ostringstream os;
        os << "separating_element: interpolation condition estimate " << cond
           << " exceeds 1e8; closest nodes " << pi << " and " << pj << " at distance " << dmin;
        throw ConditioningError(os.str(), cond);
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    Eigen::VectorXcd coef = lu.solve(rhs);
    coef += lu.solve(rhs - a * coef); // one step of iterative refinement

    AlgebraElement f(cs.spec);
    for (std::size_t i = 0; i < n; ++i) {
        GroupElement x = identity_element(cs.spec);
        x.free[0] = e_lo + static_cast<std::int64_t>(i);
        f.add_at(x, coef(static_cast<Eigen::Index>(i)));
    }
    return f;
}

AlgebraElement separating_by_factors(const CharacterSpace& cs,
                                     const std::vector<Character>& exclude, const Character& phi) {
    // One affine factor per excluded point, placed on the axis where it is
    // farthest from phi; transforms multiply under convolution.
    const GroupSpec& spec = cs.spec;
    AlgebraElement f = delta(spec, identity_element(spec));
    double cond = 1.0;
    for (const auto& e : exclude) {
        std::size_t best_axis = 0;
        double best_dist = -1.0;
        Complex ze{0, 0}, zphi{0, 0};
        for (std::size_t ax = 0; ax < spec.num_axes(); ++ax) {
            Complex ce, cp;
            if (ax < static_cast<std::size_t>(spec.free_rank)) {
                ce = e.free_coords[ax];
                cp = phi.free_coords[ax];
            } else {
                std::size_t t = ax - static_cast<std::size_t>(spec.free_rank);
                ce = root_of_unity(e.torsion_indices[t], spec.torsion_orders[t]);
                cp = root_of_unity(phi.torsion_indices[t], spec.torsion_orders[t]);
            }
            if (std::abs(cp - ce) > best_dist) {
                best_dist = std::abs(cp - ce);
                best_axis = ax;
                ze = ce;
                zphi = cp;
            }
        }
        cond *= 2.0 / best_dist;
        if (!(cond < 1e8))
            throw ConditioningError("separating_element: factor construction condition estimate "
                                    "exceeds 1e8 (points too close to the target)",
                                    cond);
        // g = (delta_{axis unit} - ze delta_0) / (zphi - ze)
        AlgebraElement g(spec);
        Complex denom = zphi - ze;
        g.add_at(axis_generator(spec, best_axis, +1), Complex{1.0, 0.0} / denom);
        g.add_at(identity_element(spec), -ze / denom);
        f = convolve(f, g);
    }
    return f;
}

} // namespace

AlgebraElement separating_element(const CharacterSpace& cs, const std::vector<Character>& exclude,
                                  const Character& phi) {
    if (!cs.is_torus())
        throw DomainError("separating_element: character space is not a torus "
                          "(requires r_w = 1 on the generators)");
    if (exclude.size() > 32)
        throw DomainError("separating_element: excluded set larger than the configured cap (32)");
    auto check = [&](const Character& chi) {
        if (!validate_character(cs, chi).pass)
            throw DomainError("separating_element: character outside the character space");
    };
    check(phi);
    for (const auto& e : exclude) check(e);

    auto same_point = [&](const Character& a, const Character& b) {
        for (std::size_t j = 0; j < a.free_coords.size(); ++j)
            if (std::abs(a.free_coords[j] - b.free_coords[j]) > 1e-14) return false;
        return a.torsion_indices == b.torsion_indices;
    };
    for (const auto& e : exclude)
        if (same_point(e, phi))
            throw DomainError("separating_element: phi coincides with an excluded point");
    for (std::size_t i = 0; i < exclude.size(); ++i)
        for (std::size_t j = i + 1; j < exclude.size(); ++j)
            if (same_point(exclude[i], exclude[j]))
                throw DomainError("separating_element: excluded points are not pairwise distinct");

    if (exclude.empty()) return delta(cs.spec, identity_element(cs.spec));

    AlgebraElement f = (cs.spec.free_rank == 1 && cs.spec.torsion_orders.empty())
                           ? separating_by_interpolation(cs, exclude, phi)
                           : separating_by_factors(cs, exclude, phi);

    // Pin the value at phi to exactly 1 and verify the whole contract.
    Complex at_phi = gelfand_eval(f, phi);
    f = f * (Complex{1.0, 0.0} / at_phi);
    if (std::abs(gelfand_eval(f, phi) - Complex{1.0, 0.0}) > 1e-9)
        throw ConditioningError("separating_element: could not pin the value at phi", 0.0);
    for (const auto& e : exclude)
        if (std::abs(gelfand_eval(f, e)) > 1e-9)
            throw ConditioningError("separating_element: transform does not vanish on the "
                                    "excluded set to 1e-9",
                                    0.0);
    return f;
}

// --- finite-group Gelfand probe ---------------------------------------------------

std::vector<Character> finite_characters(const GroupSpec& spec) {
    if (spec.free_rank != 0)
        throw DomainError("finite_characters: group must be finite (free rank 0)");
    std::vector<Character> out;
    std::vector<std::int64_t> idx(spec.torsion_orders.size(), 0);
    std::int64_t total = spec.finite_order();
    for (std::int64_t i = 0; i < total; ++i) {
        out.push_back(make_character(spec, {}, idx));
        for (std::size_t k = idx.size(); k-- > 0;) {
            if (++idx[k] < spec.torsion_orders[k]) break;
            idx[k] = 0;
        }
    }
    return out;
}

FiniteGelfandProbe finite_gelfand_probe(const GroupSpec& spec, const Weight& w,
                                        std::vector<AlgebraElement> probes) {
    if (spec.free_rank != 0)
        throw DomainError("finite_gelfand_probe: group must be finite (free rank 0)");
    if (w.spec() != spec) throw DomainError("finite_gelfand_probe: weight on a different group");
    const std::int64_t order = spec.finite_order();
    if (order > 4096)
        throw ResourceError("finite_gelfand_probe: group order exceeds the cap (4096)", 4096);

    const auto elements = enumerate_ball(spec, 0);
    const auto characters = finite_characters(spec);

    Eigen::MatrixXcd transform(static_cast<Eigen::Index>(order), static_cast<Eigen::Index>(order));
    for (std::int64_t c = 0; c < order; ++c)
        for (std::int64_t x = 0; x < order; ++x)
            transform(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(x)) =
                character_eval(characters[static_cast<std::size_t>(c)],
                               elements[static_cast<std::size_t>(x)]);

    FiniteGelfandProbe probe{0, false, 0.0, AlgebraElement(spec)};
    probe.rank = Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>(transform).rank();
    probe.surjective = probe.rank == order;

    if (probes.empty()) {
        for (const auto& x : elements) probes.push_back(delta(spec, x));
        AlgebraElement ones(spec);
        for (const auto& x : elements) ones.add_at(x, Complex{1.0, 0.0});
        probes.push_back(ones);
        std::mt19937_64 rng(0);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        for (int trial = 0; trial < 8; ++trial) {
            AlgebraElement r(spec);
            for (const auto& x : elements) r.add_at(x, Complex{amp(rng), amp(rng)});
            probes.push_back(r);
        }
    }

    probe.isometry_defect = 0.0;
    bool have_witness = false;
    for (const auto& f : probes) {
        if (f.is_zero()) continue;
        double sup = 0.0;
        for (const auto& chi : characters) sup = std::max(sup, std::abs(gelfand_eval(f, chi)));
        double defect = norm_l1w(f, w) / sup - 1.0;
        if (!have_witness || defect > probe.isometry_defect) {
            probe.isometry_defect = defect;
            probe.witness = f;
            have_witness = true;
        }
    }
    return probe;
}

} // namespace wga
