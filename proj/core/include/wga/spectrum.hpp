#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "wga/algebra.hpp"
#include "wga/group.hpp"
#include "wga/weight.hpp"

namespace wga {

/// A multiplicative function on the group: nonzero complex coordinates on
/// the free axes, root-of-unity indices on the torsion axes. Evaluation is
/// chi(x) = prod z_j^{x_j} * prod e^{2 pi i k_t x_t / m_t}.
struct Character {
    GroupSpec spec;
    std::vector<Complex> free_coords;      // z_j != 0
    std::vector<std::int64_t> torsion_indices; // k_t, reduced mod m_t

    static Character trivial(const GroupSpec& spec);
};

Character make_character(const GroupSpec& spec, std::vector<Complex> free_coords,
                         std::vector<std::int64_t> torsion_indices);

/// chi(x). Throws DomainError when |z|^{x} would overflow (the message names
/// the offending exponent).
Complex character_eval(const Character& chi, const GroupElement& x);

/// One closed annulus R_minus <= |z| <= R_plus on a free axis.
struct AnnulusBounds {
    double r_minus = 1.0;
    double r_plus = 1.0;
    bool exact = false;         // closed-form radii
    double bracket_width = 0.0; // outer-bracket thickness when estimated
};

/// The character space of the weighted algebra: a product of annuli (one per
/// free axis) and root-of-unity cycles (one per torsion axis).
struct CharacterSpace {
    GroupSpec spec;
    std::vector<AnnulusBounds> annuli;        // per free axis
    std::vector<std::int64_t> torsion_cycles; // = spec.torsion_orders

    bool is_torus(double tol = 1e-9) const;
};

/// Annulus radii per free axis: R_plus = r_w(+e_j), R_minus = 1/r_w(-e_j).
/// Estimated radii form a certified outer bracket for the true annulus.
CharacterSpace character_space(const Weight& w, std::int64_t max_exponent = 1 << 20);

struct CharacterValidation {
    bool pass = true;
    std::size_t axis = 0; // offending free axis when pass is false
    double modulus = 0.0;
    double r_minus = 0.0, r_plus = 0.0;
};

/// Membership check |z_j| in [R_minus - 1e-9, R_plus + 1e-9] per axis.
CharacterValidation validate_character(const CharacterSpace& cs, const Character& chi);

/// The Gelfand transform value f_hat(chi) = sum f(x) chi(x).
Complex gelfand_eval(const AlgebraElement& f, const Character& chi);

struct OracleResult {
    double value = 0.0;          // max |f_hat| over the sampled boundary grid
    double sampling_bound = 0.0; // Lipschitz bound on what the grid can miss
    /// The true spectral radius lies in [value, value + sampling_bound].
    double upper() const { return value + sampling_bound; }
};

/// Exact-route spectral radius: max |f_hat| over the boundary circles of the
/// annuli times the torsion cycles. The maximum-modulus principle confines
/// the maximum to the boundary; the Lipschitz term certifies the grid gap.
/// Refuses (ResourceError with the required count) when samples_per_circle
/// is below 4x the support span on some axis.
OracleResult spectral_radius_oracle(const AlgebraElement& f, const CharacterSpace& cs,
                                    std::int64_t samples_per_circle);

/// Transform samples on a product grid: per free axis, M_j equispaced angles
/// on a circle of radius rho_j; torsion axes fully enumerated. Row-major
/// over (free angle indices, then torsion residues).
struct TransformGrid {
    GroupSpec spec;
    std::vector<double> radii;      // rho_j per free axis
    std::vector<std::int64_t> sizes; // M_j per free axis
    std::vector<Complex> data;

    std::size_t cell_count() const;
};

/// Sample the Gelfand transform of f on a product grid.
TransformGrid sample_gelfand(const AlgebraElement& f, const std::vector<double>& radii,
                             const std::vector<std::int64_t>& sizes);

/// Index window [lo_j, hi_j] per free axis that the coefficients are declared
/// to live in; each span must be strictly smaller than the grid size.
struct IndexWindow {
    std::vector<std::int64_t> lo, hi;
};

/// Recover the coefficients from transform samples by per-axis inverse DFT
/// with radius descaling. Throws AliasingError when more than 1e-8 of the
/// recovered energy lies outside the declared window.
AlgebraElement inverse_gelfand(const TransformGrid& grid, const CharacterSpace& cs,
                               const IndexWindow& window);

struct WPointwiseResult {
    std::vector<std::pair<GroupElement, Complex>> table; // h on the probe ball, outward order
    bool multiplicative = true;
    GroupElement witness_x, witness_y; // first violating pair when not
};

/// The w-pointwise product h = chi chi' / w tabulated on a ball, with a
/// multiplicativity scan over the half-ball (outward from the identity).
WPointwiseResult w_pointwise_product(const Character& chi, const Character& chi_prime,
                                     const Weight& w, std::int64_t probe_ball);

/// A finitely supported element whose transform is 1 at phi and vanishes on
/// E (within 1e-9). Requires a torus character space; |E| capped at 32.
AlgebraElement separating_element(const CharacterSpace& cs, const std::vector<Character>& exclude,
                                  const Character& phi);

struct FiniteGelfandProbe {
    std::int64_t rank = 0;
    bool surjective = false;
    double isometry_defect = 0.0; // max over probes of ||f||_{1,w}/||f_hat||_inf - 1
    AlgebraElement witness;       // probe attaining the defect
};

/// Character-table probe for a finite group (|G| <= 4096): transform matrix
/// rank, surjectivity, and the isometry defect over the probe family
/// (defaults to point masses, the all-ones element, and seeded random draws).
FiniteGelfandProbe finite_gelfand_probe(const GroupSpec& spec, const Weight& w,
                                        std::vector<AlgebraElement> probes = {});

/// All |G| characters of a finite group, in lexicographic index order.
std::vector<Character> finite_characters(const GroupSpec& spec);

} // namespace wga
