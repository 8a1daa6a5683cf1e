#pragma once

#include <cstdint>
#include <vector>

#include "wga/algebra.hpp"
#include "wga/spectrum.hpp"

namespace wga {

/// A finitely atomic real measure on the character space. Masses may be
/// negative; positivity is a property to test, not an invariant.
struct SpectralMeasure {
    struct Atom {
        Character character;
        double mass = 0.0;
    };
    std::vector<Atom> atoms;
};

/// Build a measure whose atoms are validated against the character space and
/// deduplicated (coinciding characters get their masses merged).
SpectralMeasure make_spectral_measure(const CharacterSpace& cs,
                                      std::vector<SpectralMeasure::Atom> atoms);

/// The linear functional f -> sum_i c_i f_hat(chi_i) synthesized from an
/// atomic measure.
class Functional {
  public:
    explicit Functional(SpectralMeasure measure) : measure_(std::move(measure)) {}

    const SpectralMeasure& measure() const { return measure_; }
    Complex operator()(const AlgebraElement& f) const;

  private:
    SpectralMeasure measure_;
};

Functional synthesize_functional(const SpectralMeasure& mu);

struct GramReport {
    std::vector<double> eigenvalues; // of the Hermitian part, ascending
    double min_eigenvalue = 0.0;
    double matrix_norm = 0.0;       // spectral norm of the Hermitian part
    double hermiticity_defect = 0.0; // max |G - G^*| entry; 0 for torus atoms
    bool psd = true;                 // min eigenvalue >= -1e-9 * matrix norm
};

/// Gram matrix G_{jk} = phi(f_j * involution(f_k)) and its spectrum. At most
/// 64 probes.
GramReport gram_positivity_check(const Functional& phi, const std::vector<AlgebraElement>& probes);

struct ModulationResult {
    AlgebraElement modulated;  // g(x) = chi(x) f(x), viewed in unweighted l1
    double norm_unweighted = 0.0;
    double norm_weighted = 0.0; // ||f||_{1,w}
    bool norm_bound_ok = false; // ||g||_1 <= ||f||_{1,w} + 1e-12
};

/// Pointwise modulation of f by a character, with the norm transfer check.
ModulationResult modulate(const AlgebraElement& f, const Character& chi, const Weight& w);

/// Coordinate-wise product gamma * chi for unimodular gamma; stays in the
/// character space because the moduli are unchanged.
Character translate_character(const Character& gamma, const Character& chi,
                              const CharacterSpace& cs);

} // namespace wga
