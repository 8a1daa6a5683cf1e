#include "wga/representation.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace wga {

SpectralMeasure make_spectral_measure(const CharacterSpace& cs,
                                      std::vector<SpectralMeasure::Atom> atoms) {
    SpectralMeasure mu;
    for (auto& atom : atoms) {
        auto v = validate_character(cs, atom.character);
        if (!v.pass)
            throw DomainError("spectral measure atom outside the character space (axis " +
                              std::to_string(v.axis) + ", |z| = " + std::to_string(v.modulus) + ")");
        bool merged = false;
        for (auto& existing : mu.atoms) {
            bool same = existing.character.torsion_indices == atom.character.torsion_indices;
            for (std::size_t j = 0; same && j < existing.character.free_coords.size(); ++j)
                if (std::abs(existing.character.free_coords[j] - atom.character.free_coords[j]) > 1e-14)
                    same = false;
            if (same) {
                existing.mass += atom.mass;
                merged = true;
                break;
            }
        }
        if (!merged) mu.atoms.push_back(std::move(atom));
    }
    return mu;
}

Complex Functional::operator()(const AlgebraElement& f) const {
    Complex s{0.0, 0.0};
    for (const auto& atom : measure_.atoms)
        s += atom.mass * gelfand_eval(f, atom.character);
    return s;
}

Functional synthesize_functional(const SpectralMeasure& mu) { return Functional(mu); }

GramReport gram_positivity_check(const Functional& phi, const std::vector<AlgebraElement>& probes) {
    if (probes.empty()) throw DomainError("gram_positivity_check: no probes");
    if (probes.size() > 64) throw DomainError("gram_positivity_check: more than 64 probes");

    const auto n = static_cast<Eigen::Index>(probes.size());
    Eigen::MatrixXcd gram(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        AlgebraElement fk_star = involution(probes[static_cast<std::size_t>(j)]);
        for (Eigen::Index i = 0; i < n; ++i)
            gram(i, j) = phi(convolve(probes[static_cast<std::size_t>(i)], fk_star));
    }

    GramReport report;
    Eigen::MatrixXcd herm = 0.5 * (gram + gram.adjoint());
    report.hermiticity_defect = (gram - gram.adjoint()).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
    report.eigenvalues.assign(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + solver.eigenvalues().size());
    report.min_eigenvalue = report.eigenvalues.front();
    report.matrix_norm = std::max(std::abs(report.eigenvalues.front()),
                                  std::abs(report.eigenvalues.back()));
    report.psd = report.min_eigenvalue >= -1e-9 * report.matrix_norm;
    return report;
}

ModulationResult modulate(const AlgebraElement& f, const Character& chi, const Weight& w) {
    if (f.spec() != chi.spec || f.spec() != w.spec())
        throw DomainError("modulate: mismatched group specs");
    ModulationResult out{AlgebraElement(f.spec()), 0.0, 0.0, false};
    for (const auto& [x, a] : f.support()) out.modulated.add_at(x, a * character_eval(chi, x));
    out.norm_unweighted = norm_l1(out.modulated);
    out.norm_weighted = norm_l1w(f, w);
    out.norm_bound_ok = out.norm_unweighted <= out.norm_weighted + 1e-12;
    return out;
}

Character translate_character(const Character& gamma, const Character& chi,
                              const CharacterSpace& cs) {
    if (gamma.spec != chi.spec || gamma.spec != cs.spec)
        throw DomainError("translate_character: mismatched group specs");
    for (const auto& z : gamma.free_coords)
        if (std::abs(std::abs(z) - 1.0) > 1e-12)
            throw DomainError("translate_character: gamma must be unimodular");

    std::vector<Complex> free_coords(chi.free_coords.size());
    for (std::size_t j = 0; j < free_coords.size(); ++j)
        free_coords[j] = gamma.free_coords[j] * chi.free_coords[j];
    std::vector<std::int64_t> torsion(chi.torsion_indices.size());
    for (std::size_t t = 0; t < torsion.size(); ++t)
        torsion[t] = gamma.torsion_indices[t] + chi.torsion_indices[t]; // reduced by make_character
    return make_character(chi.spec, std::move(free_coords), std::move(torsion));
}

} // namespace wga
