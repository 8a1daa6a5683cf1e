#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "wga/parse.hpp"
#include "wga/representation.hpp"

using namespace wga;
using doctest::Approx;

namespace {

const GroupSpec z = make_group_spec(1, {});

GroupElement zn(std::int64_t n) { return make_element(z, {n}); }

Character unit_char(double angle) { return make_character(z, {std::polar(1.0, angle)}, {}); }

SpectralMeasure atoms(const CharacterSpace& cs,
                      std::initializer_list<std::pair<double, double>> angle_mass) {
    std::vector<SpectralMeasure::Atom> list;
    for (auto [angle, mass] : angle_mass) list.push_back({unit_char(angle), mass});
    return make_spectral_measure(cs, std::move(list));
}

} // namespace

TEST_SUITE_BEGIN("representation");

TEST_CASE("synthesized functionals evaluate atom-wise") {
    auto cs = character_space(unit_weight(z));

    // unit mass at z = 1: phi(f) is the coefficient sum
    auto phi = synthesize_functional(atoms(cs, {{0.0, 1.0}}));
    AlgebraElement f(z);
    f.add_at(zn(-2), 1.5);
    f.add_at(zn(3), Complex{0.0, 2.0});
    CHECK(std::abs(phi(f) - Complex{1.5, 2.0}) < 1e-12);

    auto zero = synthesize_functional(SpectralMeasure{});
    CHECK(std::abs(zero(f)) == 0.0);

    // masses 1 at z=1 and 2 at z=-1 applied to delta_1
    auto two = synthesize_functional(atoms(cs, {{0.0, 1.0}, {std::numbers::pi, 2.0}}));
    CHECK(std::abs(two(delta(z, zn(1))) - Complex{-1.0, 0.0}) < 1e-12);
}

TEST_CASE("measure atoms are validated and deduplicated") {
    auto cs = character_space(parse_weight("poly:1", z));
    std::vector<SpectralMeasure::Atom> list = {{unit_char(1.0), 2.0}, {unit_char(1.0), 3.0}};
    auto mu = make_spectral_measure(cs, std::move(list));
    REQUIRE(mu.atoms.size() == 1);
    CHECK(mu.atoms[0].mass == Approx(5.0));

    std::vector<SpectralMeasure::Atom> off = {{make_character(z, {Complex{2.0, 0.0}}, {}), 1.0}};
    CHECK_THROWS_AS(make_spectral_measure(cs, std::move(off)), DomainError);
}

TEST_CASE("functionals are linear in the measure") {
    auto cs = character_space(unit_weight(z));
    auto fmu = synthesize_functional(atoms(cs, {{0.5, 1.0}, {2.5, -0.7}}));
    auto fnu = synthesize_functional(atoms(cs, {{1.5, 2.0}}));
    auto fboth = synthesize_functional(atoms(cs, {{0.5, 1.0}, {2.5, -0.7}, {1.5, 2.0}}));

    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = testutil::random_element(z, rng, 6, 6);
        CHECK(std::abs(fboth(f) - fmu(f) - fnu(f)) < 1e-12);
    }
}

TEST_CASE("gram matrices of nonnegative torus measures are psd") {
    auto cs = character_space(parse_weight("poly:1", z));
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> mass(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<SpectralMeasure::Atom> list;
        int n_atoms = 1 + static_cast<int>(rng() % 4);
        for (int a = 0; a < n_atoms; ++a) list.push_back({unit_char(angle(rng)), mass(rng)});
        auto phi = synthesize_functional(make_spectral_measure(cs, std::move(list)));

        std::vector<AlgebraElement> probes;
        int n_probes = 1 + static_cast<int>(rng() % 6);
        for (int p = 0; p < n_probes; ++p) probes.push_back(testutil::random_element(z, rng, 5, 4));

        auto gram = gram_positivity_check(phi, probes);
        CHECK(gram.psd);
        CHECK(gram.hermiticity_defect < 1e-10 * std::max(1.0, gram.matrix_norm));
    }
}

TEST_CASE("negative mass shows up as a negative eigenvalue") {
    auto cs = character_space(unit_weight(z));
    auto phi = synthesize_functional(atoms(cs, {{0.0, -1.0}}));
    auto gram = gram_positivity_check(phi, {delta(z, zn(0))});
    REQUIRE(gram.eigenvalues.size() == 1);
    CHECK(gram.min_eigenvalue == Approx(-1.0));
    CHECK_FALSE(gram.psd);

    CHECK(gram_positivity_check(synthesize_functional(SpectralMeasure{}), {delta(z, zn(0))}).psd);
}

TEST_CASE("modulation transfers the weighted norm bound") {
    auto w = parse_weight("poly:1", z);

    auto m = modulate(delta(z, zn(3)), unit_char(1.2), w);
    CHECK(m.norm_unweighted == Approx(1.0));
    CHECK(m.norm_weighted == Approx(4.0));
    CHECK(m.norm_bound_ok);

    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 500; ++trial) {
        auto f = testutil::random_element(z, rng, 8, 8);
        auto res = modulate(f, unit_char(angle(rng)), w);
        CHECK(res.norm_bound_ok);
    }

    // chi = 1 modulates to f itself
    auto same = modulate(delta(z, zn(2), Complex{0.0, 1.0}), unit_char(0.0), w);
    CHECK(std::abs(same.modulated.at(zn(2)) - Complex{0.0, 1.0}) == 0.0);

    // inside an annulus, |z|^n <= w(n) pointwise
    auto we = parse_weight("exp:0.6931471805599453", z);
    auto chi = make_character(z, {Complex{0.0, 1.8}}, {});
    auto bounded = modulate(delta(z, zn(5)), chi, we);
    CHECK(bounded.norm_bound_ok);
}

TEST_CASE("translate_character stays in the character space") {
    auto we = parse_weight("exp:0.6931471805599453", z);
    auto cs = character_space(we);

    auto gamma = unit_char(std::numbers::pi / 2); // z = i
    auto chi = make_character(z, {Complex{0.6, 0.0}}, {});
    auto moved = translate_character(gamma, chi, cs);
    CHECK(std::abs(moved.free_coords[0] - Complex{0.0, 0.6}) < 1e-15);
    CHECK(validate_character(cs, moved).pass);

    auto not_unimodular = make_character(z, {Complex{0.9, 0.0}}, {});
    CHECK_THROWS_AS(translate_character(not_unimodular, chi, cs), DomainError);

    // torsion indices add cyclically
    auto z4 = make_group_spec(0, {4});
    auto cs4 = character_space(unit_weight(z4));
    auto g4 = make_character(z4, {}, {1});
    auto c4 = make_character(z4, {}, {3});
    CHECK(translate_character(g4, c4, cs4).torsion_indices[0] == 0);

    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = unit_char(angle(rng));
        auto c = make_character(z, {std::polar(1.4, angle(rng))}, {});
        REQUIRE(validate_character(cs, c).pass);
        CHECK(validate_character(cs, translate_character(g, c, cs)).pass);
    }
}

TEST_CASE("distinct torus atom sets are separated by some monomial probe") {
    auto cs = character_space(unit_weight(z));
    auto fmu = synthesize_functional(atoms(cs, {{0.4, 1.0}, {2.0, 0.5}}));
    auto fnu = synthesize_functional(atoms(cs, {{0.4, 1.0}, {2.7, 0.5}}));
    bool separated = false;
    for (std::int64_t n = -8; n <= 8 && !separated; ++n)
        separated = std::abs(fmu(delta(z, zn(n))) - fnu(delta(z, zn(n)))) > 1e-6;
    CHECK(separated);
}

TEST_CASE("measure literals parse") {
    auto cs = character_space(unit_weight(z));
    auto mu = parse_measure(
        R"([{"character":{"free":[{"re":1,"im":0}]},"mass":1.0},
            {"character":{"free":[{"re":-1,"im":0}]},"mass":2.0}])",
        cs);
    REQUIRE(mu.atoms.size() == 2);
    auto phi = synthesize_functional(mu);
    CHECK(std::abs(phi(delta(z, zn(1))) - Complex{-1.0, 0.0}) < 1e-12);
}

TEST_SUITE_END();
