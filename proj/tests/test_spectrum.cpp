#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "wga/parse.hpp"
#include "wga/spectrum.hpp"

using namespace wga;
using doctest::Approx;

namespace {

const GroupSpec z = make_group_spec(1, {});

GroupElement zn(std::int64_t n) { return make_element(z, {n}); }

Character unit_char(double angle) { return make_character(z, {std::polar(1.0, angle)}, {}); }

} // namespace

TEST_SUITE_BEGIN("spectrum");

TEST_CASE("character evaluation is multiplicative") {
    auto spec = make_group_spec(2, {4});
    auto chi = make_character(spec, {Complex{0.0, 1.0}, Complex{0.8, 0.0}}, {3});
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<std::int64_t> coord(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = make_element(spec, {coord(rng), coord(rng), coord(rng)});
        auto y = make_element(spec, {coord(rng), coord(rng), coord(rng)});
        Complex lhs = character_eval(chi, add(spec, x, y));
        Complex rhs = character_eval(chi, x) * character_eval(chi, y);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
    CHECK_THROWS_AS(make_character(spec, {Complex{0.0, 0.0}, Complex{1.0, 0.0}}, {0}),
                    DomainError);
}

TEST_CASE("character_space annuli") {
    auto torus = character_space(parse_weight("poly:1", z));
    REQUIRE(torus.annuli.size() == 1);
    CHECK(torus.annuli[0].exact);
    CHECK(torus.annuli[0].r_plus == Approx(1.0));
    CHECK(torus.annuli[0].r_minus == Approx(1.0));
    CHECK(torus.is_torus());

    auto annulus = character_space(parse_weight("exp:0.6931471805599453", z));
    CHECK(annulus.annuli[0].r_plus == Approx(2.0));
    CHECK(annulus.annuli[0].r_minus == Approx(0.5));
    CHECK_FALSE(annulus.is_torus());

    auto z4 = make_group_spec(0, {4});
    auto cycles = character_space(parse_weight("table:[1,2,3,2]", z4));
    CHECK(cycles.annuli.empty());
    CHECK(cycles.torsion_cycles == std::vector<std::int64_t>{4});
    CHECK(finite_characters(z4).size() == 4);
}

TEST_CASE("validate_character against the annuli") {
    auto torus = character_space(parse_weight("poly:1", z));
    CHECK(validate_character(torus, make_character(z, {Complex{1.0, 0.0}}, {})).pass);
    auto violation = validate_character(torus, make_character(z, {Complex{1.5, 0.0}}, {}));
    REQUIRE_FALSE(violation.pass);
    CHECK(violation.axis == 0);
    CHECK(violation.modulus == Approx(1.5));

    auto annulus = character_space(parse_weight("exp:0.6931471805599453", z));
    CHECK(validate_character(annulus, make_character(z, {Complex{0.6, 0.0}}, {})).pass);
}

TEST_CASE("gelfand_eval matches monomial evaluation") {
    Complex zval{0.3, 0.4};
    auto chi = make_character(z, {zval}, {});
    for (std::int64_t n : {-3, -1, 0, 2, 5}) {
        Complex expected = std::pow(zval, Complex(static_cast<double>(n), 0.0));
        CHECK(std::abs(gelfand_eval(delta(z, zn(n)), chi) - expected) < 1e-12);
    }
    CHECK(gelfand_eval(delta(z, zn(0)), chi) == Complex{1.0, 0.0});
}

TEST_CASE("transform of a convolution is the product of transforms") {
    std::mt19937_64 rng(53);
    auto zxz3 = make_group_spec(1, {3});
    auto w = parse_weight("poly:1*const:1", zxz3);
    auto cs = character_space(w);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    std::uniform_int_distribution<std::int64_t> k3(0, 2);
    for (int trial = 0; trial < 500; ++trial) {
        auto f = testutil::random_element(zxz3, rng, 6, 5);
        auto g = testutil::random_element(zxz3, rng, 6, 5);
        auto chi = make_character(zxz3, {std::polar(1.0, angle(rng))}, {k3(rng)});
        REQUIRE(validate_character(cs, chi).pass);
        Complex lhs = gelfand_eval(convolve(f, g), chi);
        Complex rhs = gelfand_eval(f, chi) * gelfand_eval(g, chi);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("transform is bounded by the weighted norm") {
    std::mt19937_64 rng(59);
    auto w = parse_weight("poly:1", z);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = testutil::random_element(z, rng, 8, 8);
        auto chi = unit_char(std::uniform_real_distribution<double>(0, 6.28)(rng));
        // ||chi||_{inf,1/w} = 1 for torus characters with w >= 1
        CHECK(std::abs(gelfand_eval(f, chi)) <= norm_l1w(f, w) + 1e-12);
    }
}

TEST_CASE("boundary oracle anchors") {
    AlgebraElement f(z);
    f.add_at(zn(-1), 1.0);
    f.add_at(zn(1), 1.0);
    auto cs = character_space(unit_weight(z));
    auto oracle = spectral_radius_oracle(f, cs, 256);
    CHECK(oracle.value == Approx(2.0).epsilon(1e-12)); // max over T of |z + 1/z|
    CHECK(oracle.sampling_bound < 0.05);

    CHECK(spectral_radius_oracle(delta(z, zn(0)), cs, 16).value == Approx(1.0));

    auto exp_cs = character_space(parse_weight("exp:0.6931471805599453", z));
    auto at_edge = spectral_radius_oracle(delta(z, zn(1)), exp_cs, 64);
    CHECK(at_edge.value == Approx(2.0).epsilon(1e-12)); // attained on |z| = R_plus

    CHECK_THROWS_AS(spectral_radius_oracle(f, cs, 4), ResourceError);
}

TEST_CASE("oracle is dominated by the norm and dominates the ladder gap") {
    std::mt19937_64 rng(61);
    auto w = parse_weight("poly:1", z);
    auto cs = character_space(w);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = testutil::random_element(z, rng, 4, 6);
        auto oracle = spectral_radius_oracle(f, cs, 512);
        CHECK(oracle.value <= norm_l1w(f, w) + 1e-10);
        auto ladder = spectral_radius_normlimit(f, w, 1 << 8);
        CHECK(ladder.estimate >= oracle.value - oracle.sampling_bound - 1e-10);
    }
}

TEST_CASE("inverse transform round trip on Z") {
    std::mt19937_64 rng(67);
    auto w = parse_weight("poly:1", z);
    auto cs = character_space(w);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = testutil::random_element(z, rng, 20, 10);
        auto grid = sample_gelfand(f, {1.0}, {64});
        auto back = inverse_gelfand(grid, cs, IndexWindow{{-20}, {20}});
        double worst = 0.0;
        for (const auto& [x, a] : f.support()) worst = std::max(worst, std::abs(a - back.at(x)));
        for (const auto& [x, a] : back.support()) worst = std::max(worst, std::abs(a - f.at(x)));
        CHECK(worst < 1e-9);
    }

    // delta_0 recovers exactly; an identically-zero grid gives the zero element
    auto d0 = inverse_gelfand(sample_gelfand(delta(z, zn(0)), {1.0}, {16}), cs,
                              IndexWindow{{-4}, {4}});
    CHECK(std::abs(d0.at(zn(0)) - Complex{1.0, 0.0}) < 1e-12);
    CHECK(d0.support_size() == 1);

    TransformGrid zeros = sample_gelfand(AlgebraElement(z), {1.0}, {16});
    CHECK(inverse_gelfand(zeros, cs, IndexWindow{{-4}, {4}}).is_zero());
}

TEST_CASE("inverse transform off the unit circle") {
    auto w = parse_weight("exp:0.6931471805599453", z);
    auto cs = character_space(w);
    std::mt19937_64 rng(71);
    for (double rho : {0.7, 1.0, 1.6}) {
        auto f = testutil::random_element(z, rng, 10, 8);
        auto grid = sample_gelfand(f, {rho}, {48});
        auto back = inverse_gelfand(grid, cs, IndexWindow{{-10}, {10}});
        double worst = 0.0;
        for (const auto& [x, a] : f.support()) worst = std::max(worst, std::abs(a - back.at(x)));
        CHECK(worst < 1e-9);
    }
    CHECK_THROWS_AS(inverse_gelfand(sample_gelfand(delta(z, zn(0)), {3.0}, {16}), cs,
                                    IndexWindow{{-4}, {4}}),
                    DomainError); // radius outside the annulus
}

TEST_CASE("aliasing detector fires when the declared span is too small") {
    auto cs = character_space(parse_weight("poly:1", z));
    AlgebraElement f(z);
    f.add_at(zn(-12), 1.0);
    f.add_at(zn(3), 0.5);
    f.add_at(zn(11), 1.0);
    auto grid = sample_gelfand(f, {1.0}, {32});
    CHECK_THROWS_AS(inverse_gelfand(grid, cs, IndexWindow{{-6}, {6}}), AliasingError);
    auto ok = inverse_gelfand(grid, cs, IndexWindow{{-12}, {12}});
    CHECK(std::abs(ok.at(zn(11)) - Complex{1.0, 0.0}) < 1e-10);
}

TEST_CASE("round trip on a mixed group") {
    auto zxz4 = make_group_spec(1, {4});
    auto w = parse_weight("poly:1*const:1", zxz4);
    auto cs = character_space(w);
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 25; ++trial) {
        auto f = testutil::random_element(zxz4, rng, 10, 8);
        auto grid = sample_gelfand(f, {1.0}, {32});
        auto back = inverse_gelfand(grid, cs, IndexWindow{{-10}, {10}});
        double worst = 0.0;
        for (const auto& [x, a] : f.support()) worst = std::max(worst, std::abs(a - back.at(x)));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("w-pointwise product multiplicativity") {
    // unweighted: the ordinary product of characters is again a character
    auto w1 = unit_weight(z);
    auto res = w_pointwise_product(unit_char(0.7), unit_char(1.9), w1, 8);
    CHECK(res.multiplicative);

    // exp weight: |m+n| = |m|+|n| fails on mixed signs
    auto we = parse_weight("exp:0.5", z);
    auto rese = w_pointwise_product(unit_char(0.0), unit_char(0.0), we, 8);
    REQUIRE_FALSE(rese.multiplicative);
    std::int64_t sx = rese.witness_x.free[0], sy = rese.witness_y.free[0];
    CHECK(sx * sy < 0); // a mixed-sign witness

    // poly: h(x) = 1/(1+|x|); h(2) = 1/3 != h(1)^2 = 1/4, witness (1, 1)
    auto wp = parse_weight("poly:1", z);
    auto resp = w_pointwise_product(unit_char(0.0), unit_char(0.0), wp, 4);
    REQUIRE_FALSE(resp.multiplicative);
    CHECK(resp.witness_x == zn(1));
    CHECK(resp.witness_y == zn(1));
}

TEST_CASE("separating elements on the circle") {
    auto cs = character_space(parse_weight("poly:1", z));

    // E empty: the identity element
    auto f0 = separating_element(cs, {}, unit_char(1.0));
    CHECK(f0.support_size() == 1);
    CHECK(std::abs(f0.at(zn(0)) - Complex{1.0, 0.0}) < 1e-15);

    // E = {-1}, phi = 1: f = (delta_0 + delta_1)/2
    auto f1 = separating_element(cs, {unit_char(std::numbers::pi)}, unit_char(0.0));
    CHECK(std::abs(f1.at(zn(0)) - Complex{0.5, 0.0}) < 1e-12);
    CHECK(std::abs(f1.at(zn(1)) - Complex{0.5, 0.0}) < 1e-12);

    // E = {1, i}, phi = -1: quadratic Laurent interpolation
    auto phi = unit_char(std::numbers::pi);
    std::vector<Character> exclude = {unit_char(0.0), unit_char(std::numbers::pi / 2)};
    auto f2 = separating_element(cs, exclude, phi);
    CHECK(f2.support_size() <= 3);
    CHECK(std::abs(gelfand_eval(f2, phi) - Complex{1.0, 0.0}) < 1e-12);
    for (const auto& e : exclude) CHECK(std::abs(gelfand_eval(f2, e)) < 1e-12);
}

TEST_CASE("separating elements: preconditions and conditioning") {
    auto cs = character_space(parse_weight("poly:1", z));
    CHECK_THROWS_AS(separating_element(cs, {unit_char(0.0)}, unit_char(0.0)), DomainError);
    CHECK_THROWS_AS(
        separating_element(cs, {unit_char(1e-13)}, unit_char(0.0)), // nodes nearly coincide
        ConditioningError);

    auto annulus = character_space(parse_weight("exp:0.5", z));
    CHECK_THROWS_AS(separating_element(annulus, {}, unit_char(0.0)), DomainError);
}

TEST_CASE("separating elements on a product group") {
    auto zxz4 = make_group_spec(1, {4});
    auto cs = character_space(parse_weight("poly:1*const:1", zxz4));
    auto mk = [&](double angle, std::int64_t k) {
        return make_character(zxz4, {std::polar(1.0, angle)}, {k});
    };
    Character phi = mk(0.3, 1);
    std::vector<Character> exclude = {mk(0.3, 0), mk(2.0, 1), mk(4.0, 3)};
    auto f = separating_element(cs, exclude, phi);
    CHECK(std::abs(gelfand_eval(f, phi) - Complex{1.0, 0.0}) < 1e-9);
    for (const auto& e : exclude) CHECK(std::abs(gelfand_eval(f, e)) < 1e-9);
}

TEST_CASE("finite-group transform probes") {
    auto trivial = make_group_spec(0, {});
    auto pt = finite_gelfand_probe(trivial, unit_weight(trivial));
    CHECK(pt.rank == 1);
    CHECK(pt.surjective);
    CHECK(pt.isometry_defect == Approx(0.0).epsilon(1e-12));

    // Z_2 with f = (1, i): ||f||_1 = 2, f_hat = (1+i, 1-i), defect sqrt(2)-1
    auto z2 = make_group_spec(0, {2});
    AlgebraElement f(z2);
    f.add_at(make_element(z2, {0}), Complex{1.0, 0.0});
    f.add_at(make_element(z2, {1}), Complex{0.0, 1.0});
    auto p2 = finite_gelfand_probe(z2, unit_weight(z2), {f});
    CHECK(p2.rank == 2);
    CHECK(p2.surjective);
    CHECK(p2.isometry_defect == Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));

    auto z4 = make_group_spec(0, {4});
    auto p4 = finite_gelfand_probe(z4, unit_weight(z4));
    CHECK(p4.rank == 4);
    CHECK(p4.surjective);
    CHECK(p4.isometry_defect > 0.0);

    auto big = make_group_spec(0, {100, 100});
    CHECK_THROWS_AS(finite_gelfand_probe(big, unit_weight(big)), ResourceError);
}

TEST_CASE("character literals parse") {
    auto chi = parse_character(R"({"free":[{"re":0,"im":1}],"torsion":[]})", z);
    CHECK(std::abs(chi.free_coords[0] - Complex{0.0, 1.0}) == 0.0);
    auto zxz4 = make_group_spec(1, {4});
    auto chi2 = parse_character(R"({"free":[{"re":1}],"torsion":[6]})", zxz4);
    CHECK(chi2.torsion_indices[0] == 2); // reduced mod 4
    auto list = parse_character_list(R"([{"free":[1]},{"free":[{"re":0,"im":1}]}])", z);
    CHECK(list.size() == 2);
}

TEST_SUITE_END();
