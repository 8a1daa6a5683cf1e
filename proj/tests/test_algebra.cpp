#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "test_util.hpp"
#include "wga/algebra.hpp"
#include "wga/parse.hpp"

using namespace wga;
using doctest::Approx;

namespace {

const GroupSpec z = make_group_spec(1, {});

GroupElement zn(std::int64_t n) { return make_element(z, {n}); }

double max_coeff_diff(const AlgebraElement& a, const AlgebraElement& b) {
    double worst = 0.0;
    for (const auto& [x, v] : a.support()) worst = std::max(worst, std::abs(v - b.at(x)));
    for (const auto& [x, v] : b.support()) worst = std::max(worst, std::abs(v - a.at(x)));
    return worst;
}

/// Oracle: Pascal's triangle, exact in 64-bit integers up to n = 20.
std::vector<std::int64_t> binomial_row(int n) {
    std::vector<std::int64_t> row{1};
    for (int k = 0; k < n; ++k) {
        std::vector<std::int64_t> next(row.size() + 1, 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            next[i] += row[i];
            next[i + 1] += row[i];
        }
        row = std::move(next);
    }
    return row;
}

} // namespace

TEST_SUITE_BEGIN("algebra");

TEST_CASE("convolution of point masses") {
    auto zxz4 = make_group_spec(1, {4});
    auto a = make_element(zxz4, {2, 3});
    auto b = make_element(zxz4, {-5, 2});
    auto conv = convolve(delta(zxz4, a), delta(zxz4, b));
    REQUIRE(conv.support_size() == 1);
    CHECK(conv.at(add(zxz4, a, b)) == Complex{1.0, 0.0});
}

TEST_CASE("binomial square") {
    AlgebraElement f(z);
    f.add_at(zn(0), 1.0);
    f.add_at(zn(1), 1.0);
    auto sq = convolve(f, f);
    CHECK(sq.at(zn(0)) == Complex{1.0, 0.0});
    CHECK(sq.at(zn(1)) == Complex{2.0, 0.0});
    CHECK(sq.at(zn(2)) == Complex{1.0, 0.0});
}

TEST_CASE("fft and direct paths agree on random pairs") {
    auto z2 = make_group_spec(2, {});
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = testutil::random_element(z2, rng, 16, 20);
        auto g = testutil::random_element(z2, rng, 16, 20);
        ConvolveInfo info;
        auto direct = convolve(f, g, ConvolvePath::Direct);
        auto fft = convolve(f, g, ConvolvePath::Fft, &info);
        CHECK(info.used_fft);
        CHECK(max_coeff_diff(direct, fft) < 1e-10);
    }
}

TEST_CASE("fft path handles torsion axes cyclically") {
    auto zxz3 = make_group_spec(1, {3});
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        auto f = testutil::random_element(zxz3, rng, 10, 12);
        auto g = testutil::random_element(zxz3, rng, 10, 12);
        CHECK(max_coeff_diff(convolve(f, g, ConvolvePath::Direct),
                             convolve(f, g, ConvolvePath::Fft)) < 1e-10);
    }
}

TEST_CASE("convolution is bilinear and commutative") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = testutil::random_element(z, rng, 8, 6);
        auto g = testutil::random_element(z, rng, 8, 6);
        auto h = testutil::random_element(z, rng, 8, 6);
        CHECK(max_coeff_diff(convolve(f, g), convolve(g, f)) < 1e-12);
        auto lhs = convolve(f, g + h);
        auto rhs = convolve(f, g) + convolve(f, h);
        CHECK(max_coeff_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("involution") {
    auto f = delta(z, zn(1), Complex{0.0, 1.0});
    auto star = involution(f);
    CHECK(star.at(zn(-1)) == Complex{0.0, -1.0});

    AlgebraElement sym(z);
    sym.add_at(zn(-2), 0.5);
    sym.add_at(zn(0), 1.0);
    sym.add_at(zn(2), 0.5);
    CHECK(max_coeff_diff(involution(sym), sym) == 0.0);

    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        auto f1 = testutil::random_element(z, rng, 6, 5);
        auto f2 = testutil::random_element(z, rng, 6, 5);
        CHECK(max_coeff_diff(involution(involution(f1)), f1) == 0.0);
        CHECK(max_coeff_diff(involution(convolve(f1, f2)),
                             convolve(involution(f2), involution(f1))) < 1e-12);
    }
}

TEST_CASE("power: point masses, binomial rows, and the naive chain") {
    CHECK(power(delta(z, zn(1)), 5).at(zn(5)) == Complex{1.0, 0.0});

    AlgebraElement f(z);
    f.add_at(zn(0), 1.0);
    f.add_at(zn(1), 1.0);
    for (int n : {2, 5, 11, 20}) {
        auto p = power(f, n);
        auto row = binomial_row(n);
        REQUIRE(p.support_size() == row.size());
        for (int k = 0; k <= n; ++k)
            CHECK(p.at(zn(k)).real() == Approx(static_cast<double>(row[static_cast<std::size_t>(k)])));
    }

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testutil::random_element(z, rng, 5, 5);
        auto chain = convolve(convolve(convolve(g, g), g), g);
        CHECK(max_coeff_diff(power(g, 4), chain) < 1e-10);
    }
}

TEST_CASE("power respects the support cap") {
    AlgebraElement f(z);
    f.add_at(zn(0), 1.0);
    f.add_at(zn(1), 1.0);
    CHECK_THROWS_AS(power(f, 1 << 20, 64), ResourceError);
    try {
        power(f, 1 << 20, 64);
    } catch (const ResourceError& err) {
        CHECK(err.largest_feasible >= 1);
        CHECK(err.largest_feasible < (1 << 20));
    }
}

TEST_CASE("weighted norm") {
    Weight w = parse_weight("poly:1", z);
    CHECK(norm_l1w(delta(z, zn(7)), w) == Approx(8.0)); // ||delta_x|| = w(x)
    CHECK(norm_l1w(AlgebraElement(z), w) == 0.0);

    AlgebraElement f(z);
    f.add_at(zn(-1), 1.0);
    f.add_at(zn(2), 2.0);
    CHECK(norm_l1w(f, w) == Approx(8.0)); // 1*2 + 2*3
}

TEST_CASE("norm submultiplicativity on random pairs") {
    Weight w = parse_weight("poly:1", z);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = testutil::random_element(z, rng, 10, 8);
        auto g = testutil::random_element(z, rng, 10, 8);
        CHECK(norm_l1w(convolve(f, g), w) <= norm_l1w(f, w) * norm_l1w(g, w) + 1e-10);
    }
}

TEST_CASE("dual pairing and the attaining functional") {
    Weight w = parse_weight("poly:1", z);

    DualElement ones(z);
    for (std::int64_t n = -2; n <= 2; ++n) ones.set(zn(n), 1.0);
    auto pair = dual_pair(delta(z, zn(0)), ones, w);
    CHECK(pair.value == Complex{1.0, 0.0});
    CHECK(pair.bound_ok);

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = testutil::random_element(z, rng, 12, 10);
        auto g = attaining_dual(f, w);
        CHECK(norm_inf_inv_w(g, w) == Approx(1.0).epsilon(1e-14));
        auto attained = dual_pair(f, g, w);
        CHECK(attained.value.imag() == Approx(0.0).epsilon(1e-14));
        CHECK(attained.value.real() == Approx(norm_l1w(f, w)).epsilon(1e-13));
        CHECK(attained.bound_ok);
    }
}

TEST_CASE("dual pairing inequality holds on random pairs") {
    Weight w = parse_weight("poly:1", z);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = testutil::random_element(z, rng, 8, 8);
        DualElement g(z);
        for (std::int64_t n = -8; n <= 8; ++n) g.set(zn(n), Complex{amp(rng), amp(rng)});
        CHECK(dual_pair(f, g, w).bound_ok);
    }
}

TEST_CASE("norm-limit radius ladder") {
    // delta_1 with w = poly(1): ||delta_1^n|| = 1 + n, so the ladder is
    // (1+n)^{1/n} decreasing to r = 1
    Weight w = parse_weight("poly:1", z);
    auto r = spectral_radius_normlimit(delta(z, zn(1)), w, 1 << 12);
    CHECK(r.n_reached == 1 << 12);
    CHECK(r.estimate == Approx(std::pow(1.0 + 4096.0, 1.0 / 4096.0)).epsilon(1e-10));
    for (std::size_t i = 1; i < r.ladder.size(); ++i)
        CHECK(r.ladder[i].second <= r.ladder[i - 1].second + 1e-12);

    CHECK(spectral_radius_normlimit(delta(z, zn(0)), w, 16).estimate == Approx(1.0));

    // f = delta_{-1} + delta_1, w = 1: ||f^n||_1 = 2^n exactly
    AlgebraElement f(z);
    f.add_at(zn(-1), 1.0);
    f.add_at(zn(1), 1.0);
    auto rb = spectral_radius_normlimit(f, unit_weight(z), 1 << 10);
    CHECK(rb.estimate == Approx(2.0).epsilon(1e-12));
    for (auto [n, v] : rb.ladder) CHECK(v == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("compare_radii sandwich") {
    Weight w = parse_weight("poly:1", z);
    AlgebraElement f(z);
    f.add_at(zn(-1), 0.5);
    f.add_at(zn(0), 1.0);
    f.add_at(zn(1), 0.25);
    auto cmp = compare_radii(f, w, 1 << 10);
    CHECK(cmp.weight_sup == Approx(2.0));
    CHECK(cmp.sandwich_ok);

    auto cmp_unit = compare_radii(f, unit_weight(z), 1 << 8);
    CHECK(cmp_unit.weight_sup == Approx(1.0));
    CHECK(cmp_unit.r_weighted == Approx(cmp_unit.r_unweighted));
    CHECK(cmp_unit.sandwich_ok);

    // boundary case: r_w = M r exactly for a point mass under exp weight
    Weight e = parse_weight("exp:0.6931471805599453", z);
    auto cmp_exp = compare_radii(delta(z, zn(1)), e, 1 << 10);
    CHECK(cmp_exp.r_unweighted == Approx(1.0).epsilon(1e-10));
    CHECK(cmp_exp.r_weighted == Approx(2.0).epsilon(1e-10));
    CHECK(cmp_exp.weight_sup == Approx(2.0));
    CHECK(cmp_exp.sandwich_ok);
}

TEST_CASE("element literals parse and serialize") {
    auto f = parse_element("[[[0],1,0],[[1],0,1]]", z);
    CHECK(f.at(zn(0)) == Complex{1.0, 0.0});
    CHECK(f.at(zn(1)) == Complex{0.0, 1.0});
    auto again = parse_element(element_to_json(f), z);
    CHECK(max_coeff_diff(f, again) == 0.0);
    CHECK_THROWS_AS(parse_element("[[0,1]]", z), ParseError);
}

TEST_SUITE_END();
