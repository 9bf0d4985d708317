#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "lemniscate/hermite.hpp"
#include "lemniscate/taylor.hpp"
#include "test_helpers.hpp"

using namespace lemniscate;
using lemniscate::testing::random_complex;

namespace {

std::vector<Complex> probe_grid(const PointSet& s, double half_width) {
    std::vector<Complex> out;
    const Complex c = s.centroid();
    for (int i = 0; i < 10; ++i) {
        for (int k = 0; k < 5; ++k) {
            out.push_back(c + Complex(-half_width + 2.0 * half_width * i / 9.0, -half_width + 2.0 * half_width * k / 4.0));
        }
    }
    return out;
}

struct Case {
    const char* f;
    const char* points;
};

const Case kRationalBattery[] = {
    {"1/(3-z)", "1,-1"},
    {"(z^2+1)/((z-3)*(z+2.5))", "0:2,1"},
    {"1/((z-2*i)^2*(z+3))", "1,-1,0.5i"},
    {"z^3/(z-4)^3", "1:2,-1:2"},
    {"1/(z^2+9)", "0:3"},
};

}  // namespace

TEST_CASE("Hermite interpolation examples") {
    const auto cube = hermite_interpolate(parse_function("z^3"), parse_point_set("0:2,1"), 1);
    for (Complex z : {Complex(0.3, 0.1), Complex(-2.0), Complex(1.5, -1.0)}) {
        CHECK(std::abs(eval_hermite(cube, z) - z * z) <= 1e-14);
    }
    const auto taylor = hermite_interpolate(parse_function("exp(z)"), parse_point_set("0"), 4);
    const Complex z(0.4, -0.3);
    CHECK(std::abs(eval_hermite(taylor, z) - (1.0 + z + z * z / 2.0 + z * z * z / 6.0)) <= 1e-15);
    CHECK_THROWS_AS(hermite_interpolate(parse_function("1/(z-1)"), parse_point_set("1,-1"), 2), DomainError);
}

TEST_CASE("Hermite interpolant equals the multi-point Taylor polynomial") {
    const Case cases[] = {
        {"exp(z)", "1,-1"},
        {"exp(z)", "0:2,1"},
        {"sin(z)/(z-4)", "1:2,-1:2"},
        {"cos(2*z)", "0,1,0.5i"},
        {"1/(3-z)", "0:3"},
        {"log(z+4)", "0:2,1.5,-1.5i:2"},
    };
    for (const auto& c : cases) {
        CAPTURE(std::string(c.f));
        CAPTURE(std::string(c.points));
        const auto f = parse_function(c.f);
        const auto s = parse_point_set(c.points);
        for (int N : {1, 2, 4}) {
            const auto h = hermite_interpolate(f, s, N);
            const auto e = expand_taylor(f, s, N, CoefficientMethod::Cauchy);
            for (Complex z : probe_grid(s, 1.0)) {
                const Complex a = eval_hermite(h, z), b = eval_expansion(e, z);
                CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
            }
        }
    }
}

TEST_CASE("node orderings give the same polynomial") {
    const auto f = parse_function("exp(z)/(z-3)");
    const auto s = parse_point_set("0:2,1,-1:3");
    const auto a = hermite_interpolate(f, s, 3, NodeOrdering::Interleaved);
    const auto b = hermite_interpolate(f, s, 3, NodeOrdering::Grouped);
    REQUIRE(a.nodes.size() == 18);
    for (Complex z : probe_grid(s, 1.0)) {
        CHECK(std::abs(eval_hermite(a, z) - eval_hermite(b, z)) <= 1e-10 * std::max(1.0, std::abs(eval_hermite(a, z))));
    }
}

TEST_CASE("residue oracle examples") {
    const auto s = parse_point_set("1,-1");
    CHECK(std::abs(residue_coeffs_rational(parse_function("1/(3-z)"), s, 0, 0, 0) - 0.5) <= 1e-15);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(residue_coeffs_rational(parse_function("1"), s, 1, j, 0)) <= 1e-15);
    }
    CHECK_THROWS_AS(residue_coeffs_rational(parse_function("exp(z)"), s, 0, 0, 0), DomainError);
}

TEST_CASE("oracle triangle on the rational battery") {
    for (const auto& c : kRationalBattery) {
        CAPTURE(std::string(c.f));
        const auto f = parse_function(c.f);
        const auto s = parse_point_set(c.points);
        const Contour contour = enclosing_contour(s, f.singularities());
        for (int n = 0; n < 5; ++n) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                for (int l = 0; l < s[j].multiplicity; ++l) {
                    const Complex oracle = residue_coeffs_rational(f, s, n, j, l);
                    const Complex cauchy = coeff_cauchy(f, s, n, j, l, contour);
                    const Complex derivative = coeff_derivative(f, s, n, j, l);
                    const double scale = std::max(1.0, std::abs(oracle));
                    CHECK(std::abs(cauchy - oracle) <= 1e-11 * scale);
                    CHECK(std::abs(derivative - oracle) <= 1e-10 * scale);
                    CHECK(std::abs(derivative - cauchy) <= 1e-10 * scale);
                }
            }
        }
    }
}

TEST_CASE("residue oracle with poles at the foci") {
    // a pole on a focus is inside every contour around the foci
    const auto f = parse_function("1/((z-1)*(z+1)^2)");
    const auto s = parse_point_set("1,0.5i");
    const Contour contour = enclosing_contour(s, f.singularities());
    const int orders[] = {1, 0};
    for (int n = 0; n < 4; ++n) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex oracle = residue_coeffs_rational(f, s, n, j, 0);
            CHECK(std::abs(coeff_cauchy(f, s, n, j, 0, contour) - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
            CHECK(std::abs(coeff_derivative(f, s, n, j, 0, orders) - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
        }
    }
    // enclosing the pole at -1 as well adds its residue
    const Complex wide = residue_coeffs_rational(f, s, 1, 0, 0, Contour::circle(0.0, 3.0));
    CHECK(std::abs(wide - coeff_cauchy(f, s, 1, 0, 0, Contour::circle(0.0, 3.0))) <= 1e-11);
}

TEST_CASE("remainder order near a focus") {
    const auto e = remainder_order_check(parse_function("exp(z)"), parse_point_set("0"), 3, 0);
    CHECK_FALSE(e.exact);
    CHECK(std::abs(e.slope - 3.0) <= 0.2);
    CHECK(remainder_order_check(parse_function("z^2"), parse_point_set("1,-1"), 2, 0).exact);
    const auto r = remainder_order_check(parse_function("1/(3-z)"), parse_point_set("0:2"), 2, 0);
    CHECK_FALSE(r.exact);
    CHECK(std::abs(r.slope - 4.0) <= 0.2);
    for (std::uint64_t seed = 1; seed < 4; ++seed) {
        const auto m = remainder_order_check(parse_function("cos(z)/(z-3)"), parse_point_set("0:2,1"), 2, 1, seed);
        CHECK(std::abs(m.slope - 2.0) <= 0.2);
    }
}

TEST_CASE("relabelling foci permutes slices and keeps values") {
    const auto f = parse_function("exp(z)/(z-3)");
    const auto s = parse_point_set("0:2,1,-1:3");
    const auto t = parse_point_set("-1:3,0:2,1");
    const std::size_t map[] = {1, 2, 0};
    const auto a = expand_taylor(f, s, 4, CoefficientMethod::Cauchy);
    const auto b = expand_taylor(f, t, 4, CoefficientMethod::Cauchy);
    for (int n = 0; n < 4; ++n) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (int l = 0; l < s[j].multiplicity; ++l) CHECK(std::abs(a.a(n, j, l) - b.a(n, map[j], l)) <= 1e-12);
        }
    }
    std::mt19937_64 rng(6);
    for (int k = 0; k < 20; ++k) {
        const Complex z = random_complex(rng, 1.2);
        CHECK(std::abs(eval_expansion(a, z) - eval_expansion(b, z)) <= 1e-12 * std::max(1.0, std::abs(eval_expansion(a, z))));
    }
    const auto ha = hermite_interpolate(f, s, 2), hb = hermite_interpolate(f, t, 2);
    for (Complex z : probe_grid(s, 1.0)) {
        CHECK(std::abs(eval_hermite(ha, z) - eval_hermite(hb, z)) <= 1e-10 * std::max(1.0, std::abs(eval_hermite(ha, z))));
    }
}
