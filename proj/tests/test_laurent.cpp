#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "lemniscate/laurent.hpp"
#include "test_helpers.hpp"

using namespace lemniscate;
using lemniscate::testing::random_complex;

namespace {

// z strictly between the contours, away from both traces
std::vector<Complex> between(const AnnulusContours& c, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Circle outer = c.outer.pieces().front();
    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < count) {
        const Complex z = outer.center + random_complex(rng, outer.radius);
        if (!c.outer.encloses(z) || c.inner.encloses(z)) continue;
        if (c.outer.distance_to(z) < 0.15 * outer.radius) continue;
        if (c.inner.distance_to(z) < 0.5 * c.inner_radius) continue;
        out.push_back(z);
    }
    return out;
}

void check_tensors_equal(const CoefficientTensor& x, const CoefficientTensor& y, double rel) {
    REQUIRE(x.data().size() == y.data().size());
    CHECK(max_abs_diff(x, y) <= rel * std::max(1.0, std::max(x.max_abs(), y.max_abs())));
}

struct Case {
    const char* f;
    const char* points;
};

const Case kLaurentBattery[] = {
    {"1/((z-1)*(z+1))", "1,-1"},
    {"exp(z) + 1/(z-1)", "1,-1"},
    {"exp(z)/((z-1)^2*(z+1))", "1,-1"},
    {"sin(z)/z^3 + 1/(z-4)", "0:2,1"},
    {"cos(z)/((z-1)^3*(z+1)^2)", "1:2,-1"},
    {"exp(z)/(z*(z-1)*(z-2))", "0,1,2"},
};

}  // namespace

TEST_CASE("pure pole pair terminates after the first principal block") {
    const auto f = parse_function("1/((z-1)*(z+1))");
    const auto s = parse_point_set("1,-1");
    for (auto method : {CoefficientMethod::Cauchy, CoefficientMethod::Derivative}) {
        const auto e = expand_laurent(f, s, 5, method);
        CHECK(std::abs(e.b(0, 0, 0) - 1.0) <= 1e-11);
        CHECK(std::abs(e.b(0, 1, 0) - 1.0) <= 1e-11);
        for (int n = 1; n < 5; ++n) {
            for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(e.b(n, j, 0)) <= 1e-11);
        }
        CHECK(e.a.max_abs() <= 1e-11);
        CHECK(std::abs(eval_expansion(e, Complex(0.3, 2.0)) - f.value(Complex(0.3, 2.0))) <= 1e-11);
    }
}

TEST_CASE("entire part plus simple pole splits between the tensors") {
    const auto f = parse_function("exp(z) + 1/(z-1)");
    const auto s = parse_point_set("1,-1");
    const auto taylor = expand_taylor(parse_function("exp(z)"), s, 6, CoefficientMethod::Derivative);
    for (auto method : {CoefficientMethod::Cauchy, CoefficientMethod::Derivative}) {
        const auto e = expand_laurent(f, s, 6, method);
        // b_{0,1,0} = res (w+1)/(w-1) at 1, every other entry is a polynomial integral
        CHECK(std::abs(e.b(0, 0, 0) - 2.0) <= 1e-10);
        CHECK(std::abs(e.b(0, 1, 0)) <= 1e-10);
        for (int n = 1; n < 6; ++n) CHECK(std::abs(e.b(n, 0, 0)) + std::abs(e.b(n, 1, 0)) <= 1e-10);
        check_tensors_equal(e.a, taylor.a, 1e-10);
    }
}

TEST_CASE("analytic inside the excluded set gives b = 0 and the Taylor tensor") {
    const auto f = parse_function("exp(z)/(z-3)");
    const auto s = parse_point_set("1:2,-1");
    const auto taylor = expand_taylor(f, s, 5, CoefficientMethod::Derivative);
    for (auto method : {CoefficientMethod::Cauchy, CoefficientMethod::Derivative}) {
        const auto e = expand_laurent(f, s, 5, method);
        CHECK(e.b.max_abs() <= 1e-11);
        check_tensors_equal(e.a, taylor.a, 1e-11);
    }
}

TEST_CASE("Laurent dual-method agreement") {
    for (const auto& c : kLaurentBattery) {
        CAPTURE(std::string(c.f));
        const auto f = parse_function(c.f);
        const auto s = parse_point_set(c.points);
        const auto x = expand_laurent(f, s, 6, CoefficientMethod::Cauchy);
        const auto y = expand_laurent(f, s, 6, CoefficientMethod::Derivative);
        check_tensors_equal(x.a, y.a, 1e-10);
        check_tensors_equal(x.b, y.b, 1e-10);
    }
}

TEST_CASE("Laurent partial sums plus remainder reproduce f") {
    for (const auto& c : kLaurentBattery) {
        CAPTURE(std::string(c.f));
        const auto f = parse_function(c.f);
        const auto s = parse_point_set(c.points);
        const auto contours = annulus_contours(s, f.singularities(), excluded_foci(s, 0), 0.0);
        for (int N : {1, 3, 6}) {
            const auto e = expand_laurent_cauchy(f, s, N, contours.outer, contours.inner);
            for (Complex z : between(contours, 8, 17)) {
                const Complex r = laurent_remainder_exact(f, s, N, z, contours.outer, contours.inner);
                const Complex fz = f.value(z);
                CHECK(std::abs(eval_expansion(e, z) + r - fz) <= 1e-10 * std::max(1.0, std::abs(fz)));
            }
        }
    }
}

TEST_CASE("pure pole remainder vanishes past the pole orders") {
    const auto f = parse_function("1/((z-1)^2*(z+1))");
    const auto s = parse_point_set("1,-1");
    const auto contours = annulus_contours(s, f.singularities(), excluded_foci(s, 0), 0.0);
    for (Complex z : between(contours, 5, 3)) {
        CHECK(std::abs(laurent_remainder_exact(f, s, 2, z, contours.outer, contours.inner)) <= 1e-12);
    }
}

TEST_CASE("Laurent remainder decays with the outer lemniscate ratio") {
    // the only exterior singularity is 3, so r_1 = |P(3)| = 8
    const auto f = parse_function("exp(z)/(z-1)^2 + 1/(z-3)");
    const auto s = parse_point_set("1,-1");
    const Complex z(0.2, 1.1);
    const double ratio = std::abs(s.product(z)) / 8.0;
    std::vector<double> logs;
    for (int N = 3; N <= 8; ++N) {
        const auto e = expand_laurent(f, s, N, CoefficientMethod::Derivative);
        logs.push_back(std::log(std::abs(f.value(z) - eval_expansion(e, z))));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const double x = static_cast<double>(i) - 2.5;
        num += x * logs[i];
        den += x * x;
    }
    const double fitted = std::exp(num / den);
    CHECK(fitted <= 3.0 * ratio);
    CHECK(fitted >= ratio / 3.0);
}

TEST_CASE("contour independence for each Laurent contour") {
    const auto f = parse_function("exp(z)/((z-1)^2*(z+1)) + 1/(z-5)");
    const auto s = parse_point_set("1,-1");
    const auto base = expand_laurent_cauchy(f, s, 4, Contour::circle(0.0, 3.0),
                                            Contour::union_of({{1.0, 0.3}, {-1.0, 0.3}}));
    const auto outer = expand_laurent_cauchy(f, s, 4, Contour::circle(0.2, 4.0),
                                             Contour::union_of({{1.0, 0.3}, {-1.0, 0.3}}));
    const auto inner = expand_laurent_cauchy(f, s, 4, Contour::circle(0.0, 3.0),
                                             Contour::union_of({{1.0, 0.6}, {-1.0, 0.1}}));
    check_tensors_equal(base.a, outer.a, 1e-11);
    check_tensors_equal(base.b, inner.b, 1e-11);
    // a single loop around both foci is an equally valid inner contour
    const auto loop = expand_laurent_cauchy(f, s, 4, Contour::circle(0.0, 3.0), Contour::circle(0.0, 1.5));
    check_tensors_equal(base.b, loop.b, 1e-11);
}

TEST_CASE("Laurent tensors are linear in f") {
    const auto s = parse_point_set("1:2,-1");
    const auto f = parse_function("exp(z)/(z-1)^3");
    const auto g = parse_function("1/((z+1)^2*(z-4))");
    const auto h = parse_function("(2-i)*(exp(z)/(z-1)^3) + 0.5*(1/((z+1)^2*(z-4)))");
    const auto ef = expand_laurent(f, s, 5, CoefficientMethod::Derivative);
    const auto eg = expand_laurent(g, s, 5, CoefficientMethod::Derivative);
    const auto eh = expand_laurent(h, s, 5, CoefficientMethod::Derivative);
    const Complex alpha(2.0, -1.0), beta(0.5);
    for (std::size_t i = 0; i < eh.a.data().size(); ++i) {
        CHECK(std::abs(eh.a.data()[i] - alpha * ef.a.data()[i] - beta * eg.a.data()[i]) <= 1e-11);
        CHECK(std::abs(eh.b.data()[i] - alpha * ef.b.data()[i] - beta * eg.b.data()[i]) <= 1e-11);
    }
}

TEST_CASE("Laurent geometry and profile errors") {
    const auto f = parse_function("exp(z)/(z-1)^2");
    const auto s = parse_point_set("1,-1");
    CHECK_THROWS_AS(expand_laurent_poles(f, s, 3, PoleProfile{{1, 0}}), DomainError);
    CHECK_THROWS_AS(expand_laurent_poles(f, s, 3, PoleProfile{{2}}), DomainError);
    CHECK_THROWS_AS(expand_laurent_cauchy(f, s, 3, Contour::circle(0.0, 3.0), Contour::circle(1.0, 0.5)),
                    GeometryError);
    const auto contours = annulus_contours(s, f.singularities(), excluded_foci(s, 0), 0.0);
    CHECK_THROWS_AS(laurent_remainder_exact(f, s, 2, 1.0, contours.outer, contours.inner), DomainError);
    CHECK_THROWS_AS(laurent_remainder_exact(f, s, 2, 10.0, contours.outer, contours.inner), DomainError);
    CHECK_THROWS_AS(expand_laurent(parse_function("exp(1/(z-1))"), s, 3, CoefficientMethod::Derivative), DomainError);
}

TEST_CASE("Taylor-Laurent simple pole at the singular focus") {
    const auto f = parse_function("1/(z+1) + exp(z)");
    const auto s = parse_point_set("1,-1");
    const auto taylor = expand_taylor(parse_function("exp(z)"), s, 5, CoefficientMethod::Derivative);
    for (auto method : {CoefficientMethod::Cauchy, CoefficientMethod::Derivative}) {
        const auto e = expand_taylor_laurent(f, s, 1, 5, method);
        // both leading entries are res 1/((w+1)(w-1)) at -1
        CHECK(std::abs(e.b(0, 0, 0) + 0.5) <= 1e-10);
        CHECK(std::abs(e.c(0, 1, 0) + 0.5) <= 1e-10);
        for (int n = 1; n < 5; ++n) CHECK(std::abs(e.b(n, 0, 0)) + std::abs(e.c(n, 1, 0)) <= 1e-10);
        check_tensors_equal(e.a, taylor.a, 1e-10);
        const Complex z(0.4, 0.9);
        CHECK(std::abs(eval_principal(e, z) - 1.0 / (z + 1.0)) <= 1e-10);
    }
}

namespace {

struct SplitCase {
    const char* f;
    const char* points;
    std::size_t split;
};

const SplitCase kSplitBattery[] = {
    {"1/(z+1) + exp(z)", "1,-1", 1},
    {"exp(z)/(z+1)^3", "1:2,-1:2", 1},
    {"cos(z)/(z+1)^2 + 1/(z-4)", "0,1:2,-1", 2},
    {"exp(z)/((z-2)^2*(z+1))", "0,2:2,-1", 1},
    {"sin(z)/(z-0.5)^4", "-1:2,0.5:2", 1},
};

}  // namespace

TEST_CASE("Taylor-Laurent dual-method agreement") {
    for (const auto& c : kSplitBattery) {
        CAPTURE(std::string(c.f));
        const auto f = parse_function(c.f);
        const auto s = parse_point_set(c.points);
        const auto x = expand_taylor_laurent(f, s, c.split, 6, CoefficientMethod::Cauchy);
        const auto y = expand_taylor_laurent(f, s, c.split, 6, CoefficientMethod::Derivative);
        check_tensors_equal(x.a, y.a, 1e-10);
        check_tensors_equal(x.b, y.b, 1e-10);
        check_tensors_equal(x.c, y.c, 1e-10);
    }
}

TEST_CASE("Taylor-Laurent partial sums plus remainder reproduce f") {
    for (const auto& c : kSplitBattery) {
        CAPTURE(std::string(c.f));
        const auto f = parse_function(c.f);
        const auto s = parse_point_set(c.points);
        const auto contours = annulus_contours(s, f.singularities(), excluded_foci(s, c.split), 0.0);
        for (int N : {1, 2, 5}) {
            const auto e = expand_taylor_laurent_cauchy(f, s, c.split, N, contours.outer, contours.inner);
            for (Complex z : between(contours, 8, 29)) {
                const Complex r = laurent_remainder_exact(f, s, c.split, N, z, contours.outer, contours.inner);
                const Complex fz = f.value(z);
                CHECK(std::abs(eval_expansion(e, z) + r - fz) <= 1e-10 * std::max(1.0, std::abs(fz)));
            }
        }
    }
}

TEST_CASE("Taylor-Laurent with no singular content reduces to Taylor") {
    const auto f = parse_function("exp(z)/(z-3)");
    const auto s = parse_point_set("0:2,1");
    const auto taylor = expand_taylor(f, s, 4, CoefficientMethod::Derivative);
    const auto e = expand_taylor_laurent(f, s, 1, 4, CoefficientMethod::Cauchy);
    CHECK(e.b.max_abs() <= 1e-11);
    CHECK(e.c.max_abs() <= 1e-11);
    check_tensors_equal(e.a, taylor.a, 1e-11);
}

TEST_CASE("split validation") {
    const auto f = parse_function("1/(z-1)");
    const auto s = parse_point_set("1,-1");
    CHECK_THROWS_AS(expand_taylor_laurent(f, s, 1, 3, CoefficientMethod::Derivative), DomainError);
    CHECK_THROWS_AS(expand_taylor_laurent(f, s, 0, 3, CoefficientMethod::Derivative), DomainError);
    CHECK_THROWS_AS(expand_taylor_laurent(f, s, 2, 3, CoefficientMethod::Derivative), DomainError);
}

TEST_CASE("principal part subtraction") {
    const auto s = parse_point_set("1,-1");
    SUBCASE("pure pole pair leaves zero") {
        const auto f = parse_function("1/((z-1)*(z+1))");
        const PrincipalPartRemoved g(f, s, declared_pole_profile(f, s));
        CHECK(g.blocks_removed() == 0);
        for (Complex z : {Complex(0.3, 0.2), Complex(2.0, -1.0), Complex(1.001, 0.0)}) {
            CHECK(std::abs(g.value(z)) <= 1e-9);
        }
        CHECK(g.singularities().empty());
    }
    SUBCASE("entire part survives") {
        const auto f = parse_function("exp(z) + 1/(z-1)");
        const PrincipalPartRemoved g(f, s, declared_pole_profile(f, s));
        for (int i = -4; i <= 4; ++i) {
            for (int k = -4; k <= 4; ++k) {
                const Complex z(0.37 * i + 0.01, 0.41 * k);
                CHECK(std::abs(g.value(z) - std::exp(z)) <= 1e-12 * std::max(1.0, std::abs(std::exp(z))));
            }
        }
        const Series at_pole = g.series(1.0, 5);
        for (int i = 0; i <= 5; ++i) {
            double fact = 1.0;
            for (int k = 2; k <= i; ++k) fact *= k;
            CHECK(std::abs(at_pole[i] - std::exp(1.0) / fact) <= 1e-9);
        }
    }
    SUBCASE("analytic f is unchanged") {
        const auto f = parse_function("sin(z)/(z-4)");
        const PrincipalPartRemoved g(f, s, declared_pole_profile(f, s));
        CHECK(g.blocks_removed() == -1);
        CHECK(g.value(Complex(0.5, 0.5)) == f.value(Complex(0.5, 0.5)));
    }
    SUBCASE("understated orders are detected") {
        const auto f = parse_function("exp(z)/(z-1)^3");
        CHECK_THROWS_AS(PrincipalPartRemoved(f, s, PoleProfile{{1, 0}}), DomainError);
    }
}

TEST_CASE("Taylor expansion of the subtracted function rebuilds f") {
    const Case cases[] = {
        {"exp(z)/((z-1)^3*(z+1))", "1,-1"},
        {"cos(z)/((z-1)^3*(z+1)^2) + 1/(z-4)", "1:2,-1"},
    };
    for (const auto& c : cases) {
        CAPTURE(std::string(c.f));
        const auto f = parse_function(c.f);
        const auto s = parse_point_set(c.points);
        const auto profile = declared_pole_profile(f, s);
        const PrincipalPartRemoved g(f, s, profile);
        const int M = g.blocks_removed();
        const auto principal = expand_laurent_poles(f, s, M + 1, profile);
        const auto taylor = expand_taylor(g, s, 30, CoefficientMethod::Cauchy);
        const auto contours = annulus_contours(s, f.singularities(), excluded_foci(s, 0), 0.0);
        for (Complex z : between(contours, 6, 5)) {
            if (std::abs(s.product(z)) > 0.3 * std::abs(s.product(3.0))) continue;
            const Complex fz = f.value(z);
            CHECK(std::abs(eval_expansion(taylor, z) + eval_principal(principal, z) - fz) <=
                  1e-10 * std::max(1.0, std::abs(fz)));
        }
    }
}

TEST_CASE("Taylor-Laurent principal part subtraction") {
    const auto f = parse_function("exp(z)/(z+1)^3");
    const auto s = parse_point_set("1:2,-1:2");
    const auto profile = declared_pole_profile(f, s);
    const PrincipalPartRemoved g(f, s, 1, profile);
    CHECK(g.blocks_removed() == 1);
    const Series at_pole = g.series(-1.0, 4);
    CHECK(at_pole.valuation() >= 0);
    const auto e = expand_taylor_laurent_poles(f, s, 1, 2, profile);
    for (Complex z : {Complex(0.2, 0.3), Complex(-0.5, 1.0)}) {
        CHECK(std::abs(g.value(z) + eval_principal(e, z) - f.value(z)) <= 1e-12 * std::abs(f.value(z)));
    }
}
