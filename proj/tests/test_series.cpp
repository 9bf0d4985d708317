#include <doctest.h>

#include <random>

#include "lemniscate/series.hpp"
#include "test_helpers.hpp"

using namespace lemniscate;
using lemniscate::testing::close;
using lemniscate::testing::random_complex;

namespace {

Series random_series(std::mt19937_64& rng, int order) {
    std::vector<Complex> c(static_cast<std::size_t>(order + 1));
    for (auto& x : c) x = random_complex(rng, 1.0);
    return Series(0, c);
}

}  // namespace

TEST_CASE("product is the Cauchy product") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Series a = random_series(rng, 8);
        const Series b = random_series(rng, 8);
        const Series c = a * b;
        for (int n = 0; n <= 8; ++n) {
            Complex expected(0.0);
            for (int k = 0; k <= n; ++k) expected += a[k] * b[n - k];
            CHECK(std::abs(c[n] - expected) <= 1e-15 * 10);
        }
    }
}

TEST_CASE("division inverts multiplication") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Series a = random_series(rng, 10);
        const Series b = random_series(rng, 10) + Complex(3.0);
        const Series q = (a * b) / b;
        for (int n = 0; n <= 10; ++n) CHECK(close(q[n], a[n], 1e-11));
    }
}

TEST_CASE("elementary functions match known series") {
    const Series t = Series::variable(0.0, 6);
    const Series e = exp(t);
    double factorial = 1.0;
    for (int n = 0; n <= 6; ++n) {
        if (n > 0) factorial *= n;
        CHECK(close(e[n], Complex(1.0 / factorial), 1e-15));
    }
    const Series l = log(t + Complex(1.0));
    CHECK(l[0] == Complex(0.0));
    CHECK(close(l[3], Complex(1.0 / 3.0), 1e-15));
    CHECK(close(l[4], Complex(-0.25), 1e-15));
    const Series s = sin(t);
    const Series c = cos(t);
    CHECK(close(s[3], Complex(-1.0 / 6.0), 1e-15));
    CHECK(close(c[4], Complex(1.0 / 24.0), 1e-15));
    const Series r = sqrt(t + Complex(1.0));
    CHECK(close(r[2], Complex(-0.125), 1e-15));
    const Series p = (t + Complex(1.0)).pow(-0.5);
    CHECK(close(p[1], Complex(-0.5), 1e-15));
    CHECK(close(p[2], Complex(0.375), 1e-15));
}

TEST_CASE("exact cancellation raises the valuation") {
    const Series t = Series::variable(1.0, 5);
    const Series zero_at_one = t - Complex(1.0);
    CHECK(zero_at_one.valuation() == 1);
    const Series pole = Series::constant(1.0, 5) / zero_at_one;
    CHECK(pole.valuation() == -1);
    CHECK(pole[-1] == Complex(1.0));
    CHECK(pole.precision() == 4);
    CHECK_THROWS_AS(exp(pole), DomainError);
    CHECK_THROWS_AS(log(zero_at_one), DomainError);
}

TEST_CASE("integer powers") {
    const Series t = Series::variable(2.0, 6);
    const Series cube = t.pow(3LL);
    CHECK(close(cube[0], Complex(8.0), 1e-15));
    CHECK(close(cube[1], Complex(12.0), 1e-15));
    CHECK(close(cube[3], Complex(1.0), 1e-15));
    CHECK(std::abs(cube[4]) == 0.0);
    const Series inv = t.pow(-2LL);
    CHECK(close(inv[0], Complex(0.25), 1e-15));
    CHECK(close(inv[1], Complex(-0.25), 1e-15));
}
