#include <doctest.h>

#include <random>
#include <string>

#include "lemniscate/expression.hpp"
#include "test_helpers.hpp"

using namespace lemniscate;
using lemniscate::testing::close;

TEST_CASE("parser follows the documented precedence") {
    CHECK(parse_expression("1+2*3").eval(0.0) == Complex(7.0));
    CHECK(parse_expression("2*3^2").eval(0.0) == Complex(18.0));
    CHECK(parse_expression("8/2/2").eval(0.0) == Complex(2.0));
    CHECK(parse_expression("1-2-3").eval(0.0) == Complex(-4.0));
    // unary binds tighter than '^'
    CHECK(parse_expression("-z^2").eval(Complex(3.0)) == Complex(9.0));
    CHECK(parse_expression("-(z^2)").eval(Complex(3.0)) == Complex(-9.0));
}

TEST_CASE("eval examples") {
    CHECK(parse_expression("exp(z)").eval(0.0) == Complex(1.0));
    CHECK(close(parse_expression("1/(3-z)").eval(0.0), Complex(1.0 / 3.0), 1e-16));
    CHECK(close(parse_expression("z^2").eval(Complex(1, 1)), Complex(0, 2), 1e-15));
    CHECK(close(parse_expression("i*pi").eval(0.0), Complex(0, 3.141592653589793), 1e-16));
    CHECK(close(parse_expression("sqrt(z)").eval(Complex(-4.0)), Complex(0, 2), 1e-15));
    CHECK(close(parse_expression("log(z)").eval(Complex(-1.0)), Complex(0, 3.141592653589793), 1e-15));
    CHECK(close(parse_expression("z^(-2)").eval(Complex(2.0)), Complex(0.25), 1e-16));
    CHECK(close(parse_expression("z^0.5").eval(Complex(4.0)), Complex(2.0), 1e-15));
    CHECK(close(parse_expression("1.5e1 + .5").eval(0.0), Complex(15.5), 1e-16));
}

TEST_CASE("syntax errors carry a position") {
    auto position_of = [](const char* text) {
        try {
            parse_expression(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return ParseError::npos;
    };
    CHECK(position_of("1+") == 2);
    CHECK(position_of("(z") == 2);
    CHECK(position_of("z $ 2") == 2);
    CHECK(position_of("foo(z)") == 0);
    CHECK(position_of("z z") == 2);
    CHECK(position_of("z^z") == 1);
    CHECK(position_of("z^i") == 1);
    CHECK(position_of("exp z") == 4);
    CHECK(position_of("") == 0);
}

TEST_CASE("deep nesting is rejected instead of overflowing") {
    std::string text(1000, '(');
    text += "z";
    text += std::string(1000, ')');
    CHECK_THROWS_AS(parse_expression(text), ParseError);
}

namespace {

std::string random_expression(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 11 : 3);
    switch (pick(rng)) {
        case 0: return "z";
        case 1: return "i";
        case 2: return "pi";
        case 3: return std::to_string(std::uniform_int_distribution<int>(0, 99)(rng)) + ".25";
        case 4: return random_expression(rng, depth - 1) + "+" + random_expression(rng, depth - 1);
        case 5: return random_expression(rng, depth - 1) + "-" + random_expression(rng, depth - 1);
        case 6: return random_expression(rng, depth - 1) + "*" + random_expression(rng, depth - 1);
        case 7: return random_expression(rng, depth - 1) + "/(" + random_expression(rng, depth - 1) + ")";
        case 8: return "(" + random_expression(rng, depth - 1) + ")^" +
                       std::to_string(std::uniform_int_distribution<int>(-3, 3)(rng));
        case 9: return "-(" + random_expression(rng, depth - 1) + ")";
        case 10: {
            static const char* names[] = {"exp", "log", "sin", "cos", "sqrt"};
            return std::string(names[std::uniform_int_distribution<int>(0, 4)(rng)]) + "(" +
                   random_expression(rng, depth - 1) + ")";
        }
        default: return "(" + random_expression(rng, depth - 1) + ")^(-0.5)";
    }
}

}  // namespace

TEST_CASE("property: canonical printing round-trips structurally") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 500; ++trial) {
        const std::string text = random_expression(rng, 4);
        const Expression first = parse_expression(text);
        const Expression second = parse_expression(first.to_string());
        INFO(text, " -> ", first.to_string());
        CHECK(first == second);
        CHECK(first.to_string() == second.to_string());
    }
}

TEST_CASE("structural equality distinguishes trees") {
    CHECK_FALSE(parse_expression("z+1") == parse_expression("1+z"));
    CHECK(parse_expression("((z))") == parse_expression("z"));
    CHECK_FALSE(parse_expression("-z^2") == parse_expression("-(z^2)"));
}
