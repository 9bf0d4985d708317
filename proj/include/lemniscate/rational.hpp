#pragma once

#include <optional>
#include <vector>

#include "lemniscate/errors.hpp"

namespace lemniscate {

/// Ascending coefficients p[0] + p[1] z + ...; empty means the zero polynomial.
using Polynomial = std::vector<Complex>;

struct Root {
    Complex location;
    int multiplicity = 1;
};

Complex poly_eval(const Polynomial& p, Complex z);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& p, Complex c);
/// Product of (z - r)^m over the given roots.
Polynomial poly_from_roots(const std::vector<Root>& roots);
/// Quotient of p by (z - r), remainder discarded.
Polynomial poly_deflate(const Polynomial& p, Complex r);
/// Coefficients of p(a + t) in powers of t.
Polynomial poly_taylor_shift(const Polynomial& p, Complex a);
/// Roots with multiplicities; nearly coincident eigenvalues are clustered.
std::vector<Root> poly_roots(const Polynomial& p);

/// numerator(z) / prod_k (z - r_k)^{m_k}, kept in lowest terms.
class Rational {
public:
    Rational() = default;
    Rational(Polynomial numerator, std::vector<Root> denominator);

    static Rational constant(Complex c);
    static Rational identity();

    const Polynomial& numerator() const { return numerator_; }
    const std::vector<Root>& denominator() const { return denominator_; }
    bool is_zero() const { return numerator_.empty(); }

    Complex eval(Complex z) const;
    std::vector<Root> zeros() const { return poly_roots(numerator_); }
    const std::vector<Root>& poles() const { return denominator_; }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    /// Throws ParseError when b is identically zero.
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational pow(long long n) const;

private:
    void cancel();

    Polynomial numerator_;
    std::vector<Root> denominator_;
};

/// Merge tolerance for root locations that come from distinct factors.
bool same_point(Complex a, Complex b);

}  // namespace lemniscate
