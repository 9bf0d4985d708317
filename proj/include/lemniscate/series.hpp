#pragma once

#include <span>
#include <vector>

#include "lemniscate/errors.hpp"

namespace lemniscate {

/// Truncated Laurent series  sum_i c_i t^(v+i)  about some center, t = w - center.
///
/// Terms are known exactly through t^(precision()-1). Leading coefficients
/// that cancel to rounding level in a sum are stripped, so a function with a
/// zero (or pole) at the center acquires a positive (or negative) valuation.
class Series {
public:
    Series() = default;
    Series(int valuation, std::vector<Complex> coefficients);

    /// Constant c known through t^order.
    static Series constant(Complex c, int order);
    /// The identity w expanded about `center`, known through t^order.
    static Series variable(Complex center, int order);

    int valuation() const { return valuation_; }
    int precision() const { return valuation_ + static_cast<int>(coeffs_.size()); }
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const Complex> coefficients() const { return coeffs_; }

    /// Coefficient of t^power; zero below the valuation.
    Complex operator[](int power) const;

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator/(const Series& a, const Series& b);

    friend Series operator+(const Series& a, Complex c);
    friend Series operator-(const Series& a, Complex c);
    friend Series operator*(const Series& a, Complex c);
    friend Series operator*(Complex c, const Series& a) { return a * c; }
    friend Series operator/(const Series& a, Complex c);

    Series& operator+=(const Series& b) { return *this = *this + b; }
    Series& operator*=(const Series& b) { return *this = *this * b; }

    Series pow(long long n) const;
    /// Principal branch; requires a nonzero constant term.
    Series pow(double exponent) const;

    friend Series exp(const Series& a);
    friend Series log(const Series& a);
    friend Series sin(const Series& a);
    friend Series cos(const Series& a);
    friend Series sqrt(const Series& a);

private:
    // Dense coefficients from t^0 through t^(precision-1); requires valuation >= 0.
    std::vector<Complex> dense(const char* operation) const;
    void strip_exact_zeros();

    int valuation_ = 0;
    std::vector<Complex> coeffs_;
};

}  // namespace lemniscate
