#include "lemniscate/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lemniscate {

namespace {

// A sum whose magnitude is below this fraction of its inputs is treated as an
// exact cancellation.
constexpr double kCancellation = 32.0 * std::numeric_limits<double>::epsilon();

Series from_dense(std::vector<Complex> dense) { return Series(0, std::move(dense)); }

}  // namespace

Series::Series(int valuation, std::vector<Complex> coefficients)
    : valuation_(valuation), coeffs_(std::move(coefficients)) {
    strip_exact_zeros();
}

void Series::strip_exact_zeros() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == Complex(0.0)) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        valuation_ += static_cast<int>(lead);
    }
}

Series Series::constant(Complex c, int order) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(order + 1), Complex(0.0));
    coeffs[0] = c;
    return Series(0, std::move(coeffs));
}

Series Series::variable(Complex center, int order) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(order + 1), Complex(0.0));
    coeffs[0] = center;
    if (order >= 1) coeffs[1] = Complex(1.0);
    return Series(0, std::move(coeffs));
}

Complex Series::operator[](int power) const {
    if (power < valuation_) return Complex(0.0);
    if (power >= precision()) {
        throw DomainError("series coefficient t^" + std::to_string(power) + " beyond known precision " +
                          std::to_string(precision()));
    }
    return coeffs_[static_cast<std::size_t>(power - valuation_)];
}

Series Series::operator-() const {
    Series out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

namespace {

Series add_scaled(const Series& a, const Series& b, double sign) {
    const int v = std::min(a.valuation(), b.valuation());
    const int prec = std::min(a.precision(), b.precision());
    std::vector<Complex> coeffs;
    coeffs.reserve(static_cast<std::size_t>(std::max(prec - v, 0)));
    bool leading = true;
    int start = v;
    for (int power = v; power < prec; ++power) {
        const Complex x = power >= a.valuation() ? a.coefficients()[static_cast<std::size_t>(power - a.valuation())]
                                                 : Complex(0.0);
        const Complex y = power >= b.valuation() ? b.coefficients()[static_cast<std::size_t>(power - b.valuation())]
                                                 : Complex(0.0);
        Complex sum = x + sign * y;
        if (leading) {
            if (std::abs(sum) <= kCancellation * (std::abs(x) + std::abs(y))) {
                ++start;
                continue;
            }
            leading = false;
        }
        coeffs.push_back(sum);
    }
    return Series(start, std::move(coeffs));
}

}  // namespace

Series operator+(const Series& a, const Series& b) { return add_scaled(a, b, 1.0); }
Series operator-(const Series& a, const Series& b) { return add_scaled(a, b, -1.0); }

Series operator*(const Series& a, const Series& b) {
    const std::size_t len = std::min(a.coeffs_.size(), b.coeffs_.size());
    std::vector<Complex> coeffs(len, Complex(0.0));
    for (std::size_t n = 0; n < len; ++n) {
        Complex sum(0.0);
        for (std::size_t k = 0; k <= n; ++k) sum += a.coeffs_[k] * b.coeffs_[n - k];
        coeffs[n] = sum;
    }
    if (len == 0) {
        return Series(std::min(a.precision() + b.valuation_, b.precision() + a.valuation_), {});
    }
    return Series(a.valuation_ + b.valuation_, std::move(coeffs));
}

Series operator/(const Series& a, const Series& b) {
    if (b.is_zero()) {
        throw DomainError("division by a series that vanishes to all known orders");
    }
    const std::size_t len = std::min(a.coeffs_.size(), b.coeffs_.size());
    std::vector<Complex> coeffs(len, Complex(0.0));
    const Complex lead = b.coeffs_[0];
    for (std::size_t n = 0; n < len; ++n) {
        Complex sum = a.coeffs_[n];
        for (std::size_t k = 1; k <= n; ++k) sum -= b.coeffs_[k] * coeffs[n - k];
        coeffs[n] = sum / lead;
    }
    if (len == 0) {
        return Series(a.valuation_ - b.valuation_, {});
    }
    return Series(a.valuation_ - b.valuation_, std::move(coeffs));
}

Series operator+(const Series& a, Complex c) { return a + Series::constant(c, std::max(a.precision(), 1) - 1); }
Series operator-(const Series& a, Complex c) { return a - Series::constant(c, std::max(a.precision(), 1) - 1); }

Series operator*(const Series& a, Complex c) {
    if (c == Complex(0.0)) return Series(a.precision(), {});
    Series out = a;
    for (auto& x : out.coeffs_) x *= c;
    return out;
}

Series operator/(const Series& a, Complex c) {
    if (c == Complex(0.0)) throw DomainError("series division by zero constant");
    Series out = a;
    for (auto& x : out.coeffs_) x /= c;
    return out;
}

Series Series::pow(long long n) const {
    if (n == 0) {
        return Series::constant(Complex(1.0), std::max(static_cast<int>(coeffs_.size()), 1) - 1);
    }
    if (n < 0) {
        const Series positive = pow(-n);
        return Series::constant(Complex(1.0), std::max(static_cast<int>(positive.coeffs_.size()), 1) - 1) /
               positive;
    }
    Series base = *this;
    Series result;
    bool have = false;
    while (n > 0) {
        if (n & 1) {
            result = have ? result * base : base;
            have = true;
        }
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

std::vector<Complex> Series::dense(const char* operation) const {
    if (valuation_ < 0) {
        throw DomainError(std::string(operation) + " of a series with a pole at the center");
    }
    std::vector<Complex> out(static_cast<std::size_t>(std::max(precision(), 0)), Complex(0.0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[static_cast<std::size_t>(valuation_) + i] = coeffs_[i];
    return out;
}

Series Series::pow(double exponent) const {
    if (exponent == std::round(exponent) && std::abs(exponent) < 1e9) {
        return pow(static_cast<long long>(exponent));
    }
    const std::vector<Complex> a = dense("non-integer power");
    if (a.empty()) return Series(0, {});
    if (a[0] == Complex(0.0)) throw DomainError("non-integer power at a branch point");
    std::vector<Complex> b(a.size(), Complex(0.0));
    b[0] = std::pow(a[0], exponent);
    for (std::size_t k = 1; k < a.size(); ++k) {
        Complex sum(0.0);
        for (std::size_t j = 1; j <= k; ++j) {
            sum += ((exponent + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a[j] * b[k - j];
        }
        b[k] = sum / (static_cast<double>(k) * a[0]);
    }
    return from_dense(std::move(b));
}

Series exp(const Series& s) {
    const std::vector<Complex> a = s.dense("exp");
    if (a.empty()) return Series(0, {});
    std::vector<Complex> b(a.size(), Complex(0.0));
    b[0] = std::exp(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        Complex sum(0.0);
        for (std::size_t j = 1; j <= k; ++j) sum += static_cast<double>(j) * a[j] * b[k - j];
        b[k] = sum / static_cast<double>(k);
    }
    return from_dense(std::move(b));
}

Series log(const Series& s) {
    const std::vector<Complex> a = s.dense("log");
    if (a.empty()) return Series(0, {});
    if (a[0] == Complex(0.0)) throw DomainError("log at a branch point");
    std::vector<Complex> b(a.size(), Complex(0.0));
    b[0] = std::log(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        Complex sum(0.0);
        for (std::size_t j = 1; j < k; ++j) sum += static_cast<double>(j) * b[j] * a[k - j];
        b[k] = (a[k] - sum / static_cast<double>(k)) / a[0];
    }
    return from_dense(std::move(b));
}

namespace {

void sin_cos(const std::vector<Complex>& a, std::vector<Complex>& s, std::vector<Complex>& c) {
    s.assign(a.size(), Complex(0.0));
    c.assign(a.size(), Complex(0.0));
    if (a.empty()) return;
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        Complex ss(0.0), cc(0.0);
        for (std::size_t j = 1; j <= k; ++j) {
            ss += static_cast<double>(j) * a[j] * c[k - j];
            cc += static_cast<double>(j) * a[j] * s[k - j];
        }
        s[k] = ss / static_cast<double>(k);
        c[k] = -cc / static_cast<double>(k);
    }
}

}  // namespace

Series sin(const Series& x) {
    std::vector<Complex> s, c;
    sin_cos(x.dense("sin"), s, c);
    return from_dense(std::move(s));
}

Series cos(const Series& x) {
    std::vector<Complex> s, c;
    sin_cos(x.dense("cos"), s, c);
    return from_dense(std::move(c));
}

Series sqrt(const Series& s) {
    const std::vector<Complex> a = s.dense("sqrt");
    if (a.empty()) return Series(0, {});
    if (a[0] == Complex(0.0)) throw DomainError("sqrt at a branch point");
    std::vector<Complex> b(a.size(), Complex(0.0));
    b[0] = std::sqrt(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        Complex sum(0.0);
        for (std::size_t j = 1; j <= k; ++j) {
            sum += (1.5 * static_cast<double>(j) - static_cast<double>(k)) * a[j] * b[k - j];
        }
        b[k] = sum / (static_cast<double>(k) * a[0]);
    }
    return from_dense(std::move(b));
}

}  // namespace lemniscate
