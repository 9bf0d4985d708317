#include "lemniscate/rational.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace lemniscate {

namespace {

constexpr double kTrim = 1e-13;
constexpr double kCluster = 2e-4;
constexpr double kCancelZero = 1e-10;

double max_abs(const Polynomial& p) {
    double m = 0.0;
    for (const auto& c : p) m = std::max(m, std::abs(c));
    return m;
}

void trim(Polynomial& p, double scale) {
    while (!p.empty() && std::abs(p.back()) <= kTrim * scale) p.pop_back();
}

void merge_root(std::vector<Root>& roots, Complex location, int multiplicity) {
    for (auto& r : roots) {
        if (same_point(r.location, location)) {
            r.multiplicity += multiplicity;
            return;
        }
    }
    roots.push_back({location, multiplicity});
}

int multiplicity_of(const std::vector<Root>& roots, Complex location) {
    for (const auto& r : roots) {
        if (same_point(r.location, location)) return r.multiplicity;
    }
    return 0;
}

}  // namespace

bool same_point(Complex a, Complex b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

Complex poly_eval(const Polynomial& p, Complex z) {
    Complex sum(0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) sum = sum * z + *it;
    return sum;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    Polynomial out(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    Polynomial out(std::max(a.size(), b.size()), Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim(out, std::max(max_abs(a), max_abs(b)));
    return out;
}

Polynomial poly_scale(const Polynomial& p, Complex c) {
    if (c == Complex(0.0)) return {};
    Polynomial out = p;
    for (auto& x : out) x *= c;
    return out;
}

Polynomial poly_from_roots(const std::vector<Root>& roots) {
    Polynomial out{Complex(1.0)};
    for (const auto& r : roots) {
        for (int k = 0; k < r.multiplicity; ++k) out = poly_mul(out, Polynomial{-r.location, Complex(1.0)});
    }
    return out;
}

Polynomial poly_deflate(const Polynomial& p, Complex r) {
    if (p.size() <= 1) return {};
    Polynomial q(p.size() - 1, Complex(0.0));
    Complex carry(0.0);
    for (std::size_t k = p.size() - 1; k >= 1; --k) {
        carry = carry * r + p[k];
        q[k - 1] = carry;
    }
    return q;
}

Polynomial poly_taylor_shift(const Polynomial& p, Complex a) {
    // Repeated synthetic division by (z - a).
    Polynomial work = p;
    Polynomial out(p.size(), Complex(0.0));
    const std::size_t n = p.size();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t len = n - k;
        for (std::size_t i = len - 1; i >= 1; --i) work[i - 1] += a * work[i];
        out[k] = work[0];
        work.erase(work.begin());
    }
    return out;
}

std::vector<Root> poly_roots(const Polynomial& p_in) {
    Polynomial p = p_in;
    trim(p, max_abs(p));
    std::vector<Root> roots;
    if (p.size() <= 1) return roots;
    // Zero roots are extracted exactly.
    int zero_mult = 0;
    while (p.size() > 1 && p.front() == Complex(0.0)) {
        p.erase(p.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) roots.push_back({Complex(0.0), zero_mult});
    const std::size_t degree = p.size() - 1;
    if (degree == 0) return roots;
    std::vector<Complex> raw;
    if (degree == 1) {
        raw.push_back(-p[0] / p[1]);
    } else {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(degree),
                                                            static_cast<Eigen::Index>(degree));
        for (std::size_t i = 1; i < degree; ++i) {
            companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
        }
        for (std::size_t i = 0; i < degree; ++i) {
            companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) = -p[i] / p[degree];
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) raw.push_back(solver.eigenvalues()(i));
    }
    std::sort(raw.begin(), raw.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<bool> used(raw.size(), false);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        std::vector<Complex> cluster{raw[i]};
        used[i] = true;
        // single linkage: a multiple root scatters into a small ring
        for (std::size_t head = 0; head < cluster.size(); ++head) {
            for (std::size_t j = i + 1; j < raw.size(); ++j) {
                if (!used[j] && std::abs(raw[j] - cluster[head]) <= kCluster * std::max(1.0, std::abs(cluster[head]))) {
                    cluster.push_back(raw[j]);
                    used[j] = true;
                }
            }
        }
        Complex mean(0.0);
        for (const auto& c : cluster) mean += c;
        mean /= static_cast<double>(cluster.size());
        // a root of multiplicity k is a simple root of the (k-1)th derivative
        Polynomial q = p;
        for (std::size_t d = 1; d < cluster.size(); ++d) {
            Polynomial next(q.size() - 1);
            for (std::size_t k = 1; k < q.size(); ++k) next[k - 1] = static_cast<double>(k) * q[k];
            q = std::move(next);
        }
        Polynomial dq(q.size() > 1 ? q.size() - 1 : 1, Complex(0.0));
        for (std::size_t k = 1; k < q.size(); ++k) dq[k - 1] = static_cast<double>(k) * q[k];
        for (int it = 0; it < 4; ++it) {
            const Complex d = poly_eval(dq, mean);
            if (d == Complex(0.0)) break;
            const Complex step = poly_eval(q, mean) / d;
            if (!std::isfinite(std::abs(step)) || std::abs(step) > kCluster * std::max(1.0, std::abs(mean))) break;
            mean -= step;
        }
        // Snap tiny imaginary/real parts produced by the eigen-solver.
        const double mag = std::max(1.0, std::abs(mean));
        if (std::abs(mean.imag()) <= 1e-14 * mag) mean.imag(0.0);
        if (std::abs(mean.real()) <= 1e-14 * mag) mean.real(0.0);
        roots.push_back({mean, static_cast<int>(cluster.size())});
    }
    return roots;
}

// ---------------------------------------------------------------------------

Rational::Rational(Polynomial numerator, std::vector<Root> denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    trim(numerator_, max_abs(numerator_));
    cancel();
}

Rational Rational::constant(Complex c) {
    if (c == Complex(0.0)) return Rational({}, {});
    return Rational({c}, {});
}

Rational Rational::identity() { return Rational({Complex(0.0), Complex(1.0)}, {}); }

Complex Rational::eval(Complex z) const {
    Complex den(1.0);
    for (const auto& r : denominator_) den *= std::pow(z - r.location, r.multiplicity);
    return poly_eval(numerator_, z) / den;
}

void Rational::cancel() {
    if (numerator_.empty()) {
        denominator_.clear();
        return;
    }
    for (auto& r : denominator_) {
        while (r.multiplicity > 0 && numerator_.size() > 1) {
            double scale = 0.0;
            double power = 1.0;
            for (const auto& c : numerator_) {
                scale += std::abs(c) * power;
                power *= std::abs(r.location);
            }
            if (std::abs(poly_eval(numerator_, r.location)) > kCancelZero * scale) break;
            numerator_ = poly_deflate(numerator_, r.location);
            --r.multiplicity;
        }
    }
    std::erase_if(denominator_, [](const Root& r) { return r.multiplicity <= 0; });
}

Rational Rational::operator-() const { return Rational(poly_scale(numerator_, Complex(-1.0)), denominator_); }

namespace {

Rational combine(const Rational& a, const Rational& b, double sign) {
    if (a.is_zero()) return sign > 0 ? b : -b;
    if (b.is_zero()) return a;
    std::vector<Root> den = a.denominator();
    for (const auto& r : b.denominator()) {
        bool found = false;
        for (auto& d : den) {
            if (same_point(d.location, r.location)) {
                d.multiplicity = std::max(d.multiplicity, r.multiplicity);
                found = true;
            }
        }
        if (!found) den.push_back(r);
    }
    auto complement = [&](const std::vector<Root>& own) {
        std::vector<Root> missing;
        for (const auto& d : den) {
            const int extra = d.multiplicity - multiplicity_of(own, d.location);
            if (extra > 0) missing.push_back({d.location, extra});
        }
        return poly_from_roots(missing);
    };
    const Polynomial na = poly_mul(a.numerator(), complement(a.denominator()));
    const Polynomial nb = poly_scale(poly_mul(b.numerator(), complement(b.denominator())), Complex(sign));
    return Rational(poly_add(na, nb), den);
}

}  // namespace

Rational operator+(const Rational& a, const Rational& b) { return combine(a, b, 1.0); }
Rational operator-(const Rational& a, const Rational& b) { return combine(a, b, -1.0); }

Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return Rational::constant(Complex(0.0));
    std::vector<Root> den = a.denominator();
    for (const auto& r : b.denominator()) merge_root(den, r.location, r.multiplicity);
    return Rational(poly_mul(a.numerator(), b.numerator()), den);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) {
        throw ParseError("division by a denominator that is identically zero");
    }
    if (a.is_zero()) return a;
    std::vector<Root> den = a.denominator();
    for (const auto& r : poly_roots(b.numerator())) merge_root(den, r.location, r.multiplicity);
    Polynomial num = poly_mul(a.numerator(), poly_from_roots(b.denominator()));
    num = poly_scale(num, Complex(1.0) / b.numerator().back());
    return Rational(std::move(num), den);
}

Rational Rational::pow(long long n) const {
    if (n == 0) return Rational::constant(Complex(1.0));
    if (n < 0) return Rational::constant(Complex(1.0)) / pow(-n);
    Rational result = Rational::constant(Complex(1.0));
    Rational base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

}  // namespace lemniscate
