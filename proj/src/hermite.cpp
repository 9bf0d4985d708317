#include "lemniscate/hermite.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "lemniscate/taylor.hpp"

namespace lemniscate {

namespace {

class DividedDifferences {
public:
    DividedDifferences(const PointSet& points, std::vector<std::vector<Complex>> jets)
        : points_(points), jets_(std::move(jets)) {}

    Complex operator()(const std::vector<int>& counts) {
        if (auto it = memo_.find(counts); it != memo_.end()) return it->second;
        std::size_t a = counts.size(), b = counts.size();
        for (std::size_t k = 0; k < counts.size(); ++k) {
            if (counts[k] == 0) continue;
            if (a == counts.size()) {
                a = k;
            } else {
                b = k;
                break;
            }
        }
        Complex value;
        if (b == counts.size()) {
            value = jets_[a][static_cast<std::size_t>(counts[a] - 1)];
        } else {
            std::vector<int> without_a = counts, without_b = counts;
            --without_a[a];
            --without_b[b];
            value = ((*this)(without_a) - (*this)(without_b)) / (points_[b].z - points_[a].z);
        }
        memo_.emplace(counts, value);
        return value;
    }

private:
    const PointSet& points_;
    std::vector<std::vector<Complex>> jets_;
    std::map<std::vector<int>, Complex> memo_;
};

}  // namespace

HermitePolynomial hermite_interpolate(const ComplexFunction& f, const PointSet& points, int N,
                                      NodeOrdering ordering) {
    if (N < 1) throw DomainError("N must be at least 1");
    HermitePolynomial out{points, N, {}, {}};
    std::vector<std::size_t> sequence;
    if (ordering == NodeOrdering::Interleaved) {
        for (int n = 0; n < N; ++n) {
            for (std::size_t k = 0; k < points.size(); ++k) {
                for (int i = 0; i < points[k].multiplicity; ++i) sequence.push_back(k);
            }
        }
    } else {
        for (std::size_t k = 0; k < points.size(); ++k) {
            for (int i = 0; i < N * points[k].multiplicity; ++i) sequence.push_back(k);
        }
    }
    std::vector<std::vector<Complex>> jets;
    for (const auto& focus : points.foci()) {
        const int order = N * focus.multiplicity - 1;
        const Series s = f.series(focus.z, order);
        if (s.valuation() < 0) throw DomainError("f is singular at a focus");
        if (s.precision() <= order) throw DomainError("insufficient jet order at a focus");
        std::vector<Complex> jet;
        for (int i = 0; i <= order; ++i) jet.push_back(s[i]);
        jets.push_back(std::move(jet));
    }
    DividedDifferences dd(points, std::move(jets));
    std::vector<int> counts(points.size(), 0);
    for (std::size_t k : sequence) {
        ++counts[k];
        out.nodes.push_back(points[k].z);
        out.newton_coeffs.push_back(dd(counts));
    }
    return out;
}

Complex eval_hermite(const HermitePolynomial& h, Complex z) {
    Complex acc(0.0);
    for (std::size_t k = h.nodes.size(); k-- > 0;) acc = acc * (z - h.nodes[k]) + h.newton_coeffs[k];
    return acc;
}

Complex residue_coeffs_rational(const AnalyticFunction& f, const PointSet& points, int n, std::size_t j, int l,
                                const std::optional<Contour>& contour) {
    if (!f.rational()) throw DomainError("residue oracle needs a rational function");
    if (n < 0 || j >= points.size() || l < 0 || l >= points[j].multiplicity) {
        throw DomainError("coefficient index out of range");
    }
    const Rational& r = *f.rational();
    // denominator of the integrand as linear factors (location, exponent)
    std::vector<std::pair<Complex, int>> factors;
    auto add = [&](Complex at, int e) {
        for (auto& [z, k] : factors) {
            if (same_point(z, at)) {
                k += e;
                return;
            }
        }
        factors.push_back({at, e});
    };
    for (std::size_t k = 0; k < points.size(); ++k) add(points[k].z, n * points[k].multiplicity);
    add(points[j].z, l + 1);
    for (const auto& pole : r.poles()) {
        const std::size_t k = points.find(pole.location);
        add(k < points.size() ? points[k].z : pole.location, pole.multiplicity);
    }
    Complex total(0.0);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto [at, order] = factors[i];
        if (order <= 0) continue;
        const bool focus = points.find(at) < points.size();
        if (!focus && !(contour && contour->encloses(at))) continue;
        // residue = [t^{order-1}] numerator(at + t) / prod_{other} (at + t - b)^{e_b}
        Polynomial rest{Complex(1.0)};
        for (std::size_t s = 0; s < factors.size(); ++s) {
            if (s == i) continue;
            for (int e = 0; e < factors[s].second; ++e) rest = poly_mul(rest, {-factors[s].first, Complex(1.0)});
        }
        const Polynomial num = poly_taylor_shift(r.numerator(), at);
        const Polynomial den = poly_taylor_shift(rest, at);
        const std::size_t len = static_cast<std::size_t>(order);
        std::vector<Complex> q(len, Complex(0.0));
        for (std::size_t k = 0; k < len; ++k) {
            Complex v = k < num.size() ? num[k] : Complex(0.0);
            for (std::size_t i2 = 1; i2 <= k && i2 < den.size(); ++i2) v -= den[i2] * q[k - i2];
            q[k] = v / den[0];
        }
        total += q[len - 1];
    }
    return total;
}

OrderCheck remainder_order_check(const ComplexFunction& f, const PointSet& points, int N, std::size_t j,
                                 std::uint64_t seed) {
    if (j >= points.size()) throw DomainError("focus index out of range");
    std::mt19937_64 rng(seed);
    const double angle = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
    const Complex u = std::polar(1.0, angle);
    OrderCheck out;
    out.exact = true;
    for (double t : {1e-2, 1e-3, 1e-4}) {
        const double r = std::abs(remainder_exact(f, points, N, points[j].z + t * u));
        out.t.push_back(t);
        out.remainder.push_back(r);
        if (!(r < 1e-13)) out.exact = false;
    }
    if (out.exact) return out;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < out.t.size(); ++i) {
        mx += std::log(out.t[i]);
        my += std::log(out.remainder[i]);
    }
    mx /= 3.0;
    my /= 3.0;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < out.t.size(); ++i) {
        const double dx = std::log(out.t[i]) - mx;
        num += dx * (std::log(out.remainder[i]) - my);
        den += dx * dx;
    }
    out.slope = num / den;
    return out;
}

}  // namespace lemniscate
