#include "lemniscate/taylor.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "expansion_core.hpp"

namespace lemniscate {

namespace {

void require_distinct(std::span<const Complex> nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t k = i + 1; k < nodes.size(); ++k) {
            if (nodes[i] == nodes[k]) throw DomainError("kernel nodes must be distinct");
        }
    }
}

std::vector<bool> all(std::size_t p) { return std::vector<bool>(p, true); }

void require_on_contour_free(const Contour& contour, Complex z) {
    if (contour.distance_to(z) <= 1e-12 * std::max(1.0, std::abs(z))) throw DomainError("point lies on the contour");
}

}  // namespace

Complex h_kernel(Complex w, Complex z, std::span<const Complex> nodes) {
    require_distinct(nodes);
    if (w == z) {
        Complex sum(0.0);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            Complex term(1.0);
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                if (k != j) term *= z - nodes[k];
            }
            sum += term;
        }
        return sum;
    }
    Complex pw(1.0), pz(1.0);
    for (const auto& zk : nodes) {
        pw *= w - zk;
        pz *= z - zk;
    }
    return (pw - pz) / (w - z);
}

Complex h_kernel_lagrange(Complex w, Complex z, std::span<const Complex> nodes) {
    require_distinct(nodes);
    Complex sum(0.0);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        Complex num(1.0), den(1.0);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (k == j) continue;
            num *= (w - nodes[k]) * (z - nodes[k]);
            den *= nodes[j] - nodes[k];
        }
        sum += num / den;
    }
    return sum;
}

Complex confluent_kernel_limit(Complex z, Complex w, Complex zm, int m) {
    if (w == zm) throw DomainError("confluent kernel needs w different from the merged node");
    if (m < 1) throw DomainError("confluent kernel needs m >= 1");
    const Complex ratio = (z - zm) / (w - zm);
    Complex term = 1.0 / (w - zm);
    Complex sum(0.0);
    for (int j = 0; j < m; ++j) {
        sum += term;
        term *= ratio;
    }
    return sum;
}

Complex distinct_node_sum(Complex z, Complex w, std::span<const Complex> nodes) {
    require_distinct(nodes);
    Complex sum(0.0);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (w == nodes[j]) throw DomainError("w coincides with a node");
        Complex num(1.0), den(1.0);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (k == j) continue;
            num *= z - nodes[k];
            den *= nodes[j] - nodes[k];
        }
        sum += num / ((w - nodes[j]) * den);
    }
    return sum;
}

std::string_view method_name(CoefficientMethod method) {
    return method == CoefficientMethod::Cauchy ? "cauchy" : "derivative";
}

Complex coeff_cauchy(const ComplexFunction& f, const PointSet& points, int n, std::size_t j, int l,
                     const Contour& contour, const QuadratureOptions& options) {
    if (j >= points.size() || l < 0 || l >= points[j].multiplicity || n < 0) {
        throw DomainError("coefficient index out of range");
    }
    std::vector<int> e(points.size());
    detail::exponents(detail::Pattern::TaylorA, points, 0, n, j, l, e);
    auto integrand = [&](Complex w) {
        Complex v = f.value(w);
        for (std::size_t s = 0; s < points.size(); ++s) v *= detail::integer_power(w - points[s].z, e[s]);
        return v;
    };
    double peak = 0.0;
    constexpr int kSample = 64;
    for (const auto& piece : contour.pieces()) {
        for (int k = 0; k < kSample; ++k) {
            peak = std::max(peak, std::abs(integrand(piece.center +
                                                     std::polar(piece.radius, 2.0 * std::numbers::pi * (k + 0.5) / kSample))));
        }
    }
    if (!(peak > 0.0) || !std::isfinite(peak)) peak = 1.0;
    const auto result = cauchy_integral([&](Complex w) { return integrand(w) / peak; }, contour, options);
    if (!result.converged) throw ConvergenceError("coefficient quadrature did not converge", result.est_error * peak);
    return result.value * peak;
}

Complex coeff_derivative(const ComplexFunction& f, const PointSet& points, int n, std::size_t j, int l,
                         std::span<const int> pole_orders) {
    if (j >= points.size() || l < 0 || l >= points[j].multiplicity || n < 0) {
        throw DomainError("coefficient index out of range");
    }
    std::vector<int> rho(points.size(), 0);
    if (pole_orders.empty()) {
        for (const auto& s : f.singularities()) {
            if (points.find(s.location) < points.size()) throw DomainError("a focus coincides with a singularity");
        }
    } else {
        if (pole_orders.size() != points.size()) throw DomainError("one pole order per focus expected");
        rho.assign(pole_orders.begin(), pole_orders.end());
    }
    const detail::FocalJets jets(f, points, rho, all(points.size()), n + 1);
    std::vector<int> e(points.size());
    detail::exponents(detail::Pattern::TaylorA, points, 0, n, j, l, e);
    Complex sum(0.0);
    for (std::size_t k = 0; k < points.size(); ++k) sum += jets.residue(k, e);
    return sum;
}

TaylorExpansion expand_taylor(const ComplexFunction& f, const PointSet& points, int N, CoefficientMethod method,
                              const QuadratureOptions& options) {
    if (N < 1) throw DomainError("N must be at least 1");
    for (const auto& s : f.singularities()) {
        if (points.find(s.location) < points.size()) {
            throw GeometryError("a singularity of f coincides with a focus; use a Laurent-type expansion");
        }
    }
    if (method == CoefficientMethod::Cauchy) {
        return expand_taylor(f, points, N, enclosing_contour(points, f.singularities()), options);
    }
    TaylorExpansion out{points, N, CoefficientTensor(N, points), method, 0.0};
    const detail::FocalJets jets(f, out.points, std::vector<int>(points.size(), 0), all(points.size()), N);
    detail::fill_residues(jets, out.points, detail::Pattern::TaylorA, 0, all(points.size()), out.a);
    return out;
}

TaylorExpansion expand_taylor(const ComplexFunction& f, const PointSet& points, int N, const Contour& contour,
                              const QuadratureOptions& options) {
    if (N < 1) throw DomainError("N must be at least 1");
    TaylorExpansion out{points, N, CoefficientTensor(N, points), CoefficientMethod::Cauchy, 0.0};
    detail::fill_cauchy(f, out.points, detail::Pattern::TaylorA, 0, out.a, contour, options, &out.est_error);
    return out;
}

Complex eval_expansion(const TaylorExpansion& expansion, Complex z) {
    const PointSet& s = expansion.points;
    const Complex product = s.product(z);
    Complex acc(0.0);
    for (int n = expansion.N - 1; n >= 0; --n) {
        acc = acc * product + detail::block_polynomial(s, 0, s.size(), expansion.a, n, z);
    }
    return acc;
}

BasisPolynomial basis_polynomial(const TaylorExpansion& expansion, int n) {
    if (n < 0 || n >= expansion.N) throw DomainError("block index out of range");
    BasisPolynomial q{expansion.points, {}};
    for (std::size_t j = 0; j < expansion.points.size(); ++j) {
        std::vector<Complex> row;
        for (int l = 0; l < expansion.points[j].multiplicity; ++l) row.push_back(expansion.a(n, j, l));
        q.coeffs.push_back(std::move(row));
    }
    return q;
}

Complex basis_eval(const BasisPolynomial& q, Complex z) {
    CoefficientTensor block(1, q.points);
    for (std::size_t j = 0; j < q.points.size(); ++j) {
        for (int l = 0; l < q.points[j].multiplicity; ++l) block(0, j, l) = q.coeffs[j][static_cast<std::size_t>(l)];
    }
    return detail::block_polynomial(q.points, 0, q.points.size(), block, 0, z);
}

Complex remainder_exact(const ComplexFunction& f, const PointSet& points, int N, Complex z, const Contour& contour,
                        const QuadratureOptions& options) {
    require_on_contour_free(contour, z);
    if (!contour.encloses(z)) throw DomainError("the remainder contour must enclose z");
    // (P(z)/P(w))^N stays inside the integral so the stopping rule sees the
    // scale of the result rather than of the bare integral
    const Complex pz = points.product(z);
    auto integrand = [&](Complex w) {
        return f.value(w) / (w - z) * detail::integer_power(pz / points.product(w), N);
    };
    const auto result = cauchy_integral(integrand, contour, options);
    if (!result.converged) throw ConvergenceError("remainder quadrature did not converge", result.est_error);
    return result.value;
}

Complex remainder_exact(const ComplexFunction& f, const PointSet& points, int N, Complex z,
                        const QuadratureOptions& options) {
    const Complex inside[] = {z};
    return remainder_exact(f, points, N, z, enclosing_contour(points, f.singularities(), inside), options);
}

}  // namespace lemniscate
