#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "lemniscate/contour.hpp"
#include "lemniscate/function.hpp"
#include "lemniscate/point_set.hpp"
#include "lemniscate/tensor.hpp"

namespace lemniscate {

/// H_m(w, z; nodes) = (prod (w - z_k) - prod (z - z_k)) / (w - z); at w == z
/// the derivative of prod (w - z_k) is returned. Nodes must be distinct.
Complex h_kernel(Complex w, Complex z, std::span<const Complex> nodes);
/// The same kernel as a sum of Lagrange-type products.
Complex h_kernel_lagrange(Complex w, Complex z, std::span<const Complex> nodes);

/// sum_{j<m} (z - zm)^j / (w - zm)^{j+1}; DomainError when w == zm.
Complex confluent_kernel_limit(Complex z, Complex w, Complex zm, int m);
/// sum_j prod_{k != j} (z - z_k) / ((w - z_j) prod_{k != j} (z_j - z_k)),
/// whose limit as the nodes merge is confluent_kernel_limit.
Complex distinct_node_sum(Complex z, Complex w, std::span<const Complex> nodes);

enum class CoefficientMethod { Cauchy, Derivative };

std::string_view method_name(CoefficientMethod method);

/// a_{n,j,l} = (2 pi i)^-1 \oint f(w) dw / ((w - z_j)^{l+1} prod_k (w - z_k)^{n m_k}).
Complex coeff_cauchy(const ComplexFunction& f, const PointSet& points, int n, std::size_t j, int l,
                     const Contour& contour, const QuadratureOptions& options = {});

/// The same coefficient as a sum of scaled derivatives at the foci. With an
/// empty `pole_orders` f must be analytic at every focus; otherwise
/// pole_orders[k] is the order of the pole of f at focus k (0 if none).
Complex coeff_derivative(const ComplexFunction& f, const PointSet& points, int n, std::size_t j, int l,
                         std::span<const int> pole_orders = {});

struct TaylorExpansion {
    PointSet points;
    int N = 0;
    CoefficientTensor a;
    CoefficientMethod method = CoefficientMethod::Derivative;
    /// Quadrature error estimate (Cauchy method only).
    double est_error = 0.0;
};

/// All a_{n,j,l} with n < N. Throws GeometryError if f is singular at a focus
/// or no enclosing contour exists (Cauchy method).
TaylorExpansion expand_taylor(const ComplexFunction& f, const PointSet& points, int N, CoefficientMethod method,
                              const QuadratureOptions& options = {});
/// Cauchy method on a caller-supplied contour.
TaylorExpansion expand_taylor(const ComplexFunction& f, const PointSet& points, int N, const Contour& contour,
                              const QuadratureOptions& options = {});

/// sum_{n<N} q_{n,m}(z) prod_k (z - z_k)^{n m_k}
Complex eval_expansion(const TaylorExpansion& expansion, Complex z);

/// The polynomial of degree m - 1 attached to block n.
struct BasisPolynomial {
    PointSet points;
    /// coeffs[j][l] = a_{n,j,l}
    std::vector<std::vector<Complex>> coeffs;
};

BasisPolynomial basis_polynomial(const TaylorExpansion& expansion, int n);
/// q(z) = sum_j G_j(z) sum_{i<m_j} d_{j,i} (z - z_j)^i, where
/// G_j(z) = prod_{k != j} ((z - z_k)/(z_j - z_k))^{m_k} and d_j holds the
/// first m_j Taylor coefficients at z_j of (sum_l a_{n,j,l} t^l) / G_j(z_j + t).
/// For a simple focus d_{j,0} = a_{n,j,0}.
Complex basis_eval(const BasisPolynomial& q, Complex z);

/// r_N(z) = (2 pi i)^-1 \oint f(w) dw / ((w - z) prod (w - z_k)^{N m_k}) * prod (z - z_k)^{N m_k}.
/// Throws DomainError when z lies on the contour and ConvergenceError when
/// the quadrature misses its tolerance.
Complex remainder_exact(const ComplexFunction& f, const PointSet& points, int N, Complex z, const Contour& contour,
                        const QuadratureOptions& options = {});
/// Same, on the default enclosing circle through which z is also enclosed.
Complex remainder_exact(const ComplexFunction& f, const PointSet& points, int N, Complex z,
                        const QuadratureOptions& options = {});

}  // namespace lemniscate
