#pragma once

// Machinery shared by the Taylor and Laurent-type expansions. Every
// coefficient family is a contour integral of f(w) * prod_s (w - z_s)^{e_s};
// a pattern fixes the exponent vector e for each tensor entry (n, j, l).

#include <optional>
#include <span>
#include <vector>

#include "lemniscate/contour.hpp"
#include "lemniscate/function.hpp"
#include "lemniscate/point_set.hpp"
#include "lemniscate/series.hpp"
#include "lemniscate/tensor.hpp"

namespace lemniscate::detail {

enum class Pattern {
    TaylorA,       // 1 / ((w - z_j)^{l+1} P(w)^n)
    LaurentB,      // P(w)^{n+1} / (w - z_j)^{l+1}
    SplitB,        // R(w)^n / (w - z_j)^{l+1},  R = prod_{k>=q} / prod_{k<q}
    SplitC,        // R(w)^{n+1} / (w - z_j)^{l+1}
};

void exponents(Pattern pattern, const PointSet& points, std::size_t split, int n, std::size_t j, int l,
               std::span<int> out);

Complex integer_power(Complex x, int e);

/// Cauchy integrals of one pattern for all entries of `shape`. Throws
/// ConvergenceError when the batch misses its tolerance.
void fill_cauchy(const ComplexFunction& f, const PointSet& points, Pattern pattern, std::size_t split,
                 CoefficientTensor& shape, const Contour& contour, const QuadratureOptions& options,
                 double* est_error);

/// Laurent data of g_k(w) = (w - z_k)^{rho_k} f(w) at every focus.
class FocalJets {
public:
    /// rho[k] is the declared pole order at focus k (0 for regular foci);
    /// only foci with use[k] are expanded. Throws DomainError when f has a
    /// stronger singularity than declared. Jets reach D^{rho_k + blocks m_k}.
    FocalJets(const ComplexFunction& f, const PointSet& points, std::vector<int> rho, const std::vector<bool>& use,
              int blocks);

    /// D^{rho_k - e_k - 1}[ g_k(w) prod_{s != k} (w - z_s)^{e_s} ] at z_k:
    /// the residue at z_k of f(w) prod_s (w - z_s)^{e_s}.
    Complex residue(std::size_t k, std::span<const int> e) const;

private:
    const PointSet& points_;
    std::vector<int> rho_;
    std::vector<std::vector<Complex>> g_;
};

/// Sum of residues at the foci in `inside` for each entry of `shape`.
void fill_residues(const FocalJets& jets, const PointSet& points, Pattern pattern, std::size_t split,
                   const std::vector<bool>& inside, CoefficientTensor& shape);

/// Pole orders at the foci from the declared singularities; throws
/// DomainError for a non-pole singularity at a focus.
std::vector<int> declared_focal_orders(const ComplexFunction& f, const PointSet& points);

/// Taylor coefficients through t^{m_j - 1} of prod_{k in [first,last), k != j} (1 + t/(z_j - z_k))^{-m_k}.
std::vector<Complex> weight_correction(const PointSet& points, std::size_t first, std::size_t last, std::size_t j);

/// Block polynomial over the foci [first, last):
///   sum_j prod_{k != j} ((z - z_k)/(z_j - z_k))^{m_k} sum_{i < m_j} d_{j,i} (z - z_j)^i
/// where d_j = (c(n, j, .) * weight_correction) truncated to degree m_j - 1.
/// The correction makes the block interpolate derivative data at a
/// repeated focus; it is 1 when m_j = 1 or only one focus is involved.
template <class T>
T block_polynomial(const PointSet& points, std::size_t first, std::size_t last, const CoefficientTensor& c, int n,
                   const T& z) {
    std::optional<T> total;
    for (std::size_t j = first; j < last; ++j) {
        const int m = points[j].multiplicity;
        const std::vector<Complex> gamma = weight_correction(points, first, last, j);
        std::vector<Complex> d(static_cast<std::size_t>(m), Complex(0.0));
        for (int i = 0; i < m; ++i) {
            for (int l = 0; l <= i; ++l) d[static_cast<std::size_t>(i)] += c(n, j, l) * gamma[static_cast<std::size_t>(i - l)];
        }
        const T t = z - points[j].z;
        std::optional<T> inner;
        for (int i = m - 1; i >= 0; --i) {
            inner = inner ? *inner * t + d[static_cast<std::size_t>(i)] : t * Complex(0.0) + d[static_cast<std::size_t>(i)];
        }
        T term = *inner;
        for (std::size_t k = first; k < last; ++k) {
            if (k == j) continue;
            const Complex denom = points[j].z - points[k].z;
            const T ratio = (z - points[k].z) / denom;
            for (int e = 0; e < points[k].multiplicity; ++e) term = term * ratio;
        }
        total = total ? *total + term : term;
    }
    return *total;
}

}  // namespace lemniscate::detail
