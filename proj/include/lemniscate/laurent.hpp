#pragma once

#include <span>
#include <vector>

#include "lemniscate/contour.hpp"
#include "lemniscate/function.hpp"
#include "lemniscate/point_set.hpp"
#include "lemniscate/taylor.hpp"
#include "lemniscate/tensor.hpp"

namespace lemniscate {

/// Pole order of f at each focus (0 for a regular focus).
struct PoleProfile {
    std::vector<int> orders;
};

/// Profile read from the declared singularities of f. Throws DomainError if
/// a focus carries an essential singularity or branch point.
PoleProfile declared_pole_profile(const ComplexFunction& f, const PointSet& points);

/// f = sum q_n P^n + sum t_n P^{-(n+1)} + r_N on the annulus about the foci.
struct LaurentExpansion {
    PointSet points;
    int N = 0;
    CoefficientTensor a;
    CoefficientTensor b;
    CoefficientMethod method = CoefficientMethod::Derivative;
    double delta = 0.0;
    double est_error = 0.0;
};

/// Foci [0, split) are regular, [split, p) are singular. With
/// Q = prod_{k<split}(z - z_k)^{m_k} / prod_{k>=split}(z - z_k)^{m_k}:
/// f = sum q_n P^n + sum t1_n Q^n + sum t2_n Q^{n+1} + r_N.
struct TaylorLaurentExpansion {
    PointSet points;
    std::size_t split = 0;
    int N = 0;
    CoefficientTensor a;  ///< all foci
    CoefficientTensor b;  ///< regular foci
    CoefficientTensor c;  ///< singular foci
    CoefficientMethod method = CoefficientMethod::Derivative;
    double delta = 0.0;
    double est_error = 0.0;
};

/// a on `outer` (which encloses `inner`), b on `inner` (which encloses every focus).
LaurentExpansion expand_laurent_cauchy(const ComplexFunction& f, const PointSet& points, int N, const Contour& outer,
                                       const Contour& inner, const QuadratureOptions& options = {});
/// Scaled-derivative formulas at the foci; requires the only singularities
/// at foci to be poles no stronger than `profile`.
LaurentExpansion expand_laurent_poles(const ComplexFunction& f, const PointSet& points, int N,
                                      const PoleProfile& profile);
/// Default contours (delta <= 0 picks the default excluded-disk radius);
/// the derivative method uses the declared pole profile.
LaurentExpansion expand_laurent(const ComplexFunction& f, const PointSet& points, int N, CoefficientMethod method,
                                double delta = 0.0, const QuadratureOptions& options = {});

TaylorLaurentExpansion expand_taylor_laurent_cauchy(const ComplexFunction& f, const PointSet& points,
                                                    std::size_t split, int N, const Contour& outer,
                                                    const Contour& inner, const QuadratureOptions& options = {});
TaylorLaurentExpansion expand_taylor_laurent_poles(const ComplexFunction& f, const PointSet& points,
                                                   std::size_t split, int N, const PoleProfile& profile);
TaylorLaurentExpansion expand_taylor_laurent(const ComplexFunction& f, const PointSet& points, std::size_t split,
                                             int N, CoefficientMethod method, double delta = 0.0,
                                             const QuadratureOptions& options = {});

/// Checks 1 <= split < p and that no regular focus is a singular point.
void validate_split(const ComplexFunction& f, const PointSet& points, std::size_t split);

/// Mask of the foci inside the excluded set: all foci for the Laurent
/// expansion, foci [split, p) for the Taylor-Laurent expansion.
std::vector<bool> excluded_foci(const PointSet& points, std::size_t split);

Complex eval_expansion(const LaurentExpansion& expansion, Complex z);
Complex eval_expansion(const TaylorLaurentExpansion& expansion, Complex z);
/// sum_{n<N} t_n(z) P(z)^{-(n+1)}
Complex eval_principal(const LaurentExpansion& expansion, Complex z);
/// sum_{n<N} t1_n(z) Q(z)^n + t2_n(z) Q(z)^{n+1}
Complex eval_principal(const TaylorLaurentExpansion& expansion, Complex z);

/// Two-contour remainder; z must lie inside `outer` and outside `inner`.
Complex laurent_remainder_exact(const ComplexFunction& f, const PointSet& points, int N, Complex z,
                                const Contour& outer, const Contour& inner, const QuadratureOptions& options = {});
Complex laurent_remainder_exact(const ComplexFunction& f, const PointSet& points, std::size_t split, int N, Complex z,
                                const Contour& outer, const Contour& inner, const QuadratureOptions& options = {});

/// g = f minus the principal blocks n <= M, M = floor(max_k (rho_k - 1)/m_k)
/// over the singular foci. g is analytic at the foci when the declared
/// orders are sufficient; series() raises DomainError otherwise.
class PrincipalPartRemoved final : public ComplexFunction {
public:
    /// Laurent form: every focus may be singular.
    PrincipalPartRemoved(const ComplexFunction& f, const PointSet& points, const PoleProfile& profile);
    /// Taylor-Laurent form: foci [split, p) singular.
    PrincipalPartRemoved(const ComplexFunction& f, const PointSet& points, std::size_t split,
                         const PoleProfile& profile);

    int blocks_removed() const { return removed_; }

    Complex value(Complex z) const override;
    Series series(Complex center, int order) const override;
    std::span<const Singularity> singularities() const override { return remaining_; }

private:
    template <class T>
    T subtracted(const T& z) const;

    const ComplexFunction& f_;
    PointSet points_;
    std::size_t split_ = 0;
    bool taylor_laurent_ = false;
    int removed_ = 0;
    CoefficientTensor b_;
    CoefficientTensor c_;
    std::vector<Singularity> remaining_;
};

}  // namespace lemniscate
