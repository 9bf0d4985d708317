#include "lemniscate/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expansion_core.hpp"

namespace lemniscate {

namespace {

using detail::Pattern;

std::vector<int> checked_orders(const PointSet& points, const PoleProfile& profile) {
    if (profile.orders.size() != points.size()) throw DomainError("pole profile needs one order per focus");
    for (int r : profile.orders) {
        if (r < 0) throw DomainError("pole orders must be nonnegative");
    }
    return profile.orders;
}

void require_between(const Contour& outer, const Contour& inner, Complex z) {
    const double tol = 1e-12 * std::max(1.0, std::abs(z));
    if (outer.distance_to(z) <= tol || inner.distance_to(z) <= tol) throw DomainError("point lies on a contour");
    if (!outer.encloses(z)) throw DomainError("point must lie inside the outer contour");
    if (inner.encloses(z)) throw DomainError("point must lie outside the inner contour");
}

Complex polynomial_part(const PointSet& s, const CoefficientTensor& a, int N, Complex z) {
    const Complex product = s.product(z);
    Complex acc(0.0);
    for (int n = N - 1; n >= 0; --n) acc = acc * product + detail::block_polynomial(s, 0, s.size(), a, n, z);
    return acc;
}

// sum_{n<N} t_n(z) y^{n+1} with y = 1/P(z), generic in the scalar type
template <class T>
T laurent_principal(const PointSet& s, const CoefficientTensor& b, int N, const T& z, const T& y) {
    T acc = detail::block_polynomial(s, 0, s.size(), b, N - 1, z);
    for (int n = N - 2; n >= 0; --n) acc = acc * y + detail::block_polynomial(s, 0, s.size(), b, n, z);
    return acc * y;
}

// sum_{n<N} t1_n Q^n + t2_n Q^{n+1}
template <class T>
T split_principal(const PointSet& s, std::size_t split, const CoefficientTensor& b, const CoefficientTensor& c, int N,
                  const T& z, const T& q) {
    auto block = [&](int n) {
        const T t1 = detail::block_polynomial(s, 0, split, b, n, z) * Complex(-1.0);
        const T t2 = detail::block_polynomial(s, split, s.size(), c, n, z);
        return t1 + t2 * q;
    };
    T acc = block(N - 1);
    for (int n = N - 2; n >= 0; --n) acc = acc * q + block(n);
    return acc;
}

template <class T>
T product_of(const PointSet& s, const T& z, std::size_t first, std::size_t last) {
    T acc = z * Complex(0.0) + Complex(1.0);
    for (std::size_t k = first; k < last; ++k) {
        const T factor = z - s[k].z;
        for (int e = 0; e < s[k].multiplicity; ++e) acc = acc * factor;
    }
    return acc;
}

Complex split_ratio(const PointSet& s, std::size_t split, Complex z) {
    return s.product(z, 0, split) / s.product(z, split, s.size());
}

}  // namespace

PoleProfile declared_pole_profile(const ComplexFunction& f, const PointSet& points) {
    return {detail::declared_focal_orders(f, points)};
}

std::vector<bool> excluded_foci(const PointSet& points, std::size_t split) {
    std::vector<bool> out(points.size(), false);
    for (std::size_t k = split; k < points.size(); ++k) out[k] = true;
    return out;
}

void validate_split(const ComplexFunction& f, const PointSet& points, std::size_t split) {
    if (split < 1 || split >= points.size()) {
        throw DomainError("split must leave at least one regular and one singular focus");
    }
    for (const auto& z : singular_points(f.singularities())) {
        const std::size_t k = points.find(z);
        if (k < split) throw DomainError("focus " + std::to_string(k) + " is declared regular but f is singular there");
    }
}

LaurentExpansion expand_laurent_cauchy(const ComplexFunction& f, const PointSet& points, int N, const Contour& outer,
                                       const Contour& inner, const QuadratureOptions& options) {
    if (N < 1) throw DomainError("N must be at least 1");
    for (const auto& focus : points.foci()) {
        if (!inner.encloses(focus.z)) throw GeometryError("the inner contour must enclose every focus");
    }
    LaurentExpansion out{points, N, CoefficientTensor(N, points), CoefficientTensor(N, points),
                         CoefficientMethod::Cauchy, 0.0, 0.0};
    double ea = 0.0, eb = 0.0;
    detail::fill_cauchy(f, out.points, Pattern::TaylorA, 0, out.a, outer, options, &ea);
    detail::fill_cauchy(f, out.points, Pattern::LaurentB, 0, out.b, inner, options, &eb);
    out.est_error = std::max(ea, eb);
    return out;
}

LaurentExpansion expand_laurent_poles(const ComplexFunction& f, const PointSet& points, int N,
                                      const PoleProfile& profile) {
    if (N < 1) throw DomainError("N must be at least 1");
    const auto rho = checked_orders(points, profile);
    LaurentExpansion out{points, N, CoefficientTensor(N, points), CoefficientTensor(N, points),
                         CoefficientMethod::Derivative, 0.0, 0.0};
    const std::vector<bool> all(points.size(), true);
    const detail::FocalJets jets(f, out.points, rho, all, N);
    detail::fill_residues(jets, out.points, Pattern::TaylorA, 0, all, out.a);
    detail::fill_residues(jets, out.points, Pattern::LaurentB, 0, all, out.b);
    return out;
}

LaurentExpansion expand_laurent(const ComplexFunction& f, const PointSet& points, int N, CoefficientMethod method,
                                double delta, const QuadratureOptions& options) {
    const auto contours = annulus_contours(points, f.singularities(), excluded_foci(points, 0), delta);
    LaurentExpansion out = method == CoefficientMethod::Cauchy
                               ? expand_laurent_cauchy(f, points, N, contours.outer, contours.inner, options)
                               : expand_laurent_poles(f, points, N, declared_pole_profile(f, points));
    out.delta = contours.delta;
    return out;
}

TaylorLaurentExpansion expand_taylor_laurent_cauchy(const ComplexFunction& f, const PointSet& points,
                                                    std::size_t split, int N, const Contour& outer,
                                                    const Contour& inner, const QuadratureOptions& options) {
    if (N < 1) throw DomainError("N must be at least 1");
    validate_split(f, points, split);
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (inner.encloses(points[k].z) != (k >= split)) {
            throw GeometryError("the inner contour must enclose exactly the singular foci");
        }
    }
    TaylorLaurentExpansion out{points,
                               split,
                               N,
                               CoefficientTensor(N, points),
                               CoefficientTensor(N, points, 0, split),
                               CoefficientTensor(N, points, split, points.size()),
                               CoefficientMethod::Cauchy,
                               0.0,
                               0.0};
    double ea = 0.0, eb = 0.0, ec = 0.0;
    detail::fill_cauchy(f, out.points, Pattern::TaylorA, split, out.a, outer, options, &ea);
    detail::fill_cauchy(f, out.points, Pattern::SplitB, split, out.b, inner, options, &eb);
    detail::fill_cauchy(f, out.points, Pattern::SplitC, split, out.c, inner, options, &ec);
    out.est_error = std::max({ea, eb, ec});
    return out;
}

TaylorLaurentExpansion expand_taylor_laurent_poles(const ComplexFunction& f, const PointSet& points,
                                                   std::size_t split, int N, const PoleProfile& profile) {
    if (N < 1) throw DomainError("N must be at least 1");
    validate_split(f, points, split);
    auto rho = checked_orders(points, profile);
    for (std::size_t k = 0; k < split; ++k) {
        if (rho[k] != 0) throw DomainError("regular foci cannot carry a pole order");
    }
    TaylorLaurentExpansion out{points,
                               split,
                               N,
                               CoefficientTensor(N, points),
                               CoefficientTensor(N, points, 0, split),
                               CoefficientTensor(N, points, split, points.size()),
                               CoefficientMethod::Derivative,
                               0.0,
                               0.0};
    const std::vector<bool> all(points.size(), true);
    const auto singular = excluded_foci(points, split);
    const detail::FocalJets jets(f, out.points, rho, all, N + 1);
    detail::fill_residues(jets, out.points, Pattern::TaylorA, split, all, out.a);
    detail::fill_residues(jets, out.points, Pattern::SplitB, split, singular, out.b);
    detail::fill_residues(jets, out.points, Pattern::SplitC, split, singular, out.c);
    return out;
}

TaylorLaurentExpansion expand_taylor_laurent(const ComplexFunction& f, const PointSet& points, std::size_t split,
                                             int N, CoefficientMethod method, double delta,
                                             const QuadratureOptions& options) {
    validate_split(f, points, split);
    const auto contours = annulus_contours(points, f.singularities(), excluded_foci(points, split), delta);
    TaylorLaurentExpansion out =
        method == CoefficientMethod::Cauchy
            ? expand_taylor_laurent_cauchy(f, points, split, N, contours.outer, contours.inner, options)
            : expand_taylor_laurent_poles(f, points, split, N, declared_pole_profile(f, points));
    out.delta = contours.delta;
    return out;
}

Complex eval_principal(const LaurentExpansion& e, Complex z) {
    return laurent_principal<Complex>(e.points, e.b, e.N, z, 1.0 / e.points.product(z));
}

Complex eval_principal(const TaylorLaurentExpansion& e, Complex z) {
    return split_principal<Complex>(e.points, e.split, e.b, e.c, e.N, z, split_ratio(e.points, e.split, z));
}

Complex eval_expansion(const LaurentExpansion& e, Complex z) {
    return polynomial_part(e.points, e.a, e.N, z) + eval_principal(e, z);
}

Complex eval_expansion(const TaylorLaurentExpansion& e, Complex z) {
    return polynomial_part(e.points, e.a, e.N, z) + eval_principal(e, z);
}

Complex laurent_remainder_exact(const ComplexFunction& f, const PointSet& points, int N, Complex z,
                                const Contour& outer, const Contour& inner, const QuadratureOptions& options) {
    require_between(outer, inner, z);
    const Complex pz = points.product(z);
    auto far = [&](Complex w) { return f.value(w) / (w - z) * detail::integer_power(pz / points.product(w), N); };
    auto near = [&](Complex w) { return f.value(w) / (w - z) * detail::integer_power(points.product(w) / pz, N); };
    const auto r1 = cauchy_integral(far, outer, options);
    const auto r2 = cauchy_integral(near, inner, options);
    if (!r1.converged || !r2.converged) {
        throw ConvergenceError("remainder quadrature did not converge", r1.est_error + r2.est_error);
    }
    return r1.value - r2.value;
}

Complex laurent_remainder_exact(const ComplexFunction& f, const PointSet& points, std::size_t split, int N, Complex z,
                                const Contour& outer, const Contour& inner, const QuadratureOptions& options) {
    require_between(outer, inner, z);
    if (split < 1 || split >= points.size()) throw DomainError("split out of range");
    const Complex pz = points.product(z), qz = split_ratio(points, split, z);
    auto far = [&](Complex w) { return f.value(w) / (w - z) * detail::integer_power(pz / points.product(w), N); };
    auto near = [&](Complex w) {
        return f.value(w) / (w - z) * detail::integer_power(qz / split_ratio(points, split, w), N);
    };
    const auto r1 = cauchy_integral(far, outer, options);
    const auto r2 = cauchy_integral(near, inner, options);
    if (!r1.converged || !r2.converged) {
        throw ConvergenceError("remainder quadrature did not converge", r1.est_error + r2.est_error);
    }
    return r1.value - r2.value;
}

// ---------------------------------------------------------------------------

namespace {

int removed_blocks(const PointSet& points, const std::vector<int>& rho, std::size_t first) {
    // floor(max (rho_k - 1)/m_k); -1 when no focus is singular
    int best = -1;
    for (std::size_t k = first; k < points.size(); ++k) {
        if (rho[k] <= 0) continue;
        best = std::max(best, (rho[k] - 1) / points[k].multiplicity);
    }
    return best;
}

std::vector<Singularity> without_focal_poles(std::span<const Singularity> all, const PointSet& points,
                                             const std::vector<int>& rho) {
    std::vector<Singularity> out;
    for (const auto& s : all) {
        const std::size_t k = points.find(s.location);
        if (k < points.size() && s.kind == SingularityKind::Pole && rho[k] >= s.order) continue;
        out.push_back(s);
    }
    return out;
}

}  // namespace

PrincipalPartRemoved::PrincipalPartRemoved(const ComplexFunction& f, const PointSet& points,
                                           const PoleProfile& profile)
    : f_(f), points_(points) {
    const auto rho = checked_orders(points, profile);
    removed_ = removed_blocks(points, rho, 0);
    remaining_ = without_focal_poles(f.singularities(), points, rho);
    if (removed_ >= 0) b_ = expand_laurent_poles(f, points, removed_ + 1, profile).b;
}

PrincipalPartRemoved::PrincipalPartRemoved(const ComplexFunction& f, const PointSet& points, std::size_t split,
                                           const PoleProfile& profile)
    : f_(f), points_(points), split_(split), taylor_laurent_(true) {
    const auto rho = checked_orders(points, profile);
    removed_ = removed_blocks(points, rho, split);
    remaining_ = without_focal_poles(f.singularities(), points, rho);
    if (removed_ >= 0) {
        auto e = expand_taylor_laurent_poles(f, points, split, removed_ + 1, profile);
        b_ = std::move(e.b);
        c_ = std::move(e.c);
    }
}

template <class T>
T PrincipalPartRemoved::subtracted(const T& z) const {
    if (taylor_laurent_) {
        const T q = product_of(points_, z, 0, split_) / product_of(points_, z, split_, points_.size());
        return split_principal<T>(points_, split_, b_, c_, removed_ + 1, z, q);
    }
    const T one_over = (z * Complex(0.0) + Complex(1.0)) / product_of(points_, z, 0, points_.size());
    return laurent_principal<T>(points_, b_, removed_ + 1, z, one_over);
}

Complex PrincipalPartRemoved::value(Complex z) const {
    const Complex fz = f_.value(z);
    if (removed_ < 0) return fz;
    return fz - subtracted<Complex>(z);
}

Series PrincipalPartRemoved::series(Complex center, int order) const {
    if (removed_ < 0) return f_.series(center, order);
    int working = order;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const Series fs = f_.series(center, working);
        const Series sub = subtracted<Series>(Series::variable(center, working));
        const Series g = fs - sub;
        if (g.valuation() < 0) {
            // negative powers must cancel to rounding against the largest input term
            double scale = 0.0, residue = 0.0;
            for (int i = std::min(fs.valuation(), sub.valuation()); i < 0; ++i) {
                scale = std::max({scale, std::abs(fs[i]), std::abs(sub[i])});
                residue = std::max(residue, std::abs(g[i]));
            }
            if (residue > 1e-8 * std::max(1.0, scale)) {
                throw DomainError("insufficient declared pole orders: principal part does not cancel");
            }
        }
        if (g.precision() > order) {
            std::vector<Complex> coeffs;
            for (int i = 0; i < g.precision(); ++i) coeffs.push_back(g[i]);
            return Series(0, std::move(coeffs));
        }
        working += order + 1 - g.precision();
    }
    throw DomainError("series precision could not be recovered at the requested order");
}

}  // namespace lemniscate
