#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lemniscate/expression.hpp"
#include "lemniscate/rational.hpp"
#include "lemniscate/series.hpp"

namespace lemniscate {

enum class SingularityKind { Pole, Essential, BranchPoint };

std::string_view singularity_kind_name(SingularityKind kind);

struct Singularity {
    Complex location;
    SingularityKind kind = SingularityKind::Pole;
    int order = 0;  ///< pole order; 0 for other kinds
    /// Optional branch cut polyline starting at `location`. When empty, the
    /// cut is the ray from the branch point away from the contour centroid.
    std::vector<Complex> cut;
};

/// Anything the expansion machinery can consume: point values, Laurent
/// series about a point, and the known non-analytic points.
class ComplexFunction {
public:
    virtual ~ComplexFunction() = default;

    /// Throws DomainError at a declared singularity.
    virtual Complex value(Complex z) const = 0;
    /// Laurent series about `center`, known at least through t^order.
    virtual Series series(Complex center, int order) const = 0;
    virtual std::span<const Singularity> singularities() const = 0;
};

/// Scaled Taylor coefficients D^n f(center) = f^(n)(center) / n!.
struct Jet {
    Complex center;
    std::vector<Complex> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

class AnalyticFunction final : public ComplexFunction {
public:
    /// Singularities of rational subexpressions and branch points of log,
    /// sqrt and fractional powers are detected from the tree.
    explicit AnalyticFunction(Expression expression);
    AnalyticFunction(Expression expression, std::vector<Singularity> singularities);

    const Expression& expression() const { return expression_; }
    /// Exact rational form when the whole expression is rational in z.
    const std::optional<Rational>& rational() const { return rational_; }
    bool entire() const { return singularities_.empty(); }
    std::string to_string() const { return expression_.to_string(); }

    AnalyticFunction with_singularities(std::vector<Singularity> singularities) const;

    Complex value(Complex z) const override;
    Series series(Complex center, int order) const override;
    std::span<const Singularity> singularities() const override { return singularities_; }

private:
    Expression expression_;
    std::vector<Singularity> singularities_;
    std::optional<Rational> rational_;
};

/// Parses the expression grammar and detects singularities.
AnalyticFunction parse_function(std::string_view text);

Complex eval(const ComplexFunction& f, Complex z);

/// Scaled derivatives D^0..D^order at `center` by truncated power-series
/// arithmetic. Throws DomainError at (or within rounding of) a singularity.
Jet jet_eval(const ComplexFunction& f, Complex center, int order);

/// Order of the declared pole at `z`, or 0.
int declared_pole_order(const ComplexFunction& f, Complex z);

/// True if some declared singularity lies within `tolerance` of z.
bool near_singularity(const ComplexFunction& f, Complex z, double tolerance);

/// Declared singular locations, with branch cuts sampled into points.
std::vector<Complex> singular_points(std::span<const Singularity> singularities);

}  // namespace lemniscate
