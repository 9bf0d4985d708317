#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lemniscate/errors.hpp"
#include "lemniscate/function.hpp"
#include "lemniscate/point_set.hpp"

namespace lemniscate {

struct Circle {
    Complex center;
    double radius = 1.0;
};

enum class ContourKind { SingleLoop, PerFocusUnion };

/// Counterclockwise circle, or a union of disjoint counterclockwise circles.
class Contour {
public:
    Contour() = default;
    static Contour circle(Complex center, double radius);
    /// Throws GeometryError unless the closed disks are pairwise disjoint.
    static Contour union_of(std::vector<Circle> pieces);

    ContourKind kind() const { return kind_; }
    const std::vector<Circle>& pieces() const { return pieces_; }

    /// Strictly inside one of the pieces.
    bool encloses(Complex z) const;
    /// Distance from z to the nearest point of the trace.
    double distance_to(Complex z) const;

private:
    ContourKind kind_ = ContourKind::SingleLoop;
    std::vector<Circle> pieces_;
};

struct QuadratureOptions {
    double tol = 1e-12;
    /// Node budget per circular piece.
    int max_nodes = 1 << 16;
    /// Debug switch: traverse clockwise, which negates every result.
    bool reverse_orientation = false;
};

struct QuadratureResult {
    Complex value;
    int nodes_used = 0;
    /// |change| in the last doubling step, summed over pieces.
    double est_error = 0.0;
    bool converged = false;
    /// |change| after each doubling of the first piece.
    std::vector<double> error_history;
};

/// (2 pi i)^-1 times the contour integral of `integrand`, by the trapezoidal
/// rule on each circle with node doubling from 16.
QuadratureResult cauchy_integral(const std::function<Complex(Complex)>& integrand, const Contour& contour,
                                 const QuadratureOptions& options = {});

struct BatchQuadratureResult {
    std::vector<Complex> values;
    int nodes_used = 0;
    double est_error = 0.0;
    bool converged = false;
};

/// Vector-valued variant: integrand(w, out) fills `count` values at node w.
/// Doubling stops when every component meets the tolerance.
BatchQuadratureResult cauchy_integral_batch(std::size_t count,
                                            const std::function<void(Complex, std::span<Complex>)>& integrand,
                                            const Contour& contour, const QuadratureOptions& options = {});

enum class ContourMode { EncloseAll, PerFocus, AnnulusPair };

/// One circle about the focus centroid containing every focus (and every
/// point of `inside` and disk of `inside_disks`) while excluding all
/// singular points not located at a focus. The radius is the geometric mean
/// of the inner extent and the distance to the nearest exterior singular
/// point (inner extent floored at a quarter of that distance); an entire f
/// gets inner extent + max(1, inner extent).
Contour enclosing_contour(const PointSet& points, std::span<const Singularity> singularities,
                          std::span<const Complex> inside = {}, std::span<const Circle> inside_disks = {});

/// Disjoint circles of radius 0.4 x the minimum focus separation, shrunk if
/// an exterior singular point is closer.
Contour per_focus_contour(const PointSet& points, std::span<const Singularity> singularities);

/// Contours for the Laurent-type expansions. The excluded set is the union
/// of closed disks of radius `delta` about the foci flagged in `omega0`.
struct AnnulusContours {
    Contour outer;  ///< encloses everything, inside the analytic region
    Contour inner;  ///< one circle per flagged focus, just outside the disks
    double delta = 0.0;
    double inner_radius = 0.0;
};

/// 0.1 x the smallest distance from a flagged focus to any other focus or
/// exterior singular point (0.1 x scale when there is none).
double default_delta(const PointSet& points, std::span<const Singularity> singularities,
                     const std::vector<bool>& omega0);

/// delta <= 0 selects default_delta. Points in `probes` are kept between the
/// two contours. Throws GeometryError when no admissible pair exists.
AnnulusContours annulus_contours(const PointSet& points, std::span<const Singularity> singularities,
                                 const std::vector<bool>& omega0, double delta,
                                 std::span<const Complex> probes = {});

/// Singular points (cuts sampled) that do not sit on a focus.
std::vector<Complex> exterior_singular_points(const PointSet& points, std::span<const Singularity> singularities);

}  // namespace lemniscate
