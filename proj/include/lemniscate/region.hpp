#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lemniscate/function.hpp"
#include "lemniscate/point_set.hpp"

namespace lemniscate {

enum class RegionKind { Lemniscate, Annulus, TaylorLaurent };

std::string_view region_kind_name(RegionKind kind);

/// Lemniscate:      |P(z)| < r
/// Annulus:         r2 < |P(z)| < r1, z outside the excluded disks
/// TaylorLaurent:   |P(z)| < r1 and |A(z)| < r2 |B(z)|, z outside the excluded disks,
///                  A, B the products over foci [0, split) and [split, p)
struct RegionSpec {
    RegionKind kind = RegionKind::Lemniscate;
    PointSet points;
    std::size_t split = 0;
    double r = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double delta = 0.0;
    /// Foci carrying an excluded disk of radius delta.
    std::vector<bool> excluded;
    /// Singular points of f, never members.
    std::vector<Complex> singular;
    std::vector<std::string> warnings;
};

/// min over the declared singular set of prod |w - z_k|^{m_k}; +inf when
/// there is none. Branch cuts are sampled, so r is then an upper estimate.
/// A singular point on a focus gives 0.
double lemniscate_radius(const PointSet& points, std::span<const Singularity> singularities);

struct RadiusPair {
    double r1 = 0.0;
    double r2 = 0.0;
    double delta = 0.0;
    bool empty = false;
};

/// r1 over singular points off the foci; r2 = max of |P| on the circles of
/// radius delta about the singular foci (0 when no focus is singular).
/// delta <= 0 picks the default excluded-disk radius.
RadiusPair annulus_radii(const PointSet& points, std::span<const Singularity> singularities, double delta = 0.0);
/// r2 = min of |A|/|B| on the circles about the singular foci in [split, p).
RadiusPair dqp_parameters(const PointSet& points, std::size_t split, std::span<const Singularity> singularities,
                          double delta = 0.0);

RegionSpec lemniscate_region(const PointSet& points, std::span<const Singularity> singularities);
RegionSpec annulus_region(const PointSet& points, std::span<const Singularity> singularities, double delta = 0.0);
RegionSpec taylor_laurent_region(const PointSet& points, std::size_t split,
                                 std::span<const Singularity> singularities, double delta = 0.0);

bool contains(const RegionSpec& region, Complex z);

using Polyline = std::vector<Complex>;

struct ClipBox {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
};

/// Level curves of the defining inequalities by marching squares on a
/// resolution x resolution grid over the focus hull inflated by 2 r^{1/m},
/// vertices refined by bisection along their grid edges. One polyline per
/// connected curve, sorted by leftmost vertex. Closed curves repeat their
/// first vertex at the end. With `clip` the grid covers that box instead, and
/// a region without any finite boundary yields no polylines; without it such
/// a region is a GeometryError.
std::vector<Polyline> boundary_sample(const RegionSpec& region, int resolution = 512,
                                      const std::optional<ClipBox>& clip = std::nullopt);

/// component_id,x,y rows with a header line.
void write_boundary_csv(std::ostream& out, const std::vector<Polyline>& polylines);

}  // namespace lemniscate
