#include "lemniscate/region.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include "lemniscate/contour.hpp"
#include "lemniscate/parallel.hpp"

namespace lemniscate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kCircleSamples = 4096;
constexpr int kRaySamples = 1024;

double abs_product(const PointSet& s, Complex z, std::size_t first, std::size_t last) {
    double acc = 1.0;
    for (std::size_t k = first; k < last; ++k) acc *= std::pow(std::abs(z - s[k].z), s[k].multiplicity);
    return acc;
}

double abs_product(const PointSet& s, Complex z) { return abs_product(s, z, 0, s.size()); }

// Declared singular set: points, sampled cuts, and for a branch point with no
// cut the ray pointing away from the focus centroid.
std::vector<Complex> singular_set(const PointSet& points, std::span<const Singularity> singularities) {
    std::vector<Complex> out = singular_points(singularities);
    const Complex c = points.centroid();
    for (const auto& s : singularities) {
        if (s.kind != SingularityKind::BranchPoint || !s.cut.empty()) continue;
        Complex dir = s.location - c;
        dir = std::abs(dir) > 0.0 ? dir / std::abs(dir) : Complex(1.0);
        const double reach = 4.0 * (std::abs(s.location - c) + points.scale());
        for (int i = 1; i <= kRaySamples; ++i) {
            const double t = static_cast<double>(i) / kRaySamples;
            out.push_back(s.location + dir * (reach * t * t));
        }
    }
    return out;
}

std::vector<Complex> off_focus(const PointSet& points, std::vector<Complex> set) {
    std::erase_if(set, [&](Complex z) { return points.find(z) < points.size(); });
    return set;
}

std::vector<bool> singular_foci(const PointSet& points, std::span<const Singularity> singularities,
                                std::size_t first) {
    std::vector<bool> out(points.size(), false);
    for (const auto& z : singular_points(singularities)) {
        const std::size_t k = points.find(z);
        if (k < points.size() && k >= first) out[k] = true;
    }
    return out;
}

// Extremum of g on a circle: dense sampling, then golden section around the best sample.
double circle_extremum(Complex center, double radius, const std::function<double(Complex)>& g, bool maximize) {
    const double step = 2.0 * std::numbers::pi / kCircleSamples;
    auto at = [&](double theta) {
        const double v = g(center + std::polar(radius, theta));
        return maximize ? -v : v;
    };
    int best = 0;
    double best_value = kInf;
    for (int i = 0; i < kCircleSamples; ++i) {
        const double v = at(i * step);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = (best - 1) * step, b = (best + 1) * step;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = at(x1), f2 = at(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = at(x2);
        }
    }
    best_value = std::min({best_value, f1, f2});
    return maximize ? -best_value : best_value;
}

double pick_delta(const PointSet& points, std::span<const Singularity> singularities, const std::vector<bool>& mask,
                  double delta) {
    if (delta > 0.0) return delta;
    if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) return 0.0;
    return default_delta(points, singularities, mask);
}

bool in_excluded_disk(const RegionSpec& region, Complex z) {
    for (std::size_t k = 0; k < region.points.size(); ++k) {
        if (k < region.excluded.size() && region.excluded[k] && std::abs(z - region.points[k].z) <= region.delta) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::string_view region_kind_name(RegionKind kind) {
    switch (kind) {
        case RegionKind::Lemniscate: return "lemniscate";
        case RegionKind::Annulus: return "annulus";
        case RegionKind::TaylorLaurent: return "taylor-laurent";
    }
    return "?";
}

double lemniscate_radius(const PointSet& points, std::span<const Singularity> singularities) {
    double r = kInf;
    for (const auto& w : singular_set(points, singularities)) r = std::min(r, abs_product(points, w));
    return r;
}

RadiusPair annulus_radii(const PointSet& points, std::span<const Singularity> singularities, double delta) {
    RadiusPair out;
    const auto mask = singular_foci(points, singularities, 0);
    out.delta = pick_delta(points, singularities, mask, delta);
    out.r1 = kInf;
    for (const auto& w : off_focus(points, singular_set(points, singularities))) {
        out.r1 = std::min(out.r1, abs_product(points, w));
    }
    out.r2 = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!mask[k]) continue;
        out.r2 = std::max(out.r2, circle_extremum(points[k].z, out.delta,
                                                  [&](Complex w) { return abs_product(points, w); }, true));
    }
    out.empty = !(out.r2 < out.r1);
    return out;
}

RadiusPair dqp_parameters(const PointSet& points, std::size_t split, std::span<const Singularity> singularities,
                          double delta) {
    if (split < 1 || split >= points.size()) throw DomainError("split must satisfy 1 <= q < p");
    RadiusPair out;
    const auto mask = singular_foci(points, singularities, split);
    out.delta = pick_delta(points, singularities, mask, delta);
    out.r1 = kInf;
    for (const auto& w : off_focus(points, singular_set(points, singularities))) {
        out.r1 = std::min(out.r1, abs_product(points, w));
    }
    out.r2 = kInf;
    auto ratio = [&](Complex w) {
        return abs_product(points, w, 0, split) / abs_product(points, w, split, points.size());
    };
    for (std::size_t k = split; k < points.size(); ++k) {
        if (mask[k]) out.r2 = std::min(out.r2, circle_extremum(points[k].z, out.delta, ratio, false));
    }
    out.empty = !(out.r1 > 0.0 && out.r2 > 0.0);
    return out;
}

RegionSpec lemniscate_region(const PointSet& points, std::span<const Singularity> singularities) {
    RegionSpec out;
    out.kind = RegionKind::Lemniscate;
    out.points = points;
    out.r = lemniscate_radius(points, singularities);
    out.singular = singular_points(singularities);
    out.excluded.assign(points.size(), false);
    if (out.r == 0.0) out.warnings.push_back("a singularity lies on a focus: r = 0, the region is empty");
    return out;
}

RegionSpec annulus_region(const PointSet& points, std::span<const Singularity> singularities, double delta) {
    const auto radii = annulus_radii(points, singularities, delta);
    RegionSpec out;
    out.kind = RegionKind::Annulus;
    out.points = points;
    out.r1 = radii.r1;
    out.r2 = radii.r2;
    out.delta = radii.delta;
    out.excluded = singular_foci(points, singularities, 0);
    out.singular = singular_points(singularities);
    if (radii.empty) out.warnings.push_back("r2 >= r1: the annulus is empty");
    return out;
}

RegionSpec taylor_laurent_region(const PointSet& points, std::size_t split,
                                 std::span<const Singularity> singularities, double delta) {
    const auto radii = dqp_parameters(points, split, singularities, delta);
    RegionSpec out;
    out.kind = RegionKind::TaylorLaurent;
    out.points = points;
    out.split = split;
    out.r1 = radii.r1;
    out.r2 = radii.r2;
    out.delta = radii.delta;
    out.excluded = singular_foci(points, singularities, split);
    out.singular = singular_points(singularities);
    if (radii.empty) out.warnings.push_back("the Taylor-Laurent region is empty");
    return out;
}

bool contains(const RegionSpec& region, Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    const PointSet& s = region.points;
    const double product = abs_product(s, z);
    switch (region.kind) {
        case RegionKind::Lemniscate: return product < region.r;
        case RegionKind::Annulus:
            if (in_excluded_disk(region, z)) return false;
            return region.r2 < product && product < region.r1;
        case RegionKind::TaylorLaurent:
            if (in_excluded_disk(region, z)) return false;
            for (const auto& w : region.singular) {
                if (w == z) return false;
            }
            return product < region.r1 &&
                   abs_product(s, z, 0, region.split) < region.r2 * abs_product(s, z, region.split, s.size());
    }
    return false;
}

// ---------------------------------------------------------------------------

namespace {

struct Level {
    std::function<double(Complex)> f;  // negative inside
};

std::vector<Level> levels(const RegionSpec& region) {
    const PointSet& s = region.points;
    auto log_product = [&s](Complex z) { return std::log(abs_product(s, z)); };
    std::vector<Level> out;
    auto add_product_level = [&](double r) {
        if (std::isfinite(r) && r > 0.0) {
            const double lr = std::log(r);
            out.push_back({[=](Complex z) { return log_product(z) - lr; }});
        }
    };
    switch (region.kind) {
        case RegionKind::Lemniscate: add_product_level(region.r); break;
        case RegionKind::Annulus:
            add_product_level(region.r1);
            add_product_level(region.r2);
            break;
        case RegionKind::TaylorLaurent: {
            add_product_level(region.r1);
            if (std::isfinite(region.r2) && region.r2 > 0.0) {
                const double lr = std::log(region.r2);
                const std::size_t q = region.split;
                out.push_back({[&s, q, lr](Complex z) {
                    return std::log(abs_product(s, z, 0, q)) - std::log(abs_product(s, z, q, s.size())) - lr;
                }});
            }
            break;
        }
    }
    return out;
}

ClipBox bounding_box(const RegionSpec& region) {
    const PointSet& s = region.points;
    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    for (const auto& f : s.foci()) {
        xmin = std::min(xmin, f.z.real());
        xmax = std::max(xmax, f.z.real());
        ymin = std::min(ymin, f.z.imag());
        ymax = std::max(ymax, f.z.imag());
    }
    double level = 0.0;
    for (double r : {region.r, region.r1, region.r2}) {
        if (std::isfinite(r)) level = std::max(level, r);
    }
    const double pad = std::max(2.0 * std::pow(level, 1.0 / s.total_multiplicity()), 0.25 * s.scale());
    const double half = 0.5 * std::max(xmax - xmin, ymax - ymin) + pad;
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    return {cx - half, cy - half, cx + half, cy + half};
}

Complex bisect(const std::function<double(Complex)>& f, Complex a, Complex b) {
    bool a_inside = f(a) < 0.0;
    for (int it = 0; it < 48; ++it) {
        const Complex mid = 0.5 * (a + b);
        if ((f(mid) < 0.0) == a_inside) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

std::vector<Polyline> trace_level(const Level& level, const ClipBox& box, int res) {
    const std::size_t n = static_cast<std::size_t>(res) + 1;
    const double hx = (box.xmax - box.xmin) / res, hy = (box.ymax - box.ymin) / res;
    auto point = [&](std::size_t i, std::size_t j) {
        return Complex(box.xmin + hx * static_cast<double>(i), box.ymin + hy * static_cast<double>(j));
    };
    std::vector<char> inside(n * n);
    parallel_for(n, [&](std::size_t j) {
        for (std::size_t i = 0; i < n; ++i) inside[j * n + i] = level.f(point(i, j)) < 0.0 ? 1 : 0;
    });
    auto in = [&](std::size_t i, std::size_t j) { return inside[j * n + i] != 0; };
    auto h_edge = [&](std::size_t i, std::size_t j) { return 2 * (j * n + i); };
    auto v_edge = [&](std::size_t i, std::size_t j) { return 2 * (j * n + i) + 1; };

    std::unordered_map<std::size_t, std::vector<std::size_t>> adjacency;
    auto link = [&](std::size_t a, std::size_t b) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    };
    for (std::size_t j = 0; j + 1 < n; ++j) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const bool bl = in(i, j), br = in(i + 1, j), tr = in(i + 1, j + 1), tl = in(i, j + 1);
            const std::size_t bottom = h_edge(i, j), right = v_edge(i + 1, j), top = h_edge(i, j + 1),
                              left = v_edge(i, j);
            std::vector<std::size_t> cut;
            if (bl != br) cut.push_back(bottom);
            if (br != tr) cut.push_back(right);
            if (tr != tl) cut.push_back(top);
            if (tl != bl) cut.push_back(left);
            if (cut.size() == 2) {
                link(cut[0], cut[1]);
            } else if (cut.size() == 4) {
                const bool center = level.f(point(i, j) + Complex(0.5 * hx, 0.5 * hy)) < 0.0;
                if (center == bl) {
                    link(bottom, right);
                    link(top, left);
                } else {
                    link(left, bottom);
                    link(right, top);
                }
            }
        }
    }

    auto vertex = [&](std::size_t edge) {
        const std::size_t cell = edge / 2, i = cell % n, j = cell / n;
        const Complex a = point(i, j);
        const Complex b = (edge % 2 == 0) ? point(i + 1, j) : point(i, j + 1);
        return bisect(level.f, a, b);
    };

    std::vector<std::size_t> order;
    for (const auto& [edge, nbrs] : adjacency) order.push_back(edge);
    std::sort(order.begin(), order.end());
    // open chains start at degree-1 nodes on the box boundary, loops anywhere
    std::stable_partition(order.begin(), order.end(), [&](std::size_t e) { return adjacency[e].size() == 1; });
    std::unordered_map<std::size_t, bool> seen;
    std::vector<Polyline> out;
    for (std::size_t start : order) {
        if (seen[start]) continue;
        std::vector<std::size_t> chain{start};
        seen[start] = true;
        std::size_t cur = start;
        for (;;) {
            const auto& nbrs = adjacency[cur];
            const auto next = std::find_if(nbrs.begin(), nbrs.end(), [&](std::size_t nb) { return !seen[nb]; });
            if (next == nbrs.end()) break;
            seen[*next] = true;
            chain.push_back(*next);
            cur = *next;
        }
        const auto& last = adjacency[cur];
        const bool closed = chain.size() > 2 && std::find(last.begin(), last.end(), start) != last.end();
        Polyline line(chain.size());
        parallel_for(chain.size(), [&](std::size_t k) { line[k] = vertex(chain[k]); });
        if (closed) line.push_back(line.front());
        out.push_back(std::move(line));
    }
    return out;
}

}  // namespace

std::vector<Polyline> boundary_sample(const RegionSpec& region, int resolution, const std::optional<ClipBox>& clip) {
    if (resolution < 8) throw DomainError("boundary resolution must be at least 8");
    if (clip && !(clip->xmax > clip->xmin && clip->ymax > clip->ymin)) throw DomainError("empty clip box");
    const auto curves = levels(region);
    if (curves.empty()) {
        if (clip) return {};
        throw GeometryError("no finite boundary to sample; give a clip box");
    }
    const ClipBox box = clip ? *clip : bounding_box(region);
    std::vector<Polyline> out;
    for (const auto& level : curves) {
        auto lines = trace_level(level, box, resolution);
        for (auto& l : lines) out.push_back(std::move(l));
    }
    auto leftmost = [](const Polyline& l) {
        return *std::min_element(l.begin(), l.end(), [](Complex a, Complex b) {
            return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
        });
    };
    std::stable_sort(out.begin(), out.end(), [&](const Polyline& a, const Polyline& b) {
        const Complex la = leftmost(a), lb = leftmost(b);
        return la.real() < lb.real() || (la.real() == lb.real() && la.imag() < lb.imag());
    });
    return out;
}

void write_boundary_csv(std::ostream& out, const std::vector<Polyline>& polylines) {
    out << "component_id,x,y\n";
    out << std::setprecision(15);
    for (std::size_t c = 0; c < polylines.size(); ++c) {
        for (const auto& z : polylines[c]) out << c << ',' << z.real() << ',' << z.imag() << '\n';
    }
}

}  // namespace lemniscate
