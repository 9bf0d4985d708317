#include "lemniscate/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lemniscate/parallel.hpp"

namespace lemniscate {

namespace {

constexpr int kStartNodes = 16;
constexpr std::size_t kChunk = 64;

Complex node(const Circle& c, std::size_t k, std::size_t n, double sign) {
    const double theta = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return c.center + std::polar(c.radius, theta);
}

bool on_focus(const PointSet& points, Complex z) { return points.find(z) < points.size(); }

double radius_between(double inner, double outer) {
    return std::sqrt(std::max(inner, 0.25 * outer) * outer);
}

}  // namespace

Contour Contour::circle(Complex center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw GeometryError("contour radius must be positive");
    Contour c;
    c.kind_ = ContourKind::SingleLoop;
    c.pieces_ = {{center, radius}};
    return c;
}

Contour Contour::union_of(std::vector<Circle> pieces) {
    if (pieces.empty()) throw GeometryError("contour needs at least one circle");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!(pieces[i].radius > 0.0) || !std::isfinite(pieces[i].radius)) {
            throw GeometryError("contour radius must be positive");
        }
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            if (std::abs(pieces[i].center - pieces[j].center) <= pieces[i].radius + pieces[j].radius) {
                throw GeometryError("per-focus circles overlap");
            }
        }
    }
    Contour c;
    c.kind_ = pieces.size() == 1 ? ContourKind::SingleLoop : ContourKind::PerFocusUnion;
    c.pieces_ = std::move(pieces);
    return c;
}

bool Contour::encloses(Complex z) const {
    return std::any_of(pieces_.begin(), pieces_.end(),
                       [&](const Circle& c) { return std::abs(z - c.center) < c.radius; });
}

double Contour::distance_to(Complex z) const {
    double d = INFINITY;
    for (const auto& c : pieces_) d = std::min(d, std::abs(std::abs(z - c.center) - c.radius));
    return d;
}

QuadratureResult cauchy_integral(const std::function<Complex(Complex)>& integrand, const Contour& contour,
                                 const QuadratureOptions& options) {
    QuadratureResult out;
    out.value = 0.0;
    out.converged = true;
    const double sign = options.reverse_orientation ? -1.0 : 1.0;
    bool first_piece = true;
    for (const auto& piece : contour.pieces()) {
        std::size_t n = kStartNodes;
        Complex sum(0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const Complex w = node(piece, k, n, sign);
            sum += integrand(w) * (w - piece.center);
        }
        Complex value = sign * sum / static_cast<double>(n);
        double delta = INFINITY;
        bool converged = false;
        while (2 * n <= static_cast<std::size_t>(std::max(options.max_nodes, kStartNodes))) {
            Complex fresh(0.0);
            for (std::size_t k = 1; k < 2 * n; k += 2) {
                const Complex w = node(piece, k, 2 * n, sign);
                fresh += integrand(w) * (w - piece.center);
            }
            sum += fresh;
            n *= 2;
            const Complex next = sign * sum / static_cast<double>(n);
            delta = std::abs(next - value);
            value = next;
            if (first_piece) out.error_history.push_back(delta);
            if (delta < options.tol * std::max(1.0, std::abs(value))) {
                converged = true;
                break;
            }
        }
        out.value += value;
        out.nodes_used += static_cast<int>(n);
        out.est_error += std::isfinite(delta) ? delta : 0.0;
        out.converged = out.converged && converged;
        first_piece = false;
    }
    return out;
}

BatchQuadratureResult cauchy_integral_batch(std::size_t count,
                                            const std::function<void(Complex, std::span<Complex>)>& integrand,
                                            const Contour& contour, const QuadratureOptions& options) {
    BatchQuadratureResult out;
    out.values.assign(count, Complex(0.0));
    out.converged = true;
    const double sign = options.reverse_orientation ? -1.0 : 1.0;

    // Sum integrand(w_k) (w_k - c) over k = first, first + stride, ... < n.
    auto accumulate = [&](const Circle& piece, std::size_t first, std::size_t stride, std::size_t n,
                          std::vector<Complex>& sum) {
        const std::size_t nodes = (n - first + stride - 1) / stride;
        const std::size_t chunks = (nodes + kChunk - 1) / kChunk;
        std::vector<std::vector<Complex>> partial(chunks, std::vector<Complex>(count, Complex(0.0)));
        parallel_for(chunks, [&](std::size_t c) {
            std::vector<Complex> buffer(count);
            for (std::size_t i = c * kChunk; i < std::min(nodes, (c + 1) * kChunk); ++i) {
                const Complex w = node(piece, first + i * stride, n, sign);
                integrand(w, buffer);
                const Complex jac = w - piece.center;
                for (std::size_t e = 0; e < count; ++e) partial[c][e] += buffer[e] * jac;
            }
        });
        for (const auto& p : partial) {
            for (std::size_t e = 0; e < count; ++e) sum[e] += p[e];
        }
    };

    for (const auto& piece : contour.pieces()) {
        std::size_t n = kStartNodes;
        std::vector<Complex> sum(count, Complex(0.0));
        accumulate(piece, 0, 1, n, sum);
        std::vector<Complex> value(count);
        for (std::size_t e = 0; e < count; ++e) value[e] = sign * sum[e] / static_cast<double>(n);
        double delta = INFINITY;
        bool converged = count == 0;
        while (!converged && 2 * n <= static_cast<std::size_t>(std::max(options.max_nodes, kStartNodes))) {
            accumulate(piece, 1, 2, 2 * n, sum);
            n *= 2;
            delta = 0.0;
            converged = true;
            for (std::size_t e = 0; e < count; ++e) {
                const Complex next = sign * sum[e] / static_cast<double>(n);
                const double d = std::abs(next - value[e]);
                delta = std::max(delta, d);
                if (!(d < options.tol * std::max(1.0, std::abs(next)))) converged = false;
                value[e] = next;
            }
        }
        for (std::size_t e = 0; e < count; ++e) out.values[e] += value[e];
        out.nodes_used += static_cast<int>(n);
        out.est_error += std::isfinite(delta) ? delta : 0.0;
        out.converged = out.converged && converged;
    }
    return out;
}

std::vector<Complex> exterior_singular_points(const PointSet& points, std::span<const Singularity> singularities) {
    std::vector<Complex> out;
    for (const auto& z : singular_points(singularities)) {
        if (!on_focus(points, z)) out.push_back(z);
    }
    return out;
}

Contour enclosing_contour(const PointSet& points, std::span<const Singularity> singularities,
                          std::span<const Complex> inside, std::span<const Circle> inside_disks) {
    const Complex c = points.centroid();
    double inner = 0.0;
    for (const auto& f : points.foci()) inner = std::max(inner, std::abs(f.z - c));
    for (const auto& z : inside) inner = std::max(inner, std::abs(z - c));
    for (const auto& d : inside_disks) inner = std::max(inner, std::abs(d.center - c) + d.radius);
    double outer = INFINITY;
    for (const auto& s : exterior_singular_points(points, singularities)) outer = std::min(outer, std::abs(s - c));
    if (!std::isfinite(outer)) return Contour::circle(c, inner + std::max(1.0, inner));
    if (!(outer > inner * (1.0 + 1e-9))) {
        throw GeometryError("no circle about the focus centroid separates the foci from the singularities");
    }
    return Contour::circle(c, radius_between(inner, outer));
}

Contour per_focus_contour(const PointSet& points, std::span<const Singularity> singularities) {
    double radius = points.size() > 1 ? 0.4 * points.min_pairwise_distance() : 1.0;
    const auto exterior = exterior_singular_points(points, singularities);
    for (const auto& f : points.foci()) {
        for (const auto& s : exterior) radius = std::min(radius, 0.5 * std::abs(s - f.z));
    }
    if (!(radius > 0.0)) throw GeometryError("a singularity coincides with a focus");
    std::vector<Circle> pieces;
    for (const auto& f : points.foci()) pieces.push_back({f.z, radius});
    return Contour::union_of(std::move(pieces));
}

double default_delta(const PointSet& points, std::span<const Singularity> singularities,
                     const std::vector<bool>& omega0) {
    const auto exterior = exterior_singular_points(points, singularities);
    double d = INFINITY;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!omega0[k]) continue;
        for (std::size_t s = 0; s < points.size(); ++s) {
            if (s != k) d = std::min(d, std::abs(points[s].z - points[k].z));
        }
        for (const auto& z : exterior) d = std::min(d, std::abs(z - points[k].z));
    }
    return 0.1 * (std::isfinite(d) ? d : points.scale());
}

AnnulusContours annulus_contours(const PointSet& points, std::span<const Singularity> singularities,
                                 const std::vector<bool>& omega0, double delta, std::span<const Complex> probes) {
    if (omega0.size() != points.size()) throw DomainError("omega0 mask size mismatch");
    if (std::none_of(omega0.begin(), omega0.end(), [](bool b) { return b; })) {
        throw GeometryError("the excluded set contains no focus");
    }
    // singular foci outside the excluded set break the analytic-annulus premise
    for (const auto& s : singular_points(singularities)) {
        const std::size_t k = points.find(s);
        if (k < points.size() && !omega0[k]) throw GeometryError("a regular focus is a singular point of f");
    }
    if (!(delta > 0.0)) delta = default_delta(points, singularities, omega0);
    const auto exterior = exterior_singular_points(points, singularities);

    double room = INFINITY;  // the inner circles must stay below this radius
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!omega0[k]) continue;
        const Complex zk = points[k].z;
        for (std::size_t s = 0; s < points.size(); ++s) {
            if (s == k) continue;
            const double d = std::abs(points[s].z - zk);
            room = std::min(room, omega0[s] ? 0.5 * d : d);
        }
        for (const auto& z : exterior) room = std::min(room, std::abs(z - zk));
        for (const auto& z : probes) room = std::min(room, std::abs(z - zk));
    }
    if (!std::isfinite(room)) room = 4.0 * delta;
    if (!(room > delta * (1.0 + 1e-9))) {
        throw GeometryError("excluded disks touch another focus, singularity or probe point");
    }
    const double rho = std::min(2.0 * delta, 0.5 * (delta + room));

    std::vector<Circle> inner;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (omega0[k]) inner.push_back({points[k].z, rho});
    }
    AnnulusContours out;
    out.inner = Contour::union_of(inner);
    out.outer = enclosing_contour(points, singularities, probes, inner);
    out.delta = delta;
    out.inner_radius = rho;
    return out;
}

}  // namespace lemniscate
