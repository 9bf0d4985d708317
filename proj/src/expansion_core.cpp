#include "expansion_core.hpp"

#include <algorithm>
#include <numbers>
#include <cmath>
#include <string>

#include "lemniscate/parallel.hpp"

namespace lemniscate::detail {

void exponents(Pattern pattern, const PointSet& points, std::size_t split, int n, std::size_t j, int l,
               std::span<int> out) {
    for (std::size_t s = 0; s < points.size(); ++s) {
        const int m = points[s].multiplicity;
        switch (pattern) {
            case Pattern::TaylorA: out[s] = -n * m; break;
            case Pattern::LaurentB: out[s] = (n + 1) * m; break;
            case Pattern::SplitB: out[s] = s < split ? -n * m : n * m; break;
            case Pattern::SplitC: out[s] = s < split ? -(n + 1) * m : (n + 1) * m; break;
        }
    }
    out[j] -= l + 1;
}

Complex integer_power(Complex x, int e) {
    if (e < 0) return Complex(1.0) / integer_power(x, -e);
    Complex out(1.0);
    while (e > 0) {
        if (e & 1) out *= x;
        x *= x;
        e >>= 1;
    }
    return out;
}

void fill_cauchy(const ComplexFunction& f, const PointSet& points, Pattern pattern, std::size_t split,
                 CoefficientTensor& shape, const Contour& contour, const QuadratureOptions& options,
                 double* est_error) {
    const std::size_t p = points.size();
    const std::size_t count = shape.data().size();
    auto raw = [&](Complex w, std::span<Complex> out) {
        const Complex fw = f.value(w);
        std::vector<Complex> d(p);
        for (std::size_t s = 0; s < p; ++s) d[s] = w - points[s].z;
        std::vector<int> e(p);
        for (int n = 0; n < shape.blocks(); ++n) {
            for (std::size_t j = shape.first_focus(); j < shape.last_focus(); ++j) {
                for (int l = 0; l < shape.multiplicity(j); ++l) {
                    exponents(pattern, points, split, n, j, l, e);
                    Complex v = fw;
                    for (std::size_t s = 0; s < p; ++s) v *= integer_power(d[s], e[s]);
                    out[shape.index(n, j, l)] = v;
                }
            }
        }
    };
    // Each entry is integrated after division by its peak on a coarse sample of
    // the contour, so high-order coefficients far below 1 still get the full
    // relative tolerance.
    std::vector<double> peak(count, 0.0);
    std::vector<Complex> buffer(count);
    constexpr int kSample = 64;
    for (const auto& piece : contour.pieces()) {
        for (int k = 0; k < kSample; ++k) {
            raw(piece.center + std::polar(piece.radius, 2.0 * std::numbers::pi * (k + 0.5) / kSample), buffer);
            for (std::size_t i = 0; i < count; ++i) peak[i] = std::max(peak[i], std::abs(buffer[i]));
        }
    }
    for (auto& v : peak) {
        if (!(v > 0.0) || !std::isfinite(v)) v = 1.0;
    }
    auto integrand = [&](Complex w, std::span<Complex> out) {
        raw(w, out);
        for (std::size_t i = 0; i < count; ++i) out[i] /= peak[i];
    };
    const auto result = cauchy_integral_batch(count, integrand, contour, options);
    if (!result.converged) {
        throw ConvergenceError("contour quadrature did not converge within " + std::to_string(options.max_nodes) +
                                   " nodes per circle",
                               result.est_error);
    }
    for (std::size_t i = 0; i < count; ++i) shape.data()[i] = result.values[i] * peak[i];
    if (est_error) *est_error = result.est_error * *std::max_element(peak.begin(), peak.end());
}

FocalJets::FocalJets(const ComplexFunction& f, const PointSet& points, std::vector<int> rho,
                     const std::vector<bool>& use, int blocks)
    : points_(points), rho_(std::move(rho)), g_(points.size()) {
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!use[k]) continue;
        const int span = blocks * points[k].multiplicity;
        const int reach = span + rho_[k];
        const Series s = f.series(points[k].z, span);
        if (!s.is_zero() && s.valuation() < -rho_[k]) {
            throw DomainError("declared pole order " + std::to_string(rho_[k]) + " at focus " + std::to_string(k) +
                              " is below the actual order " + std::to_string(-s.valuation()));
        }
        g_[k].resize(static_cast<std::size_t>(reach + 1));
        for (int i = 0; i <= reach; ++i) g_[k][static_cast<std::size_t>(i)] = s[i - rho_[k]];
    }
}

Complex FocalJets::residue(std::size_t k, std::span<const int> e) const {
    const int order = rho_[k] - e[k] - 1;
    if (order < 0) return Complex(0.0);
    if (order >= static_cast<int>(g_[k].size())) throw DomainError("focal jet too short");
    const Complex zk = points_[k].z;
    Series numerator = Series::constant(Complex(1.0), order);
    Series denominator = Series::constant(Complex(1.0), order);
    for (std::size_t s = 0; s < points_.size(); ++s) {
        if (s == k || e[s] == 0) continue;
        const Series factor = Series::variable(zk, order) - points_[s].z;
        if (e[s] > 0) {
            numerator *= factor.pow(static_cast<long long>(e[s]));
        } else {
            denominator *= factor.pow(static_cast<long long>(-e[s]));
        }
    }
    // quotient by the recurrence division of truncated series
    const Series h = numerator / denominator;
    Complex out(0.0);
    for (int i = 0; i <= order; ++i) out += g_[k][static_cast<std::size_t>(i)] * h[order - i];
    return out;
}

void fill_residues(const FocalJets& jets, const PointSet& points, Pattern pattern, std::size_t split,
                   const std::vector<bool>& inside, CoefficientTensor& shape) {
    const std::size_t per_block = shape.block_size();
    const std::size_t total = shape.data().size();
    std::vector<std::pair<std::size_t, int>> slot(per_block);
    for (std::size_t j = shape.first_focus(); j < shape.last_focus(); ++j) {
        for (int l = 0; l < shape.multiplicity(j); ++l) slot[shape.index(0, j, l)] = {j, l};
    }
    parallel_for(total, [&](std::size_t index) {
        const int n = static_cast<int>(index / per_block);
        const auto [j, l] = slot[index % per_block];
        std::vector<int> e(points.size());
        exponents(pattern, points, split, n, j, l, e);
        Complex sum(0.0);
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (inside[k]) sum += jets.residue(k, e);
        }
        shape.data()[index] = sum;
    });
}

std::vector<Complex> weight_correction(const PointSet& points, std::size_t first, std::size_t last, std::size_t j) {
    const auto m = static_cast<std::size_t>(points[j].multiplicity);
    std::vector<Complex> out(m, Complex(0.0));
    out[0] = 1.0;
    for (std::size_t k = first; k < last; ++k) {
        if (k == j) continue;
        // (1 + u)^{-mk} with u = t / (z_j - z_k)
        const Complex inv = 1.0 / (points[j].z - points[k].z);
        const int mk = points[k].multiplicity;
        std::vector<Complex> binom(m);
        binom[0] = 1.0;
        for (std::size_t i = 1; i < m; ++i) {
            binom[i] = binom[i - 1] * inv * (-static_cast<double>(mk + static_cast<int>(i) - 1)) / static_cast<double>(i);
        }
        std::vector<Complex> next(m, Complex(0.0));
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; a + b < m; ++b) next[a + b] += out[a] * binom[b];
        }
        out = std::move(next);
    }
    return out;
}

std::vector<int> declared_focal_orders(const ComplexFunction& f, const PointSet& points) {
    std::vector<int> rho(points.size(), 0);
    for (const auto& s : f.singularities()) {
        const std::size_t k = points.find(s.location);
        if (k == points.size()) continue;
        if (s.kind != SingularityKind::Pole) {
            throw DomainError(std::string("focus ") + std::to_string(k) + " is a " +
                              std::string(singularity_kind_name(s.kind)) + " singularity");
        }
        rho[k] = std::max(rho[k], s.order);
    }
    return rho;
}

}  // namespace lemniscate::detail
