#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lemniscate/contour.hpp"
#include "lemniscate/function.hpp"
#include "lemniscate/point_set.hpp"

namespace lemniscate {

enum class NodeOrdering {
    Interleaved,  ///< (z_1 x m_1, ..., z_p x m_p) repeated N times
    Grouped,      ///< z_1 x N m_1, then z_2 x N m_2, ...
};

/// Confluent Hermite interpolant in Newton form.
struct HermitePolynomial {
    PointSet points;
    int N = 0;
    std::vector<Complex> nodes;
    std::vector<Complex> newton_coeffs;
};

/// Interpolates D^l f(z_j) for l < N m_j. Divided differences depend only on
/// the multiset of nodes, so they are memoized on per-focus counts; a
/// single-focus multiset reads the jet coefficient directly.
HermitePolynomial hermite_interpolate(const ComplexFunction& f, const PointSet& points, int N,
                                      NodeOrdering ordering = NodeOrdering::Interleaved);

Complex eval_hermite(const HermitePolynomial& h, Complex z);

/// a_{n,j,l} by the residue theorem on the rational form of f: residues at
/// the foci, plus at the poles of f enclosed by `contour` when one is given.
/// Throws DomainError when f has no rational form.
Complex residue_coeffs_rational(const AnalyticFunction& f, const PointSet& points, int n, std::size_t j, int l,
                                const std::optional<Contour>& contour = std::nullopt);

struct OrderCheck {
    bool exact = false;  ///< |r_N| < 1e-13 at every probe
    double slope = 0.0;
    std::vector<double> t;
    std::vector<double> remainder;
};

/// Least-squares slope of log|r_N(z_j + t u)| against log t for
/// t in {1e-2, 1e-3, 1e-4}, u a unit direction drawn from `seed`.
OrderCheck remainder_order_check(const ComplexFunction& f, const PointSet& points, int N, std::size_t j,
                                 std::uint64_t seed = 0);

}  // namespace lemniscate
