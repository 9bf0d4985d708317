#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lemniscate/errors.hpp"

namespace lemniscate {

struct Focus {
    Complex z;
    int multiplicity = 1;
};

/// The expansion points z_1..z_p with multiplicities m_1..m_p.
///
/// Foci closer than 1e-8 * scale are merged (multiplicities add); foci closer
/// than 1e-4 * scale are kept but reported in warnings(). The scale is the
/// largest pairwise distance, or 1 for a single focus.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Focus> foci);

    std::size_t size() const { return foci_.size(); }
    const Focus& operator[](std::size_t j) const { return foci_[j]; }
    const std::vector<Focus>& foci() const { return foci_; }
    /// m = sum of multiplicities.
    int total_multiplicity() const { return total_; }
    double scale() const { return scale_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// prod_k (z - z_k)^{m_k}
    Complex product(Complex z) const;
    /// Same product restricted to foci [first, last).
    Complex product(Complex z, std::size_t first, std::size_t last) const;
    /// Index of the focus at z (within merge tolerance), or size().
    std::size_t find(Complex z) const;

    Complex centroid() const;
    double min_pairwise_distance() const;

private:
    std::vector<Focus> foci_;
    int total_ = 0;
    double scale_ = 1.0;
    std::vector<std::string> warnings_;
};

/// Parses "z:m,z:m,..." where each z is a complex literal such as 1, -0.5,
/// 2i, 1-2i, i, or any constant expression; ":m" defaults to 1.
PointSet parse_point_set(std::string_view text);

/// Complex constant from a literal or a z-free expression.
Complex parse_complex(std::string_view text);

}  // namespace lemniscate
