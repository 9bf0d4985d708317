#pragma once

#include <vector>

#include "lemniscate/errors.hpp"
#include "lemniscate/point_set.hpp"

namespace lemniscate {

/// Dense coefficient tensor indexed (n, j, l) for blocks n < N, foci j in
/// [first, last) of a point set, and 0 <= l < m_j.
class CoefficientTensor {
public:
    CoefficientTensor() = default;
    CoefficientTensor(int blocks, const PointSet& points, std::size_t first, std::size_t last);
    CoefficientTensor(int blocks, const PointSet& points) : CoefficientTensor(blocks, points, 0, points.size()) {}

    int blocks() const { return blocks_; }
    std::size_t first_focus() const { return first_; }
    std::size_t last_focus() const { return first_ + multiplicities_.size(); }
    int multiplicity(std::size_t j) const { return multiplicities_[j - first_]; }
    /// Entries per block.
    std::size_t block_size() const { return block_size_; }

    Complex& operator()(int n, std::size_t j, int l) { return data_[index(n, j, l)]; }
    Complex operator()(int n, std::size_t j, int l) const { return data_[index(n, j, l)]; }

    std::size_t index(int n, std::size_t j, int l) const {
        return static_cast<std::size_t>(n) * block_size_ + offsets_[j - first_] + static_cast<std::size_t>(l);
    }
    std::vector<Complex>& data() { return data_; }
    const std::vector<Complex>& data() const { return data_; }

    double max_abs() const;

private:
    int blocks_ = 0;
    std::size_t first_ = 0;
    std::vector<int> multiplicities_;
    std::vector<std::size_t> offsets_;
    std::size_t block_size_ = 0;
    std::vector<Complex> data_;
};

/// Largest |x - y| over matching entries; tensors must share a shape.
double max_abs_diff(const CoefficientTensor& x, const CoefficientTensor& y);

}  // namespace lemniscate
