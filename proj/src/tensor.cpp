#include "lemniscate/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace lemniscate {

CoefficientTensor::CoefficientTensor(int blocks, const PointSet& points, std::size_t first, std::size_t last)
    : blocks_(blocks), first_(first) {
    if (blocks < 0 || first > last || last > points.size()) throw DomainError("bad tensor shape");
    for (std::size_t j = first; j < last; ++j) {
        offsets_.push_back(block_size_);
        multiplicities_.push_back(points[j].multiplicity);
        block_size_ += static_cast<std::size_t>(points[j].multiplicity);
    }
    data_.assign(block_size_ * static_cast<std::size_t>(blocks), Complex(0.0));
}

double CoefficientTensor::max_abs() const {
    double out = 0.0;
    for (const auto& x : data_) out = std::max(out, std::abs(x));
    return out;
}

double max_abs_diff(const CoefficientTensor& x, const CoefficientTensor& y) {
    if (x.data().size() != y.data().size() || x.first_focus() != y.first_focus()) {
        throw DomainError("tensor shapes differ");
    }
    double out = 0.0;
    for (std::size_t i = 0; i < x.data().size(); ++i) out = std::max(out, std::abs(x.data()[i] - y.data()[i]));
    return out;
}

}  // namespace lemniscate
