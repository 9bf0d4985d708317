#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace lemniscate {

using Complex = std::complex<double>;

/// Malformed input text (expression, focus list, CLI value).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position = npos)
        : std::runtime_error(position == npos ? what : what + " at position " + std::to_string(position)),
          position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Evaluation outside the analytic domain of a function or kernel.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// No admissible contour or region exists for the requested configuration.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature failed to reach its tolerance within the node budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double est_error)
        : std::runtime_error(what), est_error_(est_error) {}

    double est_error() const noexcept { return est_error_; }

private:
    double est_error_;
};

}  // namespace lemniscate
