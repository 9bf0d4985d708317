#pragma once

#include <iosfwd>

namespace lemniscate {

/// Exit codes: 0 success, 1 verification failure or unexpected error,
/// 2 bad arguments or input, 3 geometry error, 4 quadrature did not converge.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lemniscate
