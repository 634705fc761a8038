#pragma once

#include <complex>
#include <limits>

namespace twofluid {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace twofluid
