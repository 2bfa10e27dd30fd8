#ifndef THETABAND_TYPES_HPP
#define THETABAND_TYPES_HPP

#include <complex>

namespace thetaband {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

} // namespace thetaband

#endif
