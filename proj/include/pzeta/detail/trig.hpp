#pragma once

#include <cmath>

namespace pzeta::detail {

// Manual range reduction to [0, 2*pi).  libm's cos/sin take a slow
// path for large arguments; phases here reach tau*log(p) ~ 3e8 where
// that costs more than the multiply-and-floor below.  The reduction
// error is |k|*ulp(2*pi) ~ 1e-8 rad at the extreme, far below the
// Monte Carlo noise floor of anything computed from these phases.
inline double reduce_2pi(double x) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  constexpr double inv_two_pi = 0.15915494309189533576888376337251;
  return x - std::floor(x * inv_two_pi) * two_pi;
}

}  // namespace pzeta::detail
