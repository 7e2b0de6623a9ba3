#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "pzeta/errors.hpp"

namespace pzeta {

// Euler-Mascheroni constant, 20 digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

struct EvalAccuracy {
  double abs_tol = 1e-10;
  int max_terms = 64;
};

inline void validate(const EvalAccuracy& acc) {
  if (!(acc.abs_tol >= 1e-12))
    throw std::invalid_argument("EvalAccuracy: abs_tol must be >= 1e-12");
  if (acc.max_terms < 10)
    throw std::invalid_argument("EvalAccuracy: max_terms must be >= 10");
}

namespace detail {

// B_{2j} / (2j)! for j = 1..15.
inline constexpr double bern_over_fact[] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
    3.5347070396294675e-21,  -8.9535174270375469e-23, 2.2679524523376831e-24,
};

// zeta(s) for Re(s) >= 1, s != 1, by Euler-Maclaurin summation:
//   sum_{k<N} k^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//   + sum_j B_{2j}/(2j)! * (s)_{2j-1} * N^{1-s-2j},
// remainder bounded by |next term| * |s+2M+1| / (Re s + 2M+1).
inline std::complex<double> zeta_euler_maclaurin(std::complex<double> s,
                                                 double abs_tol) {
  const double sigma = s.real();
  int n_cut = std::max(18, static_cast<int>(0.6 * std::abs(s.imag())) + 12);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double n = n_cut;
    std::complex<double> sum = 0.0;
    for (int k = 1; k < n_cut; ++k)
      sum += std::exp(-s * std::log(static_cast<double>(k)));
    sum += std::exp((1.0 - s) * std::log(n)) / (s - 1.0);
    const std::complex<double> n_pow_minus_s = std::exp(-s * std::log(n));
    sum += 0.5 * n_pow_minus_s;

    std::complex<double> poch = s;            // (s)_{2j-1} for j = 1
    double n_pow = 1.0 / (n * n);             // N^{-2j+1} * N for j = 1
    bool converged = false;
    for (int j = 1; j <= 15; ++j) {
      const std::complex<double> term =
          bern_over_fact[j - 1] * poch * n_pow_minus_s * (n * n_pow);
      sum += term;
      const double tail =
          std::abs(term) * std::abs(s + (2.0 * j + 1.0)) / (sigma + 2 * j + 1);
      if (tail < 0.25 * abs_tol) {
        converged = true;
        break;
      }
      poch *= (s + (2.0 * j - 1.0)) * (s + (2.0 * j));
      n_pow /= n * n;
    }
    if (converged) return sum;
    n_cut *= 2;  // Bernoulli series not yet in its decaying regime
  }
  throw std::runtime_error("zeta: Euler-Maclaurin failed to converge");
}

}  // namespace detail

inline std::complex<double> zeta_complex(std::complex<double> s,
                                         EvalAccuracy acc = {}) {
  validate(acc);
  if (s.real() < 1.0)
    throw std::domain_error("zeta_complex: requires Re(s) >= 1");
  if (s == std::complex<double>(1.0, 0.0))
    throw singularity_error("zeta_complex: pole at s = 1");
  return detail::zeta_euler_maclaurin(s, acc.abs_tol);
}

inline double zeta_real(double s, EvalAccuracy acc = {}) {
  validate(acc);
  if (!(s > 1.0)) throw std::domain_error("zeta_real: requires s > 1");
  return detail::zeta_euler_maclaurin({s, 0.0}, acc.abs_tol).real();
}

// log|zeta(1+i*delta)|.  Deltas within 1e-3 of the pole are rejected
// rather than extrapolated.
inline double log_abs_zeta_1line(double delta, EvalAccuracy acc = {}) {
  validate(acc);
  if (std::abs(delta) <= 1e-3)
    throw singularity_error("log_abs_zeta_1line: delta too close to the pole");
  return std::log(std::abs(detail::zeta_euler_maclaurin({1.0, delta}, acc.abs_tol)));
}

// sum_{n>=2} (zeta(n)-1)/n, truncated where the geometric tail bound
// sum_{n>N} 2*2^{-n}/n < 2^{1-N}/(N+1) drops below 1e-10.  The sum
// converges to 1 - euler_gamma.
inline double euler_gamma_residual() {
  double sum = 0.0;
  int n = 2;
  for (; n <= 64; ++n) {
    sum += (zeta_real(static_cast<double>(n), {1e-12, 64}) - 1.0) / n;
    if (std::ldexp(2.0, -n) / (n + 1) < 1e-10) break;
  }
  return sum;
}

}  // namespace pzeta
