#pragma once

// Independent reference implementations used only by tests.  Everything
// here is deliberately naive and shares no code with the library so that
// agreement between the two is meaningful evidence.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Plain (non-segmented) boolean sieve; independent of the library's
// segmented implementation.
inline std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return primes;
}

// zeta(s) for real s > 1: direct Dirichlet sum to K plus the integral
// tail estimate K^{1-s}/(s-1); the neglected correction is below K^{-s}.
inline double zeta_dirichlet(double s, std::uint64_t k_cut = 200000) {
  double sum = 0.0;
  for (std::uint64_t k = k_cut; k >= 1; --k)  // ascending magnitude
    sum += std::pow(static_cast<double>(k), -s);
  double kd = static_cast<double>(k_cut);
  return sum + std::pow(kd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(kd, -s);
}

// zeta(s) on Re(s) >= 1 via the eta function with Cohen-Villegas-Zagier
// acceleration of the alternating series.  Breaks down near the zeros of
// 1 - 2^{1-s} (Im s = 2*pi*k/log 2 ~ 9.0647k on the 1-line); callers
// avoid those heights.
inline std::complex<double> zeta_cvz(std::complex<double> s, int n = 0) {
  // The acceleration error carries a factor exp(pi*|Im s|/2); deepen the
  // series accordingly.
  if (n == 0) n = 64 + static_cast<int>(2.0 * std::abs(s.imag()));
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0, c = -d;
  std::complex<double> acc = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    acc += c * std::exp(-s * std::log(static_cast<double>(k + 1)));
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  std::complex<double> eta = acc / d;
  return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

// erf via its Maclaurin series: ~1e-13 for |x| <= 3, ~1e-9 by |x| = 4
// (alternating-term cancellation).
inline double erf_series(double x) {
  double term = x, sum = x;
  for (int k = 1; k < 120; ++k) {
    term *= -x * x / k;
    sum += term / (2 * k + 1);
    if (std::abs(term) < 1e-18) break;
  }
  return sum * 2.0 / std::sqrt(M_PI);
}

// All-pairs difference histogram, the quadratic way.
inline std::vector<std::uint64_t> brute_histogram(
    const std::vector<double>& zs, double lo, double hi, double width,
    std::size_t n_bins) {
  std::vector<std::uint64_t> counts(n_bins, 0);
  for (std::size_t j = 1; j < zs.size(); ++j)
    for (std::size_t k = 0; k < j; ++k) {
      double d = zs[j] - zs[k];
      if (d < lo || d >= hi) continue;
      auto bin = static_cast<std::size_t>(std::floor((d - lo) / width));
      if (bin >= n_bins) bin = n_bins - 1;
      ++counts[bin];
    }
  return counts;
}

// Direct prime sum for P(sigma), real sigma > 1, over primes <= limit.
inline double prime_zeta_direct(double sigma,
                                const std::vector<std::uint64_t>& primes) {
  double sum = 0.0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it)
    sum += std::pow(static_cast<double>(*it), -sigma);
  return sum;
}

}  // namespace oracle
