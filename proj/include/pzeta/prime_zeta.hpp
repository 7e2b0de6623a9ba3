#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pzeta/curve.hpp"
#include "pzeta/detail/sum.hpp"
#include "pzeta/detail/trig.hpp"
#include "pzeta/errors.hpp"
#include "pzeta/parallel.hpp"
#include "pzeta/primes.hpp"
#include "pzeta/zeta.hpp"

namespace pzeta {

// P_t(s) = sum over table primes of p^{-s}.  Terms accumulate into
// 128-element block partials that are pairwise-reduced, keeping rounding
// error O(log n) ulps over the 10^6..10^8-term sums used here.
inline std::complex<double> truncated_prime_zeta(const PrimeTable& table,
                                                 std::complex<double> s) {
  if (table.primes.empty())
    throw std::invalid_argument("truncated_prime_zeta: empty prime table");
  const double sigma = s.real(), tau = s.imag();
  const std::size_t n = table.primes.size();
  constexpr std::size_t kBlock = 128;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_re(n_blocks), block_im(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    double re = 0.0, im = 0.0;
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const double p = table.primes[i];
      const double w = std::pow(p, -sigma);
      if (tau == 0.0) {
        re += w;
      } else {
        const double ph = detail::reduce_2pi(tau * std::log(p));
        re += w * std::cos(ph);
        im -= w * std::sin(ph);  // p^{-i tau} = cos - i sin
      }
    }
    block_re[b] = re;
    block_im[b] = im;
  }
  return {detail::pairwise_sum(n_blocks, [&](std::size_t b) { return block_re[b]; }),
          detail::pairwise_sum(n_blocks, [&](std::size_t b) { return block_im[b]; })};
}

// Moebius function; 0 on non-squarefree n, else parity of the factor count.
inline int mobius(std::int64_t n) {
  if (n < 1) throw std::domain_error("mobius: n must be >= 1");
  int factors = 0;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    ++factors;
  }
  if (n > 1) ++factors;
  return (factors % 2) ? -1 : 1;
}

// P(s) on Re(s) >= 1, s != 1, via the Moebius-weighted log zeta series
//   P(s) = sum_{n>=1} mu(n)/n * log zeta(ns),
// truncated once the term bound (zeta(n Re s) - 1)/n falls below
// abs_tol/10; the series is capped at n = 64 where that bound is ~1e-21.
// The real part is branch-free (log|zeta|); the imaginary part uses the
// principal branch of each log.
inline std::complex<double> prime_zeta_full(std::complex<double> s,
                                            EvalAccuracy acc = {}) {
  validate(acc);
  if (s == std::complex<double>(1.0, 0.0))
    throw singularity_error("prime_zeta_full: pole at s = 1");
  if (s.real() < 1.0)
    throw std::domain_error("prime_zeta_full: requires Re(s) >= 1");
  const EvalAccuracy zacc{std::max(1e-12, acc.abs_tol / 32.0), acc.max_terms};
  std::complex<double> p = std::log(zeta_complex(s, zacc));
  for (int n = 2; n <= 64; ++n) {
    const double bound =
        (zeta_real(n * s.real(), {1e-12, 64}) - 1.0) / static_cast<double>(n);
    if (bound < acc.abs_tol / 10.0) break;
    const int mu = mobius(n);
    if (mu == 0) continue;
    p += (static_cast<double>(mu) / n) *
         std::log(zeta_complex(static_cast<double>(n) * s, zacc));
  }
  return p;
}

namespace detail {

inline bool is_uniform_grid(const std::vector<double>& d) {
  if (d.size() < 3) return true;
  const double h = (d.back() - d.front()) / static_cast<double>(d.size() - 1);
  for (std::size_t i = 1; i + 1 < d.size(); ++i) {
    const double ideal = d.front() + static_cast<double>(i) * h;
    if (std::abs(d[i] - ideal) > 1e-9 * (1.0 + std::abs(ideal))) return false;
  }
  return true;
}

}  // namespace detail

// values[k] = Re P_t(1 + i*deltas[k]) = sum cos(deltas[k] log p)/p.
//
// Uniform grids use a per-prime rotation recurrence (one complex multiply
// per grid point); after ~2000 grid points the accumulated drift is
// ~2e-13 relative, irrelevant at the curve's working tolerances.  Primes
// are processed in fixed 65536-wide chunks whose partials merge in chunk
// order, so results are identical for every thread count.  Entries with
// delta == 0 are recomputed through truncated_prime_zeta so the identity
// value P_t(1) holds exactly.
inline Curve covariance_curve(const PrimeTable& table,
                              const std::vector<double>& deltas,
                              unsigned threads = 0) {
  if (table.primes.empty())
    throw std::invalid_argument("covariance_curve: empty prime table");
  if (deltas.empty())
    throw std::invalid_argument("covariance_curve: empty delta grid");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!std::isfinite(deltas[i]))
      throw std::invalid_argument("covariance_curve: non-finite delta");
    if (i > 0 && !(deltas[i] > deltas[i - 1]))
      throw std::invalid_argument("covariance_curve: deltas must increase strictly");
  }

  const std::size_t n_primes = table.primes.size();
  const std::size_t n_k = deltas.size();
  constexpr std::size_t kChunk = 65536;
  const std::size_t n_chunks = (n_primes + kChunk - 1) / kChunk;
  const bool uniform = detail::is_uniform_grid(deltas);
  const double h = n_k > 1 ? deltas[1] - deltas[0] : 0.0;

  std::vector<double> partial(n_chunks * n_k, 0.0);
  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    double* acc = partial.data() + c * n_k;
    const std::size_t end = std::min(n_primes, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double p = table.primes[i];
      const double lp = std::log(p);
      const double w = std::pow(p, -1.0);
      if (uniform) {
        const double ph0 = detail::reduce_2pi(deltas[0] * lp);
        const double step = detail::reduce_2pi(h * lp);
        double cr = w * std::cos(ph0), ci = w * std::sin(ph0);
        const double rc = std::cos(step), rs = std::sin(step);
        for (std::size_t k = 0; k < n_k; ++k) {
          acc[k] += cr;
          const double t = cr * rc - ci * rs;
          ci = cr * rs + ci * rc;
          cr = t;
        }
      } else {
        for (std::size_t k = 0; k < n_k; ++k)
          acc[k] += w * std::cos(detail::reduce_2pi(deltas[k] * lp));
      }
    }
  });

  Curve curve;
  curve.deltas = deltas;
  curve.values.resize(n_k);
  for (std::size_t k = 0; k < n_k; ++k)
    curve.values[k] = detail::pairwise_sum(
        n_chunks, [&](std::size_t c) { return partial[c * n_k + k]; });
  for (std::size_t k = 0; k < n_k; ++k)
    if (deltas[k] == 0.0)
      curve.values[k] = truncated_prime_zeta(table, {1.0, 0.0}).real();
  return curve;
}

// Mean squared error of the truncation at t = table.limit:
// (P(2) - P_t(2)) / 2.
inline double truncation_mse(const PrimeTable& table, EvalAccuracy acc = {}) {
  const double full = prime_zeta_full({2.0, 0.0}, acc).real();
  const double trunc = truncated_prime_zeta(table, {2.0, 0.0}).real();
  return (full - trunc) / 2.0;
}

}  // namespace pzeta
