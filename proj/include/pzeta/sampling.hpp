#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pzeta/detail/sum.hpp"
#include "pzeta/detail/trig.hpp"
#include "pzeta/errors.hpp"
#include "pzeta/parallel.hpp"
#include "pzeta/prime_zeta.hpp"
#include "pzeta/primes.hpp"
#include "pzeta/rng.hpp"

// Monte Carlo estimation of moments and covariances of the truncated prime
// sum P_t(sigma + i tau) at heights tau drawn uniformly from [T, 2T].
//
// Randomness: the k-th height is a pure function of (seed, k) through the
// SplitMix64 stream in rng.hpp, so every sample can be generated on any
// worker in any order.  Sample indices are processed in fixed 4096-wide
// chunks whose partial sums merge in chunk order; together these make all
// results bit-identical across runs and thread counts.

namespace pzeta {

struct SampleConfig {
  double height_T = 0.0;  // tau uniform in [T, 2T]
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = 0;
  double sigma = 0.5;
};

inline void validate(const SampleConfig& cfg) {
  if (!(cfg.height_T > 0.0) || !std::isfinite(cfg.height_T))
    throw std::invalid_argument("SampleConfig: height_T must be positive");
  if (cfg.n_samples < 1)
    throw std::invalid_argument("SampleConfig: n_samples must be >= 1");
  if (!std::isfinite(cfg.sigma))
    throw std::invalid_argument("SampleConfig: sigma must be finite");
}

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::uint64_t n = 0;
};

// A Monte Carlo estimate with the standard error of its mean.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
};

enum class Part { real_part, imaginary_part };

namespace detail {

inline double sample_tau(const SampleConfig& cfg, std::uint64_t k) {
  return cfg.height_T * (1.0 + stream_uniform01(cfg.seed, k));
}

struct PrimeTerms {
  std::vector<double> log_p;
  std::vector<double> weight;  // p^{-sigma}
};

inline PrimeTerms prime_terms(const PrimeTable& table, double sigma) {
  if (table.primes.empty())
    throw std::invalid_argument("sampling: empty prime table");
  PrimeTerms t;
  t.log_p.reserve(table.primes.size());
  t.weight.reserve(table.primes.size());
  for (std::uint32_t p : table.primes) {
    const double pd = p;
    t.log_p.push_back(std::log(pd));
    t.weight.push_back(std::pow(pd, -sigma));
  }
  return t;
}

// Same block/tree shape as truncated_prime_zeta, so a sampled value is
// bitwise equal to truncated_prime_zeta(table, sigma + i tau).
inline std::complex<double> series_value(const PrimeTerms& t, double tau) {
  const std::size_t n = t.log_p.size();
  constexpr std::size_t kBlock = 128;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_re(n_blocks), block_im(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    double re = 0.0, im = 0.0;
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const double w = t.weight[i];
      if (tau == 0.0) {
        re += w;
      } else {
        const double ph = reduce_2pi(tau * t.log_p[i]);
        re += w * std::cos(ph);
        im -= w * std::sin(ph);
      }
    }
    block_re[b] = re;
    block_im[b] = im;
  }
  return {pairwise_sum(n_blocks, [&](std::size_t b) { return block_re[b]; }),
          pairwise_sum(n_blocks, [&](std::size_t b) { return block_im[b]; })};
}

// One real component per sample; the workhorse behind normality_check.
inline std::vector<double> sample_component(const PrimeTerms& terms,
                                            const SampleConfig& cfg, Part part,
                                            unsigned threads) {
  const std::size_t n = cfg.n_samples;
  const std::size_t n_p = terms.log_p.size();
  std::vector<double> out(n);
  constexpr std::size_t kChunk = 4096;
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      const double tau = sample_tau(cfg, k);
      if (part == Part::real_part) {
        out[k] = pairwise_sum(n_p, [&](std::size_t i) {
          return terms.weight[i] * std::cos(reduce_2pi(tau * terms.log_p[i]));
        });
      } else {
        out[k] = -pairwise_sum(n_p, [&](std::size_t i) {
          return terms.weight[i] * std::sin(reduce_2pi(tau * terms.log_p[i]));
        });
      }
    }
  });
  return out;
}

}  // namespace detail

// n_samples evaluations of P_t(sigma + i tau_k), tau_k i.i.d. uniform in
// [T, 2T].
inline std::vector<std::complex<double>> sample_series(const PrimeTable& table,
                                                       const SampleConfig& cfg,
                                                       unsigned threads = 0) {
  validate(cfg);
  const detail::PrimeTerms terms = detail::prime_terms(table, cfg.sigma);
  const std::size_t n = cfg.n_samples;
  std::vector<std::complex<double>> out(n);
  constexpr std::size_t kChunk = 4096;
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k)
      out[k] = detail::series_value(terms, detail::sample_tau(cfg, k));
  });
  return out;
}

struct CovarianceProfile {
  std::vector<double> deltas;
  std::vector<double> values;
  std::vector<double> std_errors;
  std::uint64_t n = 0;
};

// Paired estimator over a grid of shifts: for each delta,
//   (1/n) sum_k Re P_t(sigma + i(tau_k + delta)) * Re P_t(sigma + i tau_k),
// with both factors from the same tau_k draw.  At sigma = 1/2 the
// expectation is (1/2) Re P_t(1 + i delta).  Part::imaginary_part runs the
// same estimator on Im P_t.
//
// A nonempty coeffs vector attaches a complex coefficient c_p to each
// term, turning the series into sum_p c_p p^{-sigma} e^{-i tau log p}
// (Dirichlet character runs pass chi(p) here; zero coefficients drop the
// prime).
//
// The shifted factor is factorized through the angle addition
//   cos((tau+delta) lp) = cos(tau lp) cos(delta lp) - sin(tau lp) sin(delta lp),
// so each sample costs one sincos pass over the primes plus a dot product
// per delta.  Both factors reduce to dot products
//   sum_i u_i alpha_i + v_i beta_i
// with per-delta tables alpha, beta folding in the weight, the shift
// angle, and the coefficient.  Memory: two doubles per (delta, prime).
inline CovarianceProfile empirical_covariance_profile(
    const PrimeTable& table, const SampleConfig& cfg,
    const std::vector<double>& deltas,
    const std::vector<std::complex<double>>& coeffs, Part part,
    unsigned threads = 0) {
  validate(cfg);
  if (deltas.empty())
    throw std::invalid_argument("empirical_covariance: empty delta grid");
  for (double d : deltas)
    if (!std::isfinite(d))
      throw std::invalid_argument("empirical_covariance: non-finite delta");
  if (!coeffs.empty() && coeffs.size() != table.primes.size())
    throw std::invalid_argument(
        "empirical_covariance: one coefficient per prime required");

  const detail::PrimeTerms terms = detail::prime_terms(table, cfg.sigma);
  const std::size_t n_p = terms.log_p.size();
  const std::size_t n_j = deltas.size();
  const auto coeff = [&](std::size_t i) {
    return coeffs.empty() ? std::complex<double>(1.0, 0.0) : coeffs[i];
  };
  // factor tables for the shifted series (rows 0..n_j-1) and the
  // unshifted base factor (last row, shift angle 0)
  std::vector<double> alpha((n_j + 1) * n_p), beta((n_j + 1) * n_p);
  for (std::size_t j = 0; j <= n_j; ++j) {
    for (std::size_t i = 0; i < n_p; ++i) {
      double cs = 1.0, sn = 0.0;
      if (j < n_j) {
        const double ph = detail::reduce_2pi(deltas[j] * terms.log_p[i]);
        cs = std::cos(ph);
        sn = std::sin(ph);
      }
      const double a = coeff(i).real(), b = coeff(i).imag();
      const double w = terms.weight[i];
      if (part == Part::real_part) {
        alpha[j * n_p + i] = w * (a * cs + b * sn);
        beta[j * n_p + i] = w * (b * cs - a * sn);
      } else {
        alpha[j * n_p + i] = w * (b * cs - a * sn);
        beta[j * n_p + i] = -w * (a * cs + b * sn);
      }
    }
  }

  const std::size_t n = cfg.n_samples;
  constexpr std::size_t kChunk = 4096;
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> sum1(n_chunks * n_j, 0.0), sum2(n_chunks * n_j, 0.0);
  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    std::vector<double> u(n_p), v(n_p);
    double* c1 = sum1.data() + c * n_j;
    double* c2 = sum2.data() + c * n_j;
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      const double tau = detail::sample_tau(cfg, k);
      for (std::size_t i = 0; i < n_p; ++i) {
        const double ph = detail::reduce_2pi(tau * terms.log_p[i]);
        u[i] = std::cos(ph);
        v[i] = std::sin(ph);
      }
      const auto dot = [&](std::size_t j) {
        const double* aj = alpha.data() + j * n_p;
        const double* bj = beta.data() + j * n_p;
        return detail::pairwise_sum(n_p, [&](std::size_t i) {
          return u[i] * aj[i] + v[i] * bj[i];
        });
      };
      const double base = dot(n_j);
      for (std::size_t j = 0; j < n_j; ++j) {
        const double prod = dot(j) * base;
        c1[j] += prod;
        c2[j] += prod * prod;
      }
    }
  });

  CovarianceProfile out;
  out.deltas = deltas;
  out.n = n;
  out.values.resize(n_j);
  out.std_errors.resize(n_j);
  const double dn = static_cast<double>(n);
  for (std::size_t j = 0; j < n_j; ++j) {
    const double m1 = detail::pairwise_sum(n_chunks, [&](std::size_t c) {
                        return sum1[c * n_j + j];
                      }) / dn;
    const double m2 = detail::pairwise_sum(n_chunks, [&](std::size_t c) {
                        return sum2[c * n_j + j];
                      }) / dn;
    double var = m2 - m1 * m1;
    if (var < 0.0) var = 0.0;
    if (n > 1) var *= dn / (dn - 1.0);
    out.values[j] = m1;
    out.std_errors[j] = std::sqrt(var / dn);
  }
  return out;
}

inline CovarianceProfile empirical_covariance_profile(
    const PrimeTable& table, const SampleConfig& cfg,
    const std::vector<double>& deltas, Part part = Part::real_part,
    unsigned threads = 0) {
  return empirical_covariance_profile(table, cfg, deltas, {}, part, threads);
}

inline double empirical_covariance(const PrimeTable& table,
                                   const SampleConfig& cfg, double delta,
                                   Part part = Part::real_part,
                                   unsigned threads = 0) {
  return empirical_covariance_profile(table, cfg, std::vector<double>{delta},
                                      part, threads)
      .values[0];
}

// Covariance of two single-prime summands p^{-sigma} e^{-i tau log p} over
// the same tau draws; for p != q the expectation vanishes as T grows.
inline Estimate summand_covariance(std::uint64_t p, std::uint64_t q,
                                   const SampleConfig& cfg,
                                   Part part = Part::real_part,
                                   unsigned threads = 0) {
  validate(cfg);
  if (p < 2 || q < 2)
    throw std::domain_error("summand_covariance: terms require p, q >= 2");
  const double lp = std::log(static_cast<double>(p));
  const double lq = std::log(static_cast<double>(q));
  const double wp = std::pow(static_cast<double>(p), -cfg.sigma);
  const double wq = std::pow(static_cast<double>(q), -cfg.sigma);

  const std::size_t n = cfg.n_samples;
  constexpr std::size_t kChunk = 4096;
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> sum1(n_chunks, 0.0), sum2(n_chunks, 0.0);
  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    double c1 = 0.0, c2 = 0.0;
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      const double tau = detail::sample_tau(cfg, k);
      double x, y;
      if (part == Part::real_part) {
        x = wp * std::cos(detail::reduce_2pi(tau * lp));
        y = wq * std::cos(detail::reduce_2pi(tau * lq));
      } else {
        x = -wp * std::sin(detail::reduce_2pi(tau * lp));
        y = -wq * std::sin(detail::reduce_2pi(tau * lq));
      }
      const double prod = x * y;
      c1 += prod;
      c2 += prod * prod;
    }
    sum1[c] = c1;
    sum2[c] = c2;
  });

  const double dn = static_cast<double>(n);
  const double m1 =
      detail::pairwise_sum(n_chunks, [&](std::size_t c) { return sum1[c]; }) / dn;
  const double m2 =
      detail::pairwise_sum(n_chunks, [&](std::size_t c) { return sum2[c]; }) / dn;
  double var = m2 - m1 * m1;
  if (var < 0.0) var = 0.0;
  if (n > 1) var *= dn / (dn - 1.0);
  return {m1, std::sqrt(var / dn), n};
}

struct NormalityCheck {
  MomentSummary moments;
  double scale_variance = 0.0;  // the exact (1/2) P_t(1) used to normalize
  double variance_std_error = 0.0;
  double skewness_std_error = 0.0;
  double kurtosis_std_error = 0.0;
};

// Moments of Re P_t(1/2 + i tau) normalized by the exact standard deviation
// sqrt((1/2) P_t(1)).
//
// Standard errors come from the influence functions of the moment-ratio
// estimators with odd central moments dropped (the summand distribution is
// symmetric); they reduce to the familiar sqrt(6/n) and sqrt(24/n) in the
// Gaussian limit.
inline NormalityCheck normality_check(const PrimeTable& table,
                                      const SampleConfig& cfg,
                                      Part part = Part::real_part,
                                      unsigned threads = 0) {
  validate(cfg);
  if (cfg.sigma != 0.5)
    throw std::invalid_argument("normality_check: requires sigma = 1/2");
  if (cfg.n_samples < 100)
    throw insufficient_samples_error(
        "normality_check: needs n_samples >= 100");

  const detail::PrimeTerms terms = detail::prime_terms(table, cfg.sigma);
  std::vector<double> x = detail::sample_component(terms, cfg, part, threads);
  const double scale_var = 0.5 * truncated_prime_zeta(table, {1.0, 0.0}).real();
  const double inv_sd = 1.0 / std::sqrt(scale_var);
  for (double& xi : x) xi *= inv_sd;

  const std::size_t n = x.size();
  const double dn = static_cast<double>(n);
  const double mean =
      detail::pairwise_sum(n, [&](std::size_t i) { return x[i]; }) / dn;
  auto central = [&](int power) {
    return detail::pairwise_sum(n, [&](std::size_t i) {
             const double d = x[i] - mean;
             double r = d;
             for (int t = 1; t < power; ++t) r *= d;
             return r;
           }) / dn;
  };
  const double c2 = central(2);
  const double c3 = central(3);
  const double c4 = central(4);
  const double c6 = central(6);
  const double c8 = central(8);

  NormalityCheck out;
  out.scale_variance = scale_var;
  out.moments.mean = mean;
  out.moments.n = n;
  out.moments.variance = n > 1 ? c2 * dn / (dn - 1.0) : 0.0;
  out.variance_std_error = std::sqrt(std::max(0.0, c4 - c2 * c2) / dn);
  if (c2 > 0.0) {
    out.moments.skewness = c3 / (c2 * std::sqrt(c2));
    out.moments.excess_kurtosis = c4 / (c2 * c2) - 3.0;
    out.skewness_std_error = std::sqrt(
        std::max(0.0, c6 - 6.0 * c2 * c4 + 9.0 * c2 * c2 * c2) /
        (c2 * c2 * c2) / dn);
    const double r = c4 / c2;
    out.kurtosis_std_error = std::sqrt(
        std::max(0.0, c8 - c4 * c4 + 4.0 * r * r * (c4 - c2 * c2) -
                          4.0 * r * (c6 - c2 * c4)) /
        (c2 * c2 * c2 * c2) / dn);
  }
  return out;
}

inline MomentSummary normality_summary(const PrimeTable& table,
                                       const SampleConfig& cfg,
                                       unsigned threads = 0) {
  return normality_check(table, cfg, Part::real_part, threads).moments;
}

// Fourth-moment Lyapunov quantity (3/8) P_t(2) / ((1/2) P_t(1))^2; decays
// like 1/log^2 log t, which drives the Gaussian limit.
inline double lyapunov_ratio(const PrimeTable& table) {
  if (table.limit < 10)
    throw std::domain_error("lyapunov_ratio: needs primes covering t >= 10");
  const double p2 = truncated_prime_zeta(table, {2.0, 0.0}).real();
  const double half_p1 = 0.5 * truncated_prime_zeta(table, {1.0, 0.0}).real();
  return 0.375 * p2 / (half_p1 * half_p1);
}

// The fourth cumulant of each summand w cos(phase) is -(3/8) w^4, so the
// predicted excess kurtosis of the normalized sum is minus the Lyapunov
// ratio.
inline double kurtosis_prediction(const PrimeTable& table) {
  return -lyapunov_ratio(table);
}

}  // namespace pzeta
