#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pzeta/prime_zeta.hpp"
#include "pzeta/primes.hpp"
#include "pzeta/rng.hpp"
#include "pzeta/sampling.hpp"

using Catch::Approx;
using namespace pzeta;

namespace {

double mean_of(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sd_of(const std::vector<double>& x) {
  const double m = mean_of(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

}  // namespace

TEST_CASE("sample config validation") {
  SampleConfig ok{1e6, 10, 1, 0.5};
  REQUIRE_NOTHROW(validate(ok));

  SampleConfig bad = ok;
  bad.height_T = 0.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad.height_T = -1.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad.height_T = std::nan("");
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = ok;
  bad.n_samples = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = ok;
  bad.sigma = std::nan("");
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  PrimeTable empty;
  CHECK_THROWS_AS(sample_series(empty, ok), std::invalid_argument);
}

TEST_CASE("single prime series is a rotating term of constant modulus") {
  const PrimeTable two = sieve_primes(2);
  SampleConfig cfg{1e6, 64, 7, 0.5};
  const auto vals = sample_series(two, cfg);
  REQUIRE(vals.size() == 64);
  const double ref = std::pow(2.0, -0.5);
  for (const auto& v : vals) {
    // constant modulus up to the final rounding of |.|
    CHECK(std::abs(v) == Approx(ref).epsilon(1e-15));
  }

  // each sample equals the truncated series evaluated at the same height
  for (std::uint64_t k = 0; k < 8; ++k) {
    const double tau = cfg.height_T * (1.0 + stream_uniform01(cfg.seed, k));
    CHECK(vals[k] == truncated_prime_zeta(two, {cfg.sigma, tau}));
  }

  cfg.sigma = 1.25;
  const auto heavy = sample_series(two, cfg);
  for (const auto& v : heavy)
    CHECK(std::abs(v) == Approx(std::pow(2.0, -1.25)).epsilon(1e-15));
}

TEST_CASE("fixed seed gives bit-identical samples across runs and threads") {
  const PrimeTable table = sieve_primes(10000);
  SampleConfig cfg{1e7, 2000, 0xFEEDu, 0.5};

  const auto a = sample_series(table, cfg, 1);
  const auto b = sample_series(table, cfg, 1);
  const auto c = sample_series(table, cfg, 4);
  REQUIRE(a == b);
  REQUIRE(a == c);

  SampleConfig other = cfg;
  other.seed = 0xFEEEu;
  CHECK(sample_series(table, other, 2) != a);

  const std::vector<double> grid{0.0, 2.0, 14.13};
  const auto p1 = empirical_covariance_profile(table, cfg, grid, Part::real_part, 1);
  const auto p4 = empirical_covariance_profile(table, cfg, grid, Part::real_part, 4);
  CHECK(p1.values == p4.values);
  CHECK(p1.std_errors == p4.std_errors);

  SampleConfig ncfg = cfg;
  ncfg.n_samples = 1000;
  const auto n1 = normality_check(table, ncfg, Part::real_part, 1);
  const auto n4 = normality_check(table, ncfg, Part::real_part, 4);
  CHECK(n1.moments.mean == n4.moments.mean);
  CHECK(n1.moments.variance == n4.moments.variance);
  CHECK(n1.moments.skewness == n4.moments.skewness);
  CHECK(n1.moments.excess_kurtosis == n4.moments.excess_kurtosis);
}

TEST_CASE("sample mean of either component vanishes at scale stderr") {
  const PrimeTable table = sieve_primes(1000);
  SampleConfig cfg{1e7, 100000, 2024, 0.5};
  const auto vals = sample_series(table, cfg);

  std::vector<double> re(vals.size()), im(vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k) {
    re[k] = vals[k].real();
    im[k] = vals[k].imag();
  }
  const double n_sqrt = std::sqrt(static_cast<double>(vals.size()));
  CHECK(std::abs(mean_of(re)) < 4.0 * sd_of(re) / n_sqrt);
  CHECK(std::abs(mean_of(im)) < 4.0 * sd_of(im) / n_sqrt);
}

TEST_CASE("covariance at delta 0 estimates the exact variance") {
  const PrimeTable table = sieve_primes(10000);
  SampleConfig cfg{1e7, 30000, 91, 0.5};
  const double target = 0.5 * truncated_prime_zeta(table, {1.0, 0.0}).real();

  for (Part part : {Part::real_part, Part::imaginary_part}) {
    const auto prof =
        empirical_covariance_profile(table, cfg, {0.0}, part);
    REQUIRE(prof.values.size() == 1);
    CHECK(prof.std_errors[0] > 0.0);
    CHECK(std::abs(prof.values[0] - target) < 4.0 * prof.std_errors[0]);
  }

  // the scalar entry point is the same estimator
  CHECK(empirical_covariance(table, cfg, 0.0) ==
        empirical_covariance_profile(table, cfg, {0.0}).values[0]);
}

TEST_CASE("paired covariance tracks half the analytic curve") {
  const PrimeTable table = sieve_primes(100000);
  SampleConfig cfg{1e7, 10000, 5150, 0.5};
  const std::vector<double> grid{5.0, 14.13, 14.134725};

  std::vector<double> target(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    target[j] = 0.5 * truncated_prime_zeta(table, {1.0, grid[j]}).real();

  for (Part part : {Part::real_part, Part::imaginary_part}) {
    const auto prof = empirical_covariance_profile(table, cfg, grid, part);
    for (std::size_t j = 0; j < grid.size(); ++j)
      CHECK(std::abs(prof.values[j] - target[j]) < 4.0 * prof.std_errors[j]);
    // the trough near the first zero ordinate anti-correlates
    CHECK(prof.values[1] < 0.0);
    CHECK(prof.values[2] < 0.0);
  }
}

TEST_CASE("summands of distinct primes are uncorrelated") {
  SampleConfig cfg{1e7, 100000, 31337, 0.5};

  for (Part part : {Part::real_part, Part::imaginary_part}) {
    const auto est = summand_covariance(2, 3, cfg, part);
    CHECK(est.n == cfg.n_samples);
    CHECK(std::abs(est.value) < 4.0 * est.std_error);
  }

  // positive control: a summand against itself is its variance w^2/2
  const auto self = summand_covariance(2, 2, cfg);
  CHECK(std::abs(self.value - 0.25) < 4.0 * self.std_error);
  CHECK(self.value > 10.0 * self.std_error);

  // random pairs from a wider pool
  const PrimeTable pool = sieve_primes(1000);
  std::mt19937_64 gen(0xABCDEF);
  std::uniform_int_distribution<std::size_t> pick(0, pool.primes.size() - 1);
  SampleConfig small = cfg;
  small.n_samples = 20000;
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t i = pick(gen), j = pick(gen);
    while (j == i) j = pick(gen);
    small.seed = cfg.seed + static_cast<std::uint64_t>(trial);
    const auto est =
        summand_covariance(pool.primes[i], pool.primes[j], small);
    CHECK(std::abs(est.value) < 4.0 * est.std_error);
  }

  CHECK_THROWS_AS(summand_covariance(1, 3, cfg), std::domain_error);
}

TEST_CASE("normalized moments approach the Gaussian limit") {
  const PrimeTable table = sieve_primes(10000);
  SampleConfig cfg{1e7, 100000, 424243, 0.5};
  const auto chk = normality_check(table, cfg);

  CHECK(chk.moments.n == cfg.n_samples);
  CHECK(chk.moments.variance >= 0.0);
  CHECK(chk.scale_variance ==
        Approx(0.5 * truncated_prime_zeta(table, {1.0, 0.0}).real()));

  CHECK(std::abs(chk.moments.mean) <
        4.0 / std::sqrt(static_cast<double>(cfg.n_samples)));
  CHECK(std::abs(chk.moments.variance - 1.0) < 4.0 * chk.variance_std_error);
  CHECK(std::abs(chk.moments.skewness) < 4.0 * chk.skewness_std_error);

  const double predicted = kurtosis_prediction(table);
  CHECK(predicted < 0.0);
  CHECK(std::abs(chk.moments.excess_kurtosis - predicted) <
        3.0 * chk.kurtosis_std_error);
  // the negative fourth cumulant is resolved, not buried in noise
  CHECK(chk.moments.excess_kurtosis + 3.0 * chk.kurtosis_std_error < 0.0);

  // the same limit holds for the imaginary component
  SampleConfig imcfg = cfg;
  imcfg.n_samples = 30000;
  const auto imchk = normality_check(table, imcfg, Part::imaginary_part);
  CHECK(std::abs(imchk.moments.variance - 1.0) <
        4.0 * imchk.variance_std_error);
  CHECK(std::abs(imchk.moments.skewness) < 4.0 * imchk.skewness_std_error);

  // spec'd entry point returns the same moments
  const auto summary = normality_summary(table, cfg);
  CHECK(summary.mean == chk.moments.mean);
  CHECK(summary.excess_kurtosis == chk.moments.excess_kurtosis);
}

TEST_CASE("normality preconditions") {
  const PrimeTable table = sieve_primes(100);
  SampleConfig cfg{1e6, 1000, 5, 0.6};
  CHECK_THROWS_AS(normality_check(table, cfg), std::invalid_argument);

  cfg.sigma = 0.5;
  cfg.n_samples = 99;
  CHECK_THROWS_AS(normality_check(table, cfg), insufficient_samples_error);
  cfg.n_samples = 100;
  CHECK_NOTHROW(normality_check(table, cfg));
}

TEST_CASE("moment machinery reproduces the single-cosine distribution") {
  // With one prime the normalized sample is sqrt(2) cos(tau log p):
  // variance 1, skewness 0, excess kurtosis exactly -3/2, and the
  // influence-function standard errors have closed forms.
  const PrimeTable three{3, {3}};
  SampleConfig cfg{1e7, 100000, 99, 0.5};
  const auto chk = normality_check(three, cfg);
  const double n = static_cast<double>(cfg.n_samples);

  CHECK(std::abs(chk.moments.variance - 1.0) < 4.0 * chk.variance_std_error);
  CHECK(std::abs(chk.moments.skewness) < 4.0 * chk.skewness_std_error);
  CHECK(std::abs(chk.moments.excess_kurtosis + 1.5) <
        3.0 * chk.kurtosis_std_error);

  // Var(skewness) -> 5/(2n), Var(kurtosis) -> 5/(8n) for this distribution
  CHECK(chk.skewness_std_error == Approx(std::sqrt(2.5 / n)).epsilon(0.15));
  CHECK(chk.kurtosis_std_error == Approx(std::sqrt(0.625 / n)).epsilon(0.15));
}

TEST_CASE("lyapunov ratio decays and matches direct sums") {
  std::vector<double> ratios;
  for (double t : {1e3, 1e4, 1e5, 1e6}) {
    const PrimeTable table = sieve_primes(static_cast<std::uint64_t>(t));
    ratios.push_back(lyapunov_ratio(table));
  }
  for (double r : ratios) CHECK(r > 0.0);
  for (std::size_t i = 1; i < ratios.size(); ++i)
    CHECK(ratios[i] < ratios[i - 1]);

  // independent direct evaluation at t = 1000
  const auto primes = oracle::simple_sieve(1000);
  double s1 = 0.0, s2 = 0.0;
  for (auto p : primes) {
    const double pd = static_cast<double>(p);
    s1 += 1.0 / pd;
    s2 += 1.0 / (pd * pd);
  }
  const double expect = 0.375 * s2 / (0.25 * s1 * s1);
  CHECK(lyapunov_ratio(sieve_primes(1000)) == Approx(expect).epsilon(1e-12));

  CHECK(kurtosis_prediction(sieve_primes(1000)) == Approx(-expect).epsilon(1e-12));
  CHECK_THROWS_AS(lyapunov_ratio(sieve_primes(7)), std::domain_error);
}
