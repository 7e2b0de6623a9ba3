#include <catch2/catch_amalgamated.hpp>
#include <complex>

#include "oracles.hpp"
#include "pzeta/zeta.hpp"

using namespace pzeta;
using std::complex;

static constexpr double kPi2Over6 = 1.6449340668482264365;
static constexpr double kPi4Over90 = 1.0823232337111381916;

TEST_CASE("zeta_real at classical points") {
  CHECK(zeta_real(2.0) == Catch::Approx(kPi2Over6).margin(1e-10));
  CHECK(zeta_real(4.0) == Catch::Approx(kPi4Over90).margin(1e-10));
  CHECK(zeta_real(2.0) == Catch::Approx(oracle::zeta_dirichlet(2.0)).margin(1e-10));
  CHECK(zeta_real(3.0) == Catch::Approx(oracle::zeta_dirichlet(3.0)).margin(1e-10));
  CHECK(zeta_real(1.5) == Catch::Approx(oracle::zeta_dirichlet(1.5)).margin(1e-9));
}

TEST_CASE("zeta_real domain") {
  CHECK_THROWS_AS(zeta_real(1.0), std::domain_error);
  CHECK_THROWS_AS(zeta_real(0.5), std::domain_error);
  CHECK_THROWS_AS(zeta_real(-2.0), std::domain_error);
}

TEST_CASE("zeta_complex matches real evaluation on the real axis") {
  for (double s : {1.5, 2.0, 3.0, 7.5, 20.0}) {
    auto z = zeta_complex({s, 0.0});
    CHECK(z.real() == Catch::Approx(zeta_real(s)).margin(2e-10));
    CHECK(std::abs(z.imag()) < 1e-12);
  }
}

TEST_CASE("zeta_complex against accelerated alternating-series oracle") {
  // Oracle heights stay away from 2*pi*k/log 2 where the eta-to-zeta
  // conversion factor degenerates.
  for (double im : {0.5, 2.0, 5.0, 14.134725, 21.0, 25.010858, 50.0, 99.5}) {
    for (double re : {1.0, 1.25, 2.0}) {
      complex<double> s{re, im};
      auto z = zeta_complex(s);
      auto ref = oracle::zeta_cvz(s);
      INFO("s = " << re << " + " << im << "i");
      CHECK(std::abs(z - ref) < 1e-8);
    }
  }
}

TEST_CASE("zeta_complex pole and domain errors") {
  CHECK_THROWS_AS(zeta_complex({1.0, 0.0}), singularity_error);
  CHECK_THROWS_AS(zeta_complex({0.99, 3.0}), std::domain_error);
  CHECK_THROWS_AS(zeta_complex({0.5, 14.0}), std::domain_error);
}

TEST_CASE("conjugate symmetry") {
  for (double im : {0.7, 3.3, 14.134725, 40.0}) {
    auto z = zeta_complex({1.0, im});
    auto zbar = zeta_complex({1.0, -im});
    CHECK(zbar.real() == Catch::Approx(z.real()).margin(2e-10));
    CHECK(zbar.imag() == Catch::Approx(-z.imag()).margin(2e-10));
  }
}

TEST_CASE("accuracy parameters are validated") {
  CHECK_THROWS_AS(zeta_real(2.0, {1e-13, 64}), std::invalid_argument);
  CHECK_THROWS_AS(zeta_real(2.0, {1e-10, 5}), std::invalid_argument);
  CHECK_NOTHROW(zeta_real(2.0, {1e-12, 10}));
}

TEST_CASE("log_abs_zeta_1line behavior") {
  CHECK_THROWS_AS(log_abs_zeta_1line(0.0), singularity_error);
  CHECK_THROWS_AS(log_abs_zeta_1line(1e-4), singularity_error);
  double v = log_abs_zeta_1line(14.134725);
  CHECK(v < 0.0);  // |zeta(1 + i*14.13)| < 1
  CHECK(v == Catch::Approx(std::log(std::abs(oracle::zeta_cvz({1.0, 14.134725}))))
                 .margin(1e-8));
  // Local minimum relative to deltas 0.5 away.
  CHECK(v < log_abs_zeta_1line(14.134725 - 0.5));
  CHECK(v < log_abs_zeta_1line(14.134725 + 0.5));
  // Even in delta.
  CHECK(log_abs_zeta_1line(-7.25) == Catch::Approx(log_abs_zeta_1line(7.25)).margin(1e-12));
}

TEST_CASE("monotone tail bound for integer arguments") {
  for (int n = 2; n <= 40; ++n) {
    double tail = zeta_real(static_cast<double>(n)) - 1.0;
    CHECK(tail > 0.0);
    CHECK(tail < 2.0 * std::pow(2.0, 1 - n));
  }
}

TEST_CASE("euler gamma residual identity") {
  CHECK(euler_gamma_residual() == Catch::Approx(1.0 - euler_gamma).margin(1e-8));
  // First partial term alone.
  CHECK((zeta_real(2.0) - 1.0) / 2.0 == Catch::Approx(0.3224670334).margin(1e-9));
}
