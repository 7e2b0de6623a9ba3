#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pzeta/curve.hpp"
#include "pzeta/errors.hpp"
#include "pzeta/prime_zeta.hpp"
#include "pzeta/zeta.hpp"

namespace pzeta {

// Limiting conditional law of Re P(1/2 + i(tau + delta)) given a zero on
// the critical line at height tau.
struct ConditionalGaussian {
  double mean = 0.0;
  double variance = 0.0;  // > 0
};

// mean = -Re P(1 + i*delta); variance = (1/2) log log tau.
inline ConditionalGaussian conditional_at_zero(double delta, double tau,
                                               EvalAccuracy acc = {}) {
  if (!(delta > 0.0))
    throw std::domain_error("conditional_at_zero: delta must be positive");
  if (!(tau > std::exp(1.0)))
    throw std::domain_error("conditional_at_zero: tau must exceed e");
  ConditionalGaussian g;
  g.mean = -prime_zeta_full({1.0, delta}, acc).real();
  g.variance = 0.5 * std::log(std::log(tau));
  return g;
}

// Standard normal CDF as erfc(-x/sqrt(2))/2.  libm's erfc is faithfully
// rounded, so the absolute error is far below the 1e-9 target; erfc (not
// 1 - erf) keeps the deep lower tail free of cancellation.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

// Scale meaning for the "k sigma" threshold below.
enum class SigmaConvention {
  stddev,          // sigma = sqrt(variance), the standard reading
  variance_literal // sigma = variance itself (as in some published captions)
};

// For each delta: P{ X <= -k*scale } with X ~ conditional_at_zero(delta,
// tau), k = threshold_sigmas, and scale picked by the convention.
inline Curve extreme_prob_curve(const std::vector<double>& deltas, double tau,
                                double threshold_sigmas,
                                SigmaConvention convention = SigmaConvention::stddev,
                                EvalAccuracy acc = {}) {
  if (deltas.empty())
    throw std::invalid_argument("extreme_prob_curve: empty delta grid");
  Curve curve;
  curve.deltas = deltas;
  curve.values.reserve(deltas.size());
  for (double d : deltas) {
    const ConditionalGaussian g = conditional_at_zero(d, tau, acc);
    const double sd = std::sqrt(g.variance);
    const double scale =
        convention == SigmaConvention::stddev ? sd : g.variance;
    curve.values.push_back(
        normal_cdf((-threshold_sigmas * scale - g.mean) / sd));
  }
  validate(curve);
  return curve;
}

}  // namespace pzeta
