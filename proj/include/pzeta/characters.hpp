#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "pzeta/detail/sum.hpp"
#include "pzeta/detail/trig.hpp"
#include "pzeta/errors.hpp"
#include "pzeta/primes.hpp"
#include "pzeta/zeta.hpp"

namespace pzeta {

// Dense table of a Dirichlet character: values[r] = chi(r) for residues
// r in [0, modulus); zero exactly on residues sharing a factor with the
// modulus, unit modulus elsewhere, completely multiplicative.
struct DirichletCharacter {
  std::int64_t modulus = 0;
  std::vector<std::complex<double>> values;
};

// Root of unity written as a reduced fraction of a full turn.
struct UnitPhase {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

namespace detail {

inline UnitPhase normalize(UnitPhase p) {
  if (p.den <= 0) throw construction_error("character phase: denominator must be positive");
  p.num %= p.den;
  if (p.num < 0) p.num += p.den;
  const std::int64_t g = std::gcd(p.num, p.den);
  return {p.num / (g ? g : 1), p.den / (g ? g : 1)};
}

inline UnitPhase add(UnitPhase a, UnitPhase b) {
  return normalize({a.num * b.den + b.num * a.den, a.den * b.den});
}

inline bool equal(UnitPhase a, UnitPhase b) {
  return a.num == b.num && a.den == b.den;
}

}  // namespace detail

// Builds the character table from images of generators of the unit group
// mod modulus.  Phases are tracked as exact rationals, so an image whose
// order does not divide its generator's order is detected as a hard
// inconsistency, not a numeric near-miss.  The generators must span the
// whole unit group.
inline DirichletCharacter build_character(
    std::int64_t modulus, const std::map<std::int64_t, UnitPhase>& generator_images) {
  if (modulus < 2) throw construction_error("build_character: modulus must be >= 2");
  if (generator_images.empty())
    throw construction_error("build_character: no generator images");

  std::map<std::int64_t, UnitPhase> gens;
  for (const auto& [g, phase] : generator_images) {
    const std::int64_t r = ((g % modulus) + modulus) % modulus;
    if (std::gcd(r, modulus) != 1)
      throw construction_error("build_character: generator shares a factor with the modulus");
    gens[r] = detail::normalize(phase);
  }

  // Breadth-first closure of {1} under multiplication by the generators.
  std::vector<char> known(static_cast<std::size_t>(modulus), 0);
  std::vector<UnitPhase> phase(static_cast<std::size_t>(modulus));
  known[1] = 1;
  phase[1] = {0, 1};
  std::vector<std::int64_t> frontier{1};
  while (!frontier.empty()) {
    std::vector<std::int64_t> next;
    for (std::int64_t r : frontier) {
      for (const auto& [g, w] : gens) {
        const std::int64_t rg = (r * g) % modulus;
        const UnitPhase q = detail::add(phase[static_cast<std::size_t>(r)], w);
        if (!known[static_cast<std::size_t>(rg)]) {
          known[static_cast<std::size_t>(rg)] = 1;
          phase[static_cast<std::size_t>(rg)] = q;
          next.push_back(rg);
        } else if (!detail::equal(phase[static_cast<std::size_t>(rg)], q)) {
          throw construction_error(
              "build_character: inconsistent generator images (order violation)");
        }
      }
    }
    frontier = std::move(next);
  }
  for (std::int64_t r = 0; r < modulus; ++r)
    if (std::gcd(r, modulus) == 1 && !known[static_cast<std::size_t>(r)])
      throw construction_error(
          "build_character: generators do not generate the unit group");

  DirichletCharacter chi;
  chi.modulus = modulus;
  chi.values.assign(static_cast<std::size_t>(modulus), {0.0, 0.0});
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (std::int64_t r = 0; r < modulus; ++r) {
    if (std::gcd(r, modulus) != 1) continue;
    const UnitPhase q = phase[static_cast<std::size_t>(r)];
    // Quarter-turn phases have exactly representable values; snapping
    // them keeps real characters exactly real.
    if (q.den == 1) {
      chi.values[static_cast<std::size_t>(r)] = {1.0, 0.0};
    } else if (q.den == 2) {
      chi.values[static_cast<std::size_t>(r)] = {-1.0, 0.0};
    } else if (q.den == 4) {
      chi.values[static_cast<std::size_t>(r)] = {0.0, q.num == 1 ? 1.0 : -1.0};
    } else {
      const double angle =
          two_pi * static_cast<double>(q.num) / static_cast<double>(q.den);
      chi.values[static_cast<std::size_t>(r)] = {std::cos(angle), std::sin(angle)};
    }
  }
  return chi;
}

// The unique non-principal characters for moduli 3 and 4, and the
// order-3 character mod 7 sending the primitive root 3 to e^{2*pi*i/3}
// (the default meaning of "the" cubic character mod 7 here).
inline DirichletCharacter nonprincipal_mod3() {
  return build_character(3, {{2, {1, 2}}});
}
inline DirichletCharacter nonprincipal_mod4() {
  return build_character(4, {{3, {1, 2}}});
}
inline DirichletCharacter order3_mod7() {
  return build_character(7, {{3, {1, 3}}});
}

// P_chi,t(s) = sum over table primes of chi(p) p^{-s}; primes dividing
// the modulus contribute nothing.
inline std::complex<double> character_prime_series(const DirichletCharacter& chi,
                                                   const PrimeTable& table,
                                                   std::complex<double> s) {
  if (table.primes.empty())
    throw std::invalid_argument("character_prime_series: empty prime table");
  const double sigma = s.real(), tau = s.imag();
  const std::size_t n = table.primes.size();
  constexpr std::size_t kBlock = 128;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_re(n_blocks), block_im(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    double re = 0.0, im = 0.0;
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const std::uint32_t p = table.primes[i];
      const std::complex<double> c =
          chi.values[static_cast<std::size_t>(p % chi.modulus)];
      if (c == std::complex<double>(0.0, 0.0)) continue;
      const double w = std::pow(static_cast<double>(p), -sigma);
      double cr = 1.0, ci = 0.0;
      if (tau != 0.0) {
        const double ph = detail::reduce_2pi(tau * std::log(static_cast<double>(p)));
        cr = std::cos(ph);
        ci = -std::sin(ph);  // p^{-i tau}
      }
      re += w * (c.real() * cr - c.imag() * ci);
      im += w * (c.real() * ci + c.imag() * cr);
    }
    block_re[b] = re;
    block_im[b] = im;
  }
  return {detail::pairwise_sum(n_blocks, [&](std::size_t b) { return block_re[b]; }),
          detail::pairwise_sum(n_blocks, [&](std::size_t b) { return block_im[b]; })};
}

namespace detail {

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

// 1 - gamma + sum of 1/p over primes dividing the modulus: the one-line
// deviation bound for the character analogue of the covariance curve.
inline double character_error_bound(const DirichletCharacter& chi) {
  double sum = 0.0;
  for (std::int64_t p : detail::prime_factors(chi.modulus))
    sum += 1.0 / static_cast<double>(p);
  return 1.0 - euler_gamma + sum;
}

// (1/2) sum of 1/p^2 over primes dividing the modulus: the truncation
// mean-squared-error offset contributed by the dropped prime terms.
inline double character_truncation_mse(const DirichletCharacter& chi) {
  double sum = 0.0;
  for (std::int64_t p : detail::prime_factors(chi.modulus))
    sum += 1.0 / static_cast<double>(p * p);
  return 0.5 * sum;
}

// chi(p) for every prime in the table, in table order; feeds the
// coefficient slot of the sampling kernels.
inline std::vector<std::complex<double>> character_coefficients(
    const DirichletCharacter& chi, const PrimeTable& table) {
  std::vector<std::complex<double>> out;
  out.reserve(table.primes.size());
  for (std::uint32_t p : table.primes)
    out.push_back(chi.values[static_cast<std::size_t>(p % chi.modulus)]);
  return out;
}

// Copy of the table without the primes dividing the modulus.  Since
// |chi(p)| = 1 away from the modulus, the character covariance curve is
// the plain covariance curve over this filtered table.
inline PrimeTable character_prime_table(const DirichletCharacter& chi,
                                        const PrimeTable& table) {
  PrimeTable out;
  out.limit = table.limit;
  out.primes.reserve(table.primes.size());
  for (std::uint32_t p : table.primes)
    if (chi.modulus % p != 0) out.primes.push_back(p);
  return out;
}

}  // namespace pzeta
