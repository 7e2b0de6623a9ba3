#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pzeta {

// Immutable after construction; consumers share it read-only.
struct PrimeTable {
  std::uint64_t limit = 0;                // inclusive sieve bound
  std::vector<std::uint32_t> primes;      // ascending, all primes <= limit
};

namespace detail {

// Odd-only sieve used for base primes up to sqrt(limit).
inline std::vector<std::uint32_t> small_primes(std::uint32_t bound) {
  std::vector<std::uint32_t> out;
  if (bound < 2) return out;
  out.push_back(2);
  std::vector<bool> composite((bound - 1) / 2 + 1, false);  // index i <-> 2i+1
  for (std::uint64_t i = 1; 2 * i + 1 <= bound; ++i) {
    if (composite[i]) continue;
    std::uint64_t p = 2 * i + 1;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t j = (p * p - 1) / 2; j < composite.size(); j += p)
      composite[j] = true;
  }
  return out;
}

}  // namespace detail

inline constexpr std::uint64_t sieve_ceiling = 4'000'000'000ULL;

// Segmented sieve of Eratosthenes over odd numbers, ~256 KiB working set
// per segment so marking stays cache-resident up to the documented
// ceiling of 4e9 (well above the 1e8 the statistics here ever need).
inline PrimeTable sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
  if (limit > sieve_ceiling)
    throw std::domain_error("sieve_primes: limit exceeds supported ceiling");

  PrimeTable table;
  table.limit = limit;
  double dl = static_cast<double>(limit);
  table.primes.reserve(
      limit >= 17 ? static_cast<std::size_t>(dl / (std::log(dl) - 1.12)) + 16
                  : 8);
  table.primes.push_back(2);

  auto root = static_cast<std::uint32_t>(std::sqrt(dl));
  while (static_cast<std::uint64_t>(root) * root > limit) --root;
  while (static_cast<std::uint64_t>(root + 1) * (root + 1) <= limit) ++root;
  const auto base = detail::small_primes(root);

  constexpr std::uint64_t kSpan = 1ULL << 19;  // numbers per segment
  std::vector<std::uint8_t> composite(kSpan / 2);
  for (std::uint64_t low = 3; low <= limit; low += kSpan) {
    std::uint64_t high = std::min(low + kSpan - 1, limit);
    std::size_t n_odd = static_cast<std::size_t>((high - low) / 2) + 1;
    std::fill(composite.begin(), composite.begin() + n_odd, 0);
    for (std::size_t b = 1; b < base.size(); ++b) {  // skip 2; odds only
      std::uint64_t p = base[b];
      std::uint64_t first = p * p;
      if (first > high) break;
      if (first < low) {
        first = ((low + p - 1) / p) * p;
        if ((first & 1) == 0) first += p;
      }
      for (std::uint64_t m = first; m <= high; m += 2 * p)
        composite[static_cast<std::size_t>((m - low) / 2)] = 1;
    }
    for (std::size_t i = 0; i < n_odd; ++i)
      if (!composite[i])
        table.primes.push_back(static_cast<std::uint32_t>(low + 2 * i));
  }
  return table;
}

// n-th prime in natural order (nth_prime(1) == 2), via the Rosser-style
// bound p_n < n(log n + log log n) for n >= 6 and a sieve to that bound.
inline std::uint64_t nth_prime(std::uint64_t n) {
  if (n < 1) throw std::domain_error("nth_prime: n must be >= 1");
  if (n <= 5) {
    constexpr std::uint32_t head[] = {2, 3, 5, 7, 11};
    return head[n - 1];
  }
  double dn = static_cast<double>(n);
  auto bound =
      static_cast<std::uint64_t>(dn * (std::log(dn) + std::log(std::log(dn)))) + 2;
  PrimeTable table = sieve_primes(bound);
  return table.primes.at(static_cast<std::size_t>(n - 1));
}

}  // namespace pzeta
