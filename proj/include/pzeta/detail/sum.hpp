#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace pzeta::detail {

// Pairwise (binary tree) reduction of f(0..n-1).  The tree shape depends
// only on n, so the rounding pattern is reproducible; error grows like
// O(log n) ulps instead of O(n) for left-to-right accumulation.
template <class F>
double pairwise_sum(std::size_t lo, std::size_t hi, F&& f) {
  constexpr std::size_t kLeaf = 128;
  if (hi - lo <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(lo, mid, f) + pairwise_sum(mid, hi, std::forward<F>(f));
}

template <class F>
double pairwise_sum(std::size_t n, F&& f) {
  return n == 0 ? 0.0 : pairwise_sum(std::size_t{0}, n, std::forward<F>(f));
}

// Neumaier's variant of Kahan summation; used where terms arrive one at a
// time and a fixed tree is impractical.
class compensated_accumulator {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace pzeta::detail
