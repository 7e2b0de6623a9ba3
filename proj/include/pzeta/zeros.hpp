#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pzeta/errors.hpp"
#include "pzeta/parallel.hpp"

namespace pzeta {

// Imaginary parts of nontrivial zeta zeros, strictly increasing, all > 0.
struct ZeroTable {
  std::vector<double> ordinates;
};

// Parses the plain-ASCII format of the public Odlyzko tables: one
// ordinate per line, blank lines ignored.
inline ZeroTable load_zeros(std::istream& in) {
  ZeroTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(a, b - a + 1);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v))
      throw parse_error("load_zeros: not a numeric ordinate: '" + tok + "'",
                        line_no);
    if (v <= 0.0)
      throw parse_error("load_zeros: ordinate must be positive", line_no);
    if (!table.ordinates.empty() && v <= table.ordinates.back())
      throw monotonicity_error("load_zeros: ordinates must increase strictly",
                               line_no);
    table.ordinates.push_back(v);
  }
  if (table.ordinates.empty())
    throw empty_table_error("load_zeros: no ordinates in input");
  return table;
}

inline ZeroTable load_zeros_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_zeros: cannot open " + path);
  return load_zeros(in);
}

// Histogram of pairwise ordinate differences falling in [lo, hi).
struct DiffHistogram {
  double lo = 0.0, hi = 0.0, bin_width = 0.0;
  std::vector<std::uint64_t> counts;
};

// Sliding-window sweep over the sorted ordinates: for each j, only the
// k < j with difference below hi are visited, so cost is O(n * d) with d
// the mean ordinate count per window, never the O(n^2) pair set.
// Half-open bins [edge, edge + width); a difference equal to a left edge
// lands in that bin.
inline DiffHistogram diff_histogram(const ZeroTable& zeros, double lo,
                                    double hi, double bin_width,
                                    unsigned threads = 0) {
  if (!(lo >= 0.0) || !(hi > lo))
    throw std::domain_error("diff_histogram: need 0 <= lo < hi");
  if (!(bin_width > 0.0))
    throw std::domain_error("diff_histogram: bin_width must be positive");
  if (zeros.ordinates.size() < 2)
    throw std::domain_error("diff_histogram: need at least two ordinates");

  DiffHistogram hist;
  hist.lo = lo;
  hist.hi = hi;
  hist.bin_width = bin_width;
  // ceil with a relative fudge so widths that divide the range exactly in
  // real arithmetic are not pushed to an extra bin by rounding.
  const auto n_bins = static_cast<std::size_t>(
      std::ceil((hi - lo) / bin_width - 1e-9));
  hist.counts.assign(std::max<std::size_t>(n_bins, 1), 0);

  const auto& z = zeros.ordinates;
  const std::size_t n = z.size();
  constexpr std::size_t kChunk = 4096;
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> partial(n_chunks);
  parallel_chunks(n_chunks, threads, [&](std::size_t c) {
    auto& counts = partial[c];
    counts.assign(hist.counts.size(), 0);
    const std::size_t jend = std::min(n, (c + 1) * kChunk);
    for (std::size_t j = c * kChunk; j < jend; ++j) {
      for (std::size_t k = j; k-- > 0;) {
        const double d = z[j] - z[k];
        if (d >= hi) break;
        if (d < lo) continue;
        auto bin = static_cast<std::size_t>(std::floor((d - lo) / bin_width));
        if (bin >= counts.size()) bin = counts.size() - 1;
        ++counts[bin];
      }
    }
  });
  for (const auto& counts : partial)
    for (std::size_t b = 0; b < counts.size(); ++b) hist.counts[b] += counts[b];
  return hist;
}

// Mean bin count within half_width of center divided by the mean over the
// flanking bins (between half_width and window away).  Values below 1
// quantify a local deficit of differences.  A flat histogram scores 1.
inline double trough_score(const DiffHistogram& hist, double center,
                           double half_width, double window) {
  if (!(half_width > 0.0) || !(window > half_width))
    throw std::domain_error("trough_score: need window > half_width > 0");
  if (!(center - window >= hist.lo) || !(center + window <= hist.hi))
    throw std::domain_error("trough_score: window extends beyond histogram");

  double core_sum = 0.0, flank_sum = 0.0;
  std::size_t core_n = 0, flank_n = 0;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    const double mid = hist.lo + (static_cast<double>(b) + 0.5) * hist.bin_width;
    const double dist = std::abs(mid - center);
    if (dist <= half_width) {
      core_sum += static_cast<double>(hist.counts[b]);
      ++core_n;
    } else if (dist <= window) {
      flank_sum += static_cast<double>(hist.counts[b]);
      ++flank_n;
    }
  }
  if (core_n == 0 || flank_n == 0)
    throw std::domain_error("trough_score: windows too narrow for the binning");
  const double core_mean = core_sum / static_cast<double>(core_n);
  const double flank_mean = flank_sum / static_cast<double>(flank_n);
  if (flank_mean == 0.0)
    return core_mean == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return core_mean / flank_mean;
}

}  // namespace pzeta
