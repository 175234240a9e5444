#ifndef ODECOND_STATS_HPP
#define ODECOND_STATS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "odecond/types.hpp"

namespace odecond {

// Nearest-rank percentile of a sorted sample: x_(ceil(p/100 * N)), 1-indexed.
inline double percentile_sorted(const std::vector<double>& sorted, double p) {
  require(!sorted.empty(), errc::bad_input, "percentile of an empty sample");
  require(p > 0.0 && p <= 100.0, errc::bad_input, "percentile must be in (0, 100]");
  const std::size_t rank = static_cast<std::size_t>(std::ceil(p / 100.0 * sorted.size()));
  return sorted[std::max<std::size_t>(rank, 1) - 1];
}

struct StatSummary {
  std::size_t count = 0;
  double min = 0.0, max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  std::array<double, 9> deciles{};  // P10, P20, ..., P90
  double p99 = 0.0;
};

inline StatSummary summarize(std::vector<double> xs) {
  require(!xs.empty(), errc::bad_input, "summary of an empty sample");
  StatSummary s;
  s.count = xs.size();
  double acc = 0.0;
  for (double x : xs) acc += x;
  s.mean = acc / static_cast<double>(xs.size());
  std::sort(xs.begin(), xs.end());
  s.min = xs.front();
  s.max = xs.back();
  s.median = percentile_sorted(xs, 50.0);
  for (int d = 1; d <= 9; ++d) s.deciles[d - 1] = percentile_sorted(xs, 10.0 * d);
  s.p99 = percentile_sorted(xs, 99.0);
  return s;
}

// Fraction of the sample strictly above a threshold.
inline double fraction_above(const std::vector<double>& xs, double threshold) {
  require(!xs.empty(), errc::bad_input, "fraction of an empty sample");
  std::size_t c = 0;
  for (double x : xs)
    if (x > threshold) ++c;
  return static_cast<double>(c) / static_cast<double>(xs.size());
}

}  // namespace odecond

#endif
