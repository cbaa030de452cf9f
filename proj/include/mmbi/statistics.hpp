#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mmbi {

struct Interval {
  double low;
  double high;

  bool contains(double x) const { return low <= x && x <= high; }
  bool overlaps(const Interval& other) const { return low <= other.high && other.low <= high; }
};

double mean(std::span<const double> samples);
double standard_error(std::span<const double> samples);

/// Percentile bootstrap interval for the mean at confidence `level`.
Interval bootstrap_ci(std::span<const double> samples, std::size_t resamples, double level,
                      std::uint64_t seed);

/// Nearest-rank interval that trims floor(n * (1 - coverage) / 2) samples from
/// each side, so it always holds at least `coverage` of the samples.
Interval percentile_interval(std::span<const double> samples, double coverage);

struct HistogramBin {
  double low;
  double high;
  std::size_t count;
};

/// Fixed-width bins covering [low, high]; values outside are clamped into the
/// end bins so the counts always sum to the sample size.
std::vector<HistogramBin> histogram(std::span<const double> samples, double low, double high,
                                    double bin_width);

}  // namespace mmbi
