#include "mmbi/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mmbi/rng.hpp"

namespace mmbi {

double mean(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(samples.begin(), samples.end(), 0.0) /
         static_cast<double>(samples.size());
}

double standard_error(std::span<const double> samples) {
  if (samples.size() < 2) throw std::invalid_argument("standard error needs two samples");
  const double m = mean(samples);
  double ss = 0.0;
  for (double x : samples) ss += (x - m) * (x - m);
  const double n = static_cast<double>(samples.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

namespace {

// Linear interpolation between order statistics (Hyndman-Fan type 7).
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

Interval bootstrap_ci(std::span<const double> samples, std::size_t resamples, double level,
                      std::uint64_t seed) {
  if (samples.size() < 2) throw std::invalid_argument("bootstrap needs at least two samples");
  if (resamples == 0) throw std::invalid_argument("bootstrap needs at least one resample");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");

  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  std::vector<double> means(resamples);
  const double n = static_cast<double>(samples.size());
  for (auto& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) sum += samples[pick(rng)];
    m = sum / n;
  }
  std::sort(means.begin(), means.end());
  const double tail = (1.0 - level) / 2.0;
  return {quantile_sorted(means, tail), quantile_sorted(means, 1.0 - tail)};
}

Interval percentile_interval(std::span<const double> samples, double coverage) {
  if (samples.empty()) throw std::invalid_argument("percentile interval of an empty sample");
  if (!(coverage > 0.0 && coverage <= 1.0)) {
    throw std::invalid_argument("coverage must lie in (0, 1]");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto trim = static_cast<std::size_t>(
      std::floor(static_cast<double>(sorted.size()) * (1.0 - coverage) / 2.0 + 1e-9));
  return {sorted[trim], sorted[sorted.size() - 1 - trim]};
}

std::vector<HistogramBin> histogram(std::span<const double> samples, double low, double high,
                                    double bin_width) {
  if (!(bin_width > 0.0) || !(high > low)) throw std::invalid_argument("invalid histogram range");
  const auto bins = static_cast<std::size_t>(std::ceil((high - low) / bin_width));
  std::vector<HistogramBin> out(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    out[i] = {low + static_cast<double>(i) * bin_width,
              std::min(high, low + static_cast<double>(i + 1) * bin_width), 0};
  }
  for (double x : samples) {
    const double pos = std::floor((x - low) / bin_width);
    const auto idx = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    ++out[idx].count;
  }
  return out;
}

}  // namespace mmbi
