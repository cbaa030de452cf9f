#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "mmbi/statistics.hpp"

using namespace mmbi;

TEST_CASE("mean and standard error") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(x) == 2.5);
  CHECK(standard_error(x) == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK_THROWS_AS(mean(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(standard_error(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("bootstrap_ci") {
  SUBCASE("all-equal samples") {
    const std::vector<double> x(50, 7.25);
    const auto ci = bootstrap_ci(x, 1000, 0.95, 1);
    CHECK(ci.low == 7.25);
    CHECK(ci.high == 7.25);
  }
  SUBCASE("contains the sample mean and is reproducible") {
    std::mt19937_64 rng(3);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> x(300);
    for (auto& v : x) v = e(rng);
    const auto a = bootstrap_ci(x, 2000, 0.95, 5);
    const auto b = bootstrap_ci(x, 2000, 0.95, 5);
    CHECK(a.low == b.low);
    CHECK(a.high == b.high);
    CHECK(a.contains(mean(x)));
    const auto narrow = bootstrap_ci(x, 2000, 0.5, 5);
    CHECK(narrow.low >= a.low);
    CHECK(narrow.high <= a.high);
  }
  SUBCASE("width at the scale of 1e4 chain runs") {
    // sd chosen so that the normal-theory 95% width is 24 at n = 1e4.
    const double sd = 24.0 / (2.0 * 1.959963984540054) * 100.0;
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal(3287.0, sd);
    std::vector<double> x(10000);
    for (auto& v : x) v = normal(rng);
    const auto ci = bootstrap_ci(x, 10000, 0.95, 6);
    const double width = ci.high - ci.low;
    MESSAGE("bootstrap width " << width);
    CHECK(width == doctest::Approx(24.0).epsilon(0.1));
    CHECK(ci.contains(mean(x)));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(bootstrap_ci(std::vector<double>{}, 10, 0.95, 1), std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_ci(std::vector<double>{1.0}, 10, 0.95, 1), std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_ci(std::vector<double>{1.0, 2.0}, 0, 0.95, 1), std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_ci(std::vector<double>{1.0, 2.0}, 10, 1.0, 1), std::invalid_argument);
  }
}

TEST_CASE("percentile_interval") {
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>((i * 7919) % 1000);
  const auto iv = percentile_interval(x, 0.8);
  CHECK(iv.low == 100.0);
  CHECK(iv.high == 899.0);
  CHECK(percentile_interval(x, 1.0).low == 0.0);
  CHECK(percentile_interval(x, 1.0).high == 999.0);

  std::mt19937_64 rng(8);
  for (std::size_t n : {1u, 2u, 7u, 10u, 33u, 101u}) {
    std::vector<double> y(n);
    for (auto& v : y) v = std::uniform_real_distribution<double>()(rng);
    const auto p = percentile_interval(y, 0.8);
    const auto inside = std::count_if(y.begin(), y.end(), [&](double v) { return p.contains(v); });
    CHECK(static_cast<double>(inside) >= 0.8 * static_cast<double>(n));
  }
  CHECK_THROWS_AS(percentile_interval(std::vector<double>{}, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(percentile_interval(x, 0.0), std::invalid_argument);
}

TEST_CASE("histogram") {
  const std::vector<double> x{0.0, 99.9, 100.0, 250.0, 1000.0, -5.0, 2000.0};
  const auto h = histogram(x, 0.0, 1000.0, 100.0);
  REQUIRE(h.size() == 10);
  CHECK(h[0].low == 0.0);
  CHECK(h[0].high == 100.0);
  CHECK(h[9].high == 1000.0);
  CHECK(h[0].count == 3);
  CHECK(h[1].count == 1);
  CHECK(h[2].count == 1);
  CHECK(h[9].count == 2);
  std::size_t total = 0;
  for (const auto& b : h) total += b.count;
  CHECK(total == x.size());

  const auto ragged = histogram(x, 0.0, 950.0, 100.0);
  CHECK(ragged.size() == 10);
  CHECK(ragged.back().high == 950.0);
  CHECK_THROWS_AS(histogram(x, 0.0, 1000.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(histogram(x, 10.0, 10.0, 1.0), std::invalid_argument);
}
