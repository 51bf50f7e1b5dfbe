#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "eqk/numeric.hpp"
#include "eqk/parallel.hpp"

namespace {

TEST(Binomial, ExactSmallValues) {
  EXPECT_EQ(eqk::binomial_exact(0, 0), 1u);
  EXPECT_EQ(eqk::binomial_exact(5, 2), 10u);
  EXPECT_EQ(eqk::binomial_exact(60, 30), 118264581564861424ull);
  EXPECT_DOUBLE_EQ(eqk::binomial(12, 6), 924.0);
}

TEST(Binomial, LogMatchesExactAcrossSwitch) {
  for (int n : {10, 59, 60, 61, 100}) {
    for (int k = 0; k <= n; k += 7) {
      const double expect = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      EXPECT_NEAR(eqk::log_binomial(n, k), expect, 1e-9 * std::max(1.0, expect)) << n << "," << k;
    }
  }
}

TEST(PairwiseSum, OrderIndependentOnPermutation) {
  std::vector<double> v;
  for (int i = 0; i < 1000; ++i) v.push_back(1.0 / (i + 1));
  const double a = eqk::pairwise_sum(v);
  double naive = 0.0;
  for (double x : v) naive += x;
  EXPECT_NEAR(a, naive, 1e-12);
  EXPECT_DOUBLE_EQ(eqk::pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(MeanStats, StdErrorIsStddevOverRootN) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto s = eqk::mean_stats(v);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.stddev, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_NEAR(s.stderr_, s.stddev / 2.0, 1e-15);
  EXPECT_EQ(s.count, 4u);
}

class GaussLegendre : public ::testing::TestWithParam<int> {};

TEST_P(GaussLegendre, IntegratesPolynomialsExactly) {
  const int m = GetParam();
  const auto [x, w] = eqk::gauss_legendre_unit(m);
  ASSERT_EQ(static_cast<int>(x.size()), m);
  for (int deg = 0; deg <= 2 * m - 1; ++deg) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i) acc += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], deg);
    EXPECT_NEAR(acc, 1.0 / (deg + 1), 1e-13) << "degree " << deg;
  }
  for (double xi : x) {
    EXPECT_GT(xi, 0.0);
    EXPECT_LT(xi, 1.0);
  }
}

INSTANTIATE_TEST_SUITE_P(NodeCounts, GaussLegendre, ::testing::Values(1, 2, 5, 16, 32));

TEST(GaussLegendre, LargeRuleIntegratesSmoothFunction) {
  const auto [x, w] = eqk::gauss_legendre_unit(256);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::cos(x[i]);
  EXPECT_NEAR(acc, std::sin(1.0), 1e-14);
}

TEST(Seeds, DerivedStreamsDifferAndRepeat) {
  EXPECT_EQ(eqk::derive_seed(7, 3), eqk::derive_seed(7, 3));
  EXPECT_NE(eqk::derive_seed(7, 3), eqk::derive_seed(7, 4));
  EXPECT_NE(eqk::derive_seed(7, 3), eqk::derive_seed(8, 3));
}

TEST(FormatDouble, RoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, std::numbers::pi, 1e-300, -2.5e17}) {
    EXPECT_EQ(std::stod(eqk::format_double(x)), x);
  }
}

TEST(ParallelFor, VisitsEveryIndexOnceAndPropagatesErrors) {
  std::vector<int> hits(1000, 0);
  eqk::parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(eqk::parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 5) throw std::runtime_error("boom");
                                 }),
               std::runtime_error);
}

}  // namespace
