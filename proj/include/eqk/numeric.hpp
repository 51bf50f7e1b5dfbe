#ifndef EQK_NUMERIC_HPP
#define EQK_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eqk/error.hpp"

namespace eqk {

/// Largest n for which binomial(n, k) is computed exactly in 64-bit integers.
inline constexpr int kExactBinomialMax = 60;

/// Exact binomial coefficient, n <= kExactBinomialMax.
inline std::uint64_t binomial_exact(int n, int k) {
  if (n < 0 || n > kExactBinomialMax) throw InvalidInput("binomial_exact: n out of range");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  // c * (n - k + i) stays below 2^64 for n <= 60: C(60,30) * 60 < 1.8e19
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

/// log binomial(n, k); exact integers up to n = 60, lgamma beyond.
inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) throw InvalidInput("log_binomial: k out of range");
  if (n <= kExactBinomialMax) return std::log(static_cast<double>(binomial_exact(n, k)));
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// binomial(n, k) as a double (may be inexact for n > 60).
inline double binomial(int n, int k) {
  if (n <= kExactBinomialMax) return static_cast<double>(binomial_exact(n, k));
  return std::exp(log_binomial(n, k));
}

/// Pairwise (cascade) summation. The result depends only on the values and
/// their order, never on how the caller produced them.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const auto half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct MeanStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double stderr_ = 0.0;
  std::size_t count = 0;
};

inline MeanStats mean_stats(std::span<const double> v) {
  MeanStats s;
  s.count = v.size();
  if (v.empty()) return s;
  s.mean = pairwise_sum(v) / static_cast<double>(v.size());
  if (v.size() > 1) {
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - s.mean) * (v[i] - s.mean);
    s.stddev = std::sqrt(pairwise_sum(sq) / static_cast<double>(v.size() - 1));
    s.stderr_ = s.stddev / std::sqrt(static_cast<double>(v.size()));
  }
  return s;
}

namespace detail {
/// Legendre polynomial P_m(t) and its derivative.
inline std::pair<double, double> legendre(int m, double t) {
  double p0 = 1.0, p1 = t;
  for (int k = 2; k <= m; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = m * (t * p1 - p0) / (t * t - 1.0);
  return {p1, dp};
}
}  // namespace detail

/// Gauss-Legendre nodes and weights mapped to [0, 1]; weights sum to 1.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(int m) {
  if (m < 1) throw InvalidInput("gauss_legendre_unit: need at least one node");
  std::vector<double> x(m), w(m);
  if (m == 1) {
    x[0] = 0.5;
    w[0] = 1.0;
    return {std::move(x), std::move(w)};
  }
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = detail::legendre(m, t);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    const double dp = detail::legendre(m, t).second;
    const double wt = 1.0 / ((1.0 - t * t) * dp * dp);  // half of the [-1,1] weight
    x[i] = 0.5 * (1.0 - t);
    x[m - 1 - i] = 0.5 * (1.0 + t);
    w[i] = w[m - 1 - i] = wt;
  }
  return {std::move(x), std::move(w)};
}

/// SplitMix64 finalizer, used to derive independent stream seeds.
inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the stream with the given index under a base seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Locale-independent "%.17g".
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace eqk

#endif  // EQK_NUMERIC_HPP
