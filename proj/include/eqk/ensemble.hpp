#ifndef EQK_ENSEMBLE_HPP
#define EQK_ENSEMBLE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "eqk/error.hpp"
#include "eqk/fubini.hpp"
#include "eqk/numeric.hpp"
#include "eqk/polynomial.hpp"

namespace eqk {

using BigInt = boost::multiprecision::cpp_int;

/// Largest coefficient bound we sample or enumerate (2M + 1 must fit in int64).
inline constexpr std::int64_t kMaxCoeffBound = std::int64_t{1} << 61;

/// P_{n,r}: integer polynomials of exact degree n with h_B <= r, i.e.
/// |a_k| <= M_k = floor(e^(n r) sqrt(binom(n, k))) for every k.
class BombieriFamily {
 public:
  BombieriFamily(int n, double r) : n_(n), r_(r) {
    if (n < 1) throw InvalidInput("family degree must be >= 1");
    bounds_.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      const long double x = std::exp(static_cast<long double>(n) * r + 0.5L * log_binomial(n, k));
      long double m = std::floor(x);
      // an exact integer boundary can land just below in floating point
      if (x < 1e15L && x - m > 1.0L - 1e-9L) m += 1.0L;
      if (m > static_cast<long double>(kMaxCoeffBound))
        throw InvalidInput("coefficient bound exceeds the 64-bit range (n=" + std::to_string(n) + ")");
      bounds_[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(m);
    }
    if (bounds_.back() == 0) throw InvalidInput("empty family: no admissible leading coefficient");
    cardinality_ = 2 * BigInt(bounds_.back());
    for (int k = 0; k < n; ++k) cardinality_ *= 2 * BigInt(bounds_[static_cast<std::size_t>(k)]) + 1;
  }

  int degree() const noexcept { return n_; }
  double radius() const noexcept { return r_; }
  const std::vector<std::int64_t>& coeff_bounds() const noexcept { return bounds_; }
  const BigInt& cardinality() const noexcept { return cardinality_; }

  bool contains(const IntPolynomial& p) const {
    if (p.degree() != n_) return false;
    for (int k = 0; k <= n_; ++k) {
      const auto a = p[k];
      const auto m = bounds_[static_cast<std::size_t>(k)];
      if (a > m || a < -m) return false;
    }
    return true;
  }

 private:
  int n_;
  double r_;
  std::vector<std::int64_t> bounds_;
  BigInt cardinality_;
};

/// Odometer over (a_0, ..., a_n), a_0 fastest, each from -M_k to M_k, with
/// a_n = 0 skipped. A shard fixes the leading coefficient.
class FamilyCursor {
 public:
  explicit FamilyCursor(const BombieriFamily& f, std::optional<std::int64_t> lead = std::nullopt)
      : bounds_(f.coeff_bounds()), lead_(lead) {
    const auto n = bounds_.size() - 1;
    if (lead_ && (*lead_ == 0 || *lead_ > bounds_[n] || *lead_ < -bounds_[n]))
      throw InvalidInput("shard leading coefficient is not admissible");
    cur_.resize(bounds_.size());
    for (std::size_t k = 0; k < n; ++k) cur_[k] = -bounds_[k];
    cur_[n] = lead_ ? *lead_ : -bounds_[n];
  }

  std::optional<IntPolynomial> next() {
    if (done_) return std::nullopt;
    IntPolynomial out(cur_);
    advance();
    return out;
  }

 private:
  void advance() {
    const auto n = bounds_.size() - 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (cur_[k] < bounds_[k]) {
        ++cur_[k];
        return;
      }
      cur_[k] = -bounds_[k];
    }
    if (lead_ || cur_[n] == bounds_[n]) {
      done_ = true;
      return;
    }
    ++cur_[n];
    if (cur_[n] == 0) ++cur_[n];
  }

  std::vector<std::int64_t> bounds_;
  std::optional<std::int64_t> lead_;
  std::vector<std::int64_t> cur_;
  bool done_ = false;
};

/// Every member exactly once, in odometer order.
inline std::vector<IntPolynomial> enumerate_family(const BombieriFamily& f, std::uint64_t limit) {
  if (f.cardinality() > limit)
    throw InvalidInput("family cardinality " + f.cardinality().str() + " exceeds limit " + std::to_string(limit));
  std::vector<IntPolynomial> out;
  out.reserve(f.cardinality().convert_to<std::size_t>());
  FamilyCursor cur(f);
  while (auto p = cur.next()) out.push_back(std::move(*p));
  return out;
}

/// Admissible leading coefficients, for sharding enumeration across workers.
inline std::vector<std::int64_t> family_shards(const BombieriFamily& f) {
  std::vector<std::int64_t> out;
  const auto m = f.coeff_bounds().back();
  for (std::int64_t a = -m; a <= m; ++a)
    if (a != 0) out.push_back(a);
  return out;
}

/// Sample number `index` under `seed`: a uniform member drawn from its own
/// stream, so any subset of indices can be generated in any order.
inline IntPolynomial sample_member(const BombieriFamily& f, std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 gen(derive_seed(seed, index));
  const auto& m = f.coeff_bounds();
  const auto n = m.size() - 1;
  std::vector<std::int64_t> a(m.size());
  for (std::size_t k = 0; k < n; ++k) a[k] = std::uniform_int_distribution<std::int64_t>(-m[k], m[k])(gen);
  // uniform on {-M_n..M_n} \ {0}
  const auto v = std::uniform_int_distribution<std::int64_t>(1, 2 * m[n])(gen);
  a[n] = v <= m[n] ? v - m[n] - 1 : v - m[n];
  return IntPolynomial(std::move(a));
}

inline std::vector<IntPolynomial> sample_family(const BombieriFamily& f, std::size_t count, std::uint64_t seed) {
  std::vector<IntPolynomial> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_member(f, seed, i));
  return out;
}

// ---------------------------------------------------------------------------

/// H^0(P^1, O(n)) with its L^2 structure: the Gram matrix of the monomial
/// basis is diagonal with entries e^(-2 epsilon n) / ((n+1) binom(n, j)).
struct SectionLattice {
  int n = 0;
  double epsilon = 0.0;
  std::vector<double> gram_diag;

  explicit SectionLattice(int degree, double eps = 0.0) : n(degree), epsilon(eps) {
    if (n < 0) throw InvalidInput("section lattice degree must be >= 0");
    for (int j = 0; j <= n; ++j) gram_diag.push_back(std::exp(-2.0 * eps * n) / ((n + 1) * binomial(n, j)));
  }
};

/// Largest deviation between the stated Gram matrix and its quadrature.
inline double gram_check(const SectionLattice& sl, const QuadratureRule& rule, unsigned threads = 1) {
  const auto g = gram_quadrature(sl.n, sl.epsilon, rule, threads);
  double worst = 0.0;
  for (int j = 0; j <= sl.n; ++j)
    for (int k = 0; k <= sl.n; ++k) {
      const double expect = j == k ? sl.gram_diag[static_cast<std::size_t>(j)] : 0.0;
      worst = std::max(worst, std::abs(g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] - expect));
    }
  return worst;
}

}  // namespace eqk

#endif  // EQK_ENSEMBLE_HPP
