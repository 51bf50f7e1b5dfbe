#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "eqk/ensemble.hpp"
#include "eqk/heights.hpp"

namespace {

using eqk::BombieriFamily;
using eqk::IntPolynomial;

std::vector<std::int64_t> coeffs(const IntPolynomial& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

TEST(Family, DegreeOneRadiusZero) {
  const BombieriFamily f(1, 0.0);
  EXPECT_EQ(f.coeff_bounds(), (std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(f.cardinality(), 6);
  const auto all = eqk::enumerate_family(f, 100);
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& p : all) seen.insert(coeffs(p));
  const std::set<std::vector<std::int64_t>> want{{-1, -1}, {0, -1}, {1, -1}, {-1, 1}, {0, 1}, {1, 1}};
  EXPECT_EQ(seen, want);
  EXPECT_EQ(all.size(), 6u);
}

TEST(Family, DegreeTwoRadiusZero) {
  const BombieriFamily f(2, 0.0);
  EXPECT_EQ(f.coeff_bounds(), (std::vector<std::int64_t>{1, 1, 1}));
  EXPECT_EQ(f.cardinality(), 18);
}

TEST(Family, EmptyFamilyRejected) {
  try {
    BombieriFamily(3, -1.0);
    FAIL();
  } catch (const eqk::InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("empty family"), std::string::npos);
  }
}

TEST(Family, IntegerBoundaryKeepsExactValue) {
  // e^(2r) = 2 exactly: M = (2, floor(2 sqrt 2), 2)
  const BombieriFamily f(2, 0.5 * std::log(2.0));
  EXPECT_EQ(f.coeff_bounds(), (std::vector<std::int64_t>{2, 2, 2}));
}

TEST(Family, MembersAreExactlyTheHeightBall) {
  const BombieriFamily f(3, 0.3);
  const auto all = eqk::enumerate_family(f, 1'000'000);
  EXPECT_EQ(static_cast<std::size_t>(f.cardinality()), all.size());
  for (const auto& p : all) EXPECT_LE(eqk::height_bombieri(p), 0.3 + 1e-12);
  // one step beyond each bound leaves the ball
  const auto& m = f.coeff_bounds();
  for (std::size_t k = 0; k < m.size(); ++k) {
    std::vector<std::int64_t> c(m.size(), 0);
    c.back() = 1;
    c[k] = m[k] + 1;
    const IntPolynomial p(c);
    EXPECT_FALSE(f.contains(p));
    EXPECT_GT(eqk::height_bombieri(p), 0.3);
  }
}

TEST(Family, OdometerOrderAndShards) {
  const BombieriFamily f(2, 0.0);
  const auto all = eqk::enumerate_family(f, 100);
  EXPECT_EQ(coeffs(all[0]), (std::vector<std::int64_t>{-1, -1, -1}));
  EXPECT_EQ(coeffs(all[1]), (std::vector<std::int64_t>{0, -1, -1}));
  EXPECT_EQ(coeffs(all[3]), (std::vector<std::int64_t>{-1, 0, -1}));
  std::vector<std::vector<std::int64_t>> sharded;
  for (auto lead : eqk::family_shards(f)) {
    eqk::FamilyCursor cur(f, lead);
    while (auto p = cur.next()) sharded.push_back(coeffs(*p));
  }
  std::vector<std::vector<std::int64_t>> whole;
  for (const auto& p : all) whole.push_back(coeffs(p));
  EXPECT_EQ(sharded, whole);
  EXPECT_THROW(eqk::FamilyCursor(f, 0), eqk::InvalidInput);
}

TEST(Family, LimitErrorReportsExactCardinality) {
  const BombieriFamily f(30, 1.0);
  const std::string card = f.cardinality().str();
  EXPECT_GT(card.size(), 20u);  // beyond 2^64
  try {
    eqk::enumerate_family(f, 1000);
    FAIL();
  } catch (const eqk::InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find(card), std::string::npos);
  }
  eqk::BigInt expect = 2 * eqk::BigInt(f.coeff_bounds().back());
  for (int k = 0; k < 30; ++k) expect *= 2 * eqk::BigInt(f.coeff_bounds()[static_cast<std::size_t>(k)]) + 1;
  EXPECT_EQ(f.cardinality(), expect);
}

TEST(Family, OversizedBoundsRejected) { EXPECT_THROW(BombieriFamily(64, 1.0), eqk::InvalidInput); }

TEST(Sampling, DeterministicAndIndexAddressable) {
  const BombieriFamily f(8, 1.0);
  const auto a = eqk::sample_family(f, 50, 42), b = eqk::sample_family(f, 50, 42);
  EXPECT_EQ(a, b);
  EXPECT_EQ(eqk::sample_member(f, 42, 37), a[37]);
  EXPECT_NE(eqk::sample_family(f, 50, 43), a);
  for (const auto& p : a) EXPECT_TRUE(f.contains(p));
}

TEST(Sampling, UniformOverSixMembers) {
  const BombieriFamily f(1, 0.0);
  std::map<std::vector<std::int64_t>, int> freq;
  constexpr int kDraws = 6000;
  for (int i = 0; i < kDraws; ++i) ++freq[coeffs(eqk::sample_member(f, 9, static_cast<std::uint64_t>(i)))];
  ASSERT_EQ(freq.size(), 6u);
  const double p = 1.0 / 6.0, sigma = std::sqrt(kDraws * p * (1 - p));
  for (const auto& [k, v] : freq) EXPECT_NEAR(v, kDraws * p, 3 * sigma);
}

TEST(Sampling, ChiSquareOnLargerFamily) {
  const BombieriFamily f(2, 0.0);  // 18 members
  std::map<std::vector<std::int64_t>, int> freq;
  constexpr int kDraws = 60000;
  for (int i = 0; i < kDraws; ++i) ++freq[coeffs(eqk::sample_member(f, 77, static_cast<std::uint64_t>(i)))];
  ASSERT_EQ(freq.size(), 18u);
  const double e = kDraws / 18.0;
  double chi2 = 0.0;
  for (const auto& [k, v] : freq) chi2 += (v - e) * (v - e) / e;
  const boost::math::chi_squared dist(17);
  EXPECT_LT(chi2, boost::math::quantile(dist, 0.999));
}

TEST(SectionLattice, GramMatchesQuadrature) {
  const eqk::QuadratureRule rule;
  const eqk::SectionLattice two(2);
  EXPECT_NEAR(two.gram_diag[0], 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(two.gram_diag[1], 1.0 / 6.0, 1e-16);
  EXPECT_LT(eqk::gram_check(two, rule), 1e-8);
  const eqk::SectionLattice zero(0);
  EXPECT_DOUBLE_EQ(zero.gram_diag[0], 1.0);
  EXPECT_LT(eqk::gram_check(zero, rule), 1e-12);
  EXPECT_LT(eqk::gram_check(eqk::SectionLattice(10), rule), 1e-8);
  EXPECT_LT(eqk::gram_check(eqk::SectionLattice(6, 0.2), rule), 1e-8);
}

}  // namespace
