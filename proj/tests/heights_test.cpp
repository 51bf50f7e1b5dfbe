#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eqk/heights.hpp"

namespace {

using eqk::Complex;
const double kLog2 = std::log(2.0);

eqk::ComplexPolynomial ip(std::vector<std::int64_t> c) { return eqk::ComplexPolynomial(eqk::IntPolynomial(std::move(c))); }

TEST(Bombieri, ClosedForms) {
  EXPECT_NEAR(eqk::height_bombieri(ip({2, 0, 2})), 0.5 * kLog2, 1e-15);
  EXPECT_NEAR(eqk::height_bombieri(ip({1, 1, 1})), 0.0, 1e-15);
  // |a_k|^2 / C(5, k) over {1, 49/10, 9}: the maximum is 9
  EXPECT_NEAR(eqk::height_bombieri(ip({1, 0, -7, 0, 0, 3})), std::log(9.0) / 10.0, 1e-15);
  EXPECT_THROW(eqk::height_bombieri(ip({4})), eqk::HeightError);
}

TEST(FubiniStudy, ClosedForms) {
  EXPECT_NEAR(eqk::height_fubini_study(ip({0, 1})), 0.0, 1e-15);
  EXPECT_NEAR(eqk::height_fubini_study(ip({1, 0, 1})), 0.5 * kLog2, 1e-14);
  EXPECT_NEAR(eqk::height_fubini_study(ip({-2, 2})), 1.5 * kLog2, 1e-14);
}

TEST(FubiniStudy, IncompleteRootSetRejected) {
  const auto p = ip({1, 0, 1});
  auto roots = eqk::find_roots(p);
  roots.roots.pop_back();
  try {
    eqk::height_fubini_study(p, roots);
    FAIL();
  } catch (const eqk::HeightError& e) {
    EXPECT_EQ(e.height(), "h_FS");
    EXPECT_NE(std::string(e.what()).find("incomplete root set"), std::string::npos);
  }
}

TEST(Mahler, ClosedForms) {
  EXPECT_NEAR(eqk::height_mahler(ip({-1, 0, 0, 0, 0, 0, 1})), 0.0, 1e-13);
  EXPECT_NEAR(eqk::height_mahler(ip({-2, 2})), kLog2, 1e-14);
  EXPECT_NEAR(eqk::height_mahler(ip({0, -2, 1})), 0.5 * kLog2, 1e-14);
}

TEST(ErdosTuran, ClosedForms) {
  EXPECT_NEAR(eqk::height_erdos_turan(ip({1, 0, 1})), 0.5 * kLog2, 1e-15);
  EXPECT_NEAR(eqk::height_erdos_turan(ip({1, 1})), kLog2, 1e-15);
  EXPECT_NEAR(eqk::height_erdos_turan(ip({2, 3, 2})), 0.5 * std::log(3.5), 1e-15);
  try {
    eqk::height_erdos_turan(ip({0, 1}));
    FAIL();
  } catch (const eqk::HeightError& e) {
    EXPECT_EQ(e.height(), "h_ET");
    EXPECT_NE(std::string(e.what()).find("nonzero constant term"), std::string::npos);
  }
}

TEST(Heights, ConstantPolynomialNamesHeight) {
  try {
    eqk::height_mahler(ip({3}));
    FAIL();
  } catch (const eqk::HeightError& e) {
    EXPECT_EQ(e.height(), "h_M");
    EXPECT_NE(std::string(e.what()).find("constant polynomial"), std::string::npos);
  }
}

// Properties over random integer polynomials.
class HeightProperties : public ::testing::TestWithParam<int> {
 protected:
  std::vector<std::int64_t> random_coeffs(std::mt19937_64& gen, int n) {
    std::uniform_int_distribution<std::int64_t> d(-9, 9);
    std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1);
    do {
      for (auto& a : c) a = d(gen);
    } while (c.front() == 0 || c.back() == 0);
    return c;
  }
};

TEST_P(HeightProperties, ScalingReciprocityConjugationOrdering) {
  const int n = GetParam();
  std::mt19937_64 gen(static_cast<std::uint64_t>(n) * 101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_coeffs(gen, n);
    const auto p = ip(c);
    const auto h = eqk::compute_heights(p, eqk::find_roots(p));

    // h(lambda P) = h(P) + log|lambda| / n; h_ET is scale invariant
    std::vector<Complex> scaled(c.begin(), c.end());
    const Complex lambda(3.0, -4.0);
    for (auto& a : scaled) a *= lambda;
    const eqk::ComplexPolynomial q(scaled);
    const auto hq = eqk::compute_heights(q, eqk::find_roots(q));
    const double shift = std::log(5.0) / n;
    EXPECT_NEAR(hq.h_fs, h.h_fs + shift, 1e-10);
    EXPECT_NEAR(hq.h_b, h.h_b + shift, 1e-12);
    EXPECT_NEAR(hq.h_m, h.h_m + shift, 1e-10);
    EXPECT_NEAR(hq.h_et, h.h_et, 1e-12);

    // X^n P(1/X) has the same heights
    std::vector<std::int64_t> rev(c.rbegin(), c.rend());
    const auto r = ip(rev);
    const auto hr = eqk::compute_heights(r, eqk::find_roots(r));
    EXPECT_NEAR(hr.h_fs, h.h_fs, 1e-10);
    EXPECT_NEAR(hr.h_b, h.h_b, 1e-14);
    EXPECT_NEAR(hr.h_m, h.h_m, 1e-10);
    EXPECT_NEAR(hr.h_et, h.h_et, 1e-14);

    // complex conjugation of a complex polynomial
    std::vector<Complex> twisted(c.begin(), c.end());
    twisted[1] += Complex(0, 2);
    std::vector<Complex> conj_twisted(twisted);
    for (auto& a : conj_twisted) a = std::conj(a);
    const eqk::ComplexPolynomial t(twisted), tc(conj_twisted);
    EXPECT_NEAR(eqk::height_fubini_study(t), eqk::height_fubini_study(tc), 1e-10);
    EXPECT_NEAR(eqk::height_mahler(t), eqk::height_mahler(tc), 1e-10);

    // h_M <= h_FS <= h_B + 1/2
    EXPECT_LE(h.h_m, h.h_fs + 1e-12);
    EXPECT_LE(h.h_fs, h.h_b + 0.5 + 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Degrees, HeightProperties, ::testing::Values(1, 2, 5, 12, 30));

TEST(HeightReport, JsonFields) {
  const auto p = ip({1, 0, 1});
  const auto j = eqk::to_json(eqk::compute_heights(p, eqk::find_roots(p)));
  EXPECT_EQ(j["degree"], 2);
  EXPECT_NEAR(j["h_fs"].get<double>(), 0.5 * kLog2, 1e-14);
  EXPECT_NEAR(j["h_b"].get<double>(), 0.0, 1e-15);
}

}  // namespace
