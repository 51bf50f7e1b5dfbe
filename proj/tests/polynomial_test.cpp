#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "eqk/polynomial.hpp"

namespace {

using eqk::Complex;

TEST(IntPolynomial, RejectsZeroLeadingCoefficient) {
  EXPECT_THROW(eqk::IntPolynomial({1, 0}), eqk::InvalidInput);
  EXPECT_THROW(eqk::IntPolynomial(std::vector<std::int64_t>{}), eqk::InvalidInput);
  const eqk::IntPolynomial p({1, 0, 3});
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.leading(), 3);
}

TEST(ComplexPolynomial, HornerEvaluation) {
  const eqk::ComplexPolynomial p(eqk::IntPolynomial({1, 0, 1}));
  EXPECT_EQ(p(Complex(0, 1)), Complex(0.0));
  EXPECT_EQ(p(Complex(2, 0)), Complex(5.0));
}

TEST(Sections, PolynomialEmbedsOnMonomialBasis) {
  const eqk::ComplexPolynomial p(eqk::IntPolynomial({1, 0, 1}));
  const auto s = eqk::poly_to_section(p);
  EXPECT_EQ(s.n, 2);
  EXPECT_EQ(s.coeffs, (std::vector<Complex>{1.0, 0.0, 1.0}));
}

TEST(Sections, ZeroExtensionToHigherDegree) {
  const eqk::ComplexPolynomial p(eqk::IntPolynomial({4, 5}));
  const auto s = eqk::poly_to_section(p, 3);
  EXPECT_EQ(s.coeffs, (std::vector<Complex>{4.0, 5.0, 0.0, 0.0}));
  const auto back = eqk::section_to_poly(s);
  EXPECT_EQ(back.degree(), 1);
  EXPECT_THROW(eqk::poly_to_section(p, 0), eqk::InvalidInput);
}

TEST(Sections, InvariantsChecked) {
  EXPECT_THROW(eqk::SectionCoeffs(2, {1.0, 2.0}), eqk::InvalidInput);
  EXPECT_THROW(eqk::SectionCoeffs(1, {1.0, 2.0}, -0.1), eqk::InvalidInput);
  EXPECT_THROW(eqk::section_to_poly(eqk::SectionCoeffs(1, {0.0, 0.0})), eqk::InvalidInput);
  EXPECT_EQ(eqk::SectionCoeffs::monomial(3, 1).monomial_index(), 1);
}

TEST(PolynomialJson, RoundTripInteger) {
  const eqk::IntPolynomial p({-3, 0, 7, 2});
  const auto parsed = eqk::polynomial_from_json(eqk::to_json(p));
  ASSERT_TRUE(parsed.integer.has_value());
  EXPECT_EQ(*parsed.integer, p);
}

TEST(PolynomialJson, ComplexPairsAndDegreeCheck) {
  const auto j = nlohmann::json::parse(R"({"degree": 1, "coeffs": [[0, 1], 2]})");
  const auto parsed = eqk::polynomial_from_json(j);
  EXPECT_FALSE(parsed.integer.has_value());
  EXPECT_EQ(parsed.complex[0], Complex(0, 1));
  EXPECT_THROW(eqk::polynomial_from_json(nlohmann::json::parse(R"({"degree": 3, "coeffs": [1, 2]})")),
               eqk::InvalidInput);
  EXPECT_THROW(eqk::polynomial_from_json(nlohmann::json::parse(R"({"coeffs": ["x"]})")), eqk::InvalidInput);
  EXPECT_THROW(eqk::polynomial_from_json(nlohmann::json::parse(R"([1, 2])")), eqk::InvalidInput);
}

TEST(SectionJson, CarriesEpsilonAndAllowsZeroTop) {
  const auto s = eqk::section_from_json(nlohmann::json::parse(R"({"coeffs": [1, 0, 0], "epsilon": 0.25})"));
  EXPECT_EQ(s.n, 2);
  EXPECT_DOUBLE_EQ(s.epsilon, 0.25);
  const auto again = eqk::section_from_json(eqk::to_json(s));
  EXPECT_EQ(again.coeffs, s.coeffs);
  EXPECT_DOUBLE_EQ(again.epsilon, 0.25);
}

}  // namespace
