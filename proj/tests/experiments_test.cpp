#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eqk/experiments.hpp"
#include "eqk/testfn.hpp"

namespace {

using eqk::Verdict;

eqk::ExperimentOptions fast_options(unsigned threads = 1) {
  eqk::ExperimentOptions o;
  o.threads = threads;
  o.quad_radial = 64;
  o.quad_angular = 64;
  o.check_every = 10;
  return o;
}

TEST(TestFunctions, ConstantIntegratesExactly) {
  const auto& one = eqk::find_test_function("one");
  const eqk::BombieriFamily f(20, 0.5);
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto roots = eqk::find_roots(eqk::ComplexPolynomial(eqk::sample_member(f, 3, i)));
    EXPECT_EQ(eqk::integrate_testfn(eqk::empirical_measure(roots), one) - one.fs_integral, 0.0);
  }
}

TEST(TestFunctions, CatalogReferencesMatchQuadrature) {
  const eqk::QuadratureRule rule(256, 256);
  for (const auto& f : eqk::test_function_catalog()) {
    const double q = eqk::integrate_fs(rule, [&](const eqk::SpherePoint& x) { return f(x.z()); });
    EXPECT_NEAR(q, f.fs_integral, 1e-10) << f.id;
    const auto numeric = eqk::register_test_function(f.id + "-copy", f.eval, f.limit_at_infinity, rule);
    EXPECT_NEAR(numeric.circle_haar_average, f.circle_haar_average, 1e-12) << f.id;
    EXPECT_EQ(numeric.provenance, "quadrature");
  }
}

TEST(TestFunctions, LimitAtInfinity) {
  for (const auto& f : eqk::test_function_catalog()) {
    const double far = std::abs(f.eval({1e6, 1e6}) - f.limit_at_infinity);
    EXPECT_LT(far, 1e-5) << f.id;
    EXPECT_LT(std::abs(f.eval({1e2, 0.0}) - f.limit_at_infinity), 0.02) << f.id;
    EXPECT_EQ(f({std::numeric_limits<double>::infinity(), 0.0}), f.limit_at_infinity);
  }
}

TEST(TestFunctions, UnknownId) { EXPECT_THROW(eqk::find_test_function("nope"), eqk::InvalidInput); }

TEST(TestFunctions, RegisteredRadialFunction) {
  // f = u^2 integrates to 1/3 against du
  const auto f = eqk::register_test_function(
      "u2", [](eqk::Complex z) { const double u = std::norm(z) / (1 + std::norm(z)); return u * u; }, 1.0);
  EXPECT_NEAR(f.fs_integral, 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(f.circle_haar_average, 0.25, 1e-12);
}

TEST(Verdicts, LadderRules) {
  using Row = eqk::LadderRow;
  std::vector<std::string> notes;
  EXPECT_EQ(eqk::ladder_verdict({Row{8, 100, 0.2, 0.001, {}}, Row{16, 100, 0.1, 0.001, {}},
                                 Row{32, 100, 0.05, 0.001, {}}},
                                notes),
            Verdict::Pass);
  EXPECT_FALSE(notes.empty());
  notes.clear();
  EXPECT_EQ(eqk::ladder_verdict({Row{8, 100, 0.1, 0.001, {}}, Row{16, 100, 0.2, 0.001, {}}}, notes), Verdict::Fail);
  notes.clear();
  // decreasing but not halved
  EXPECT_EQ(eqk::ladder_verdict({Row{8, 100, 0.2, 0.001, {}}, Row{16, 100, 0.15, 0.001, {}}}, notes), Verdict::Fail);
  notes.clear();
  // halved overall, middle step within noise
  EXPECT_EQ(eqk::ladder_verdict({Row{8, 100, 0.2, 0.01, {}}, Row{16, 100, 0.19, 0.01, {}},
                                 Row{32, 100, 0.05, 0.01, {}}},
                                notes),
            Verdict::Flag);
  notes.clear();
  EXPECT_EQ(eqk::ladder_verdict({Row{8, 100, 0.2, 0.01, {}}}, notes), Verdict::Flag);
  notes.clear();
  EXPECT_EQ(eqk::ladder_verdict({Row{8, 100, 0.0, 0.0, {}}, Row{16, 100, 0.0, 0.0, {}}}, notes), Verdict::Pass);
}

TEST(Experiments, HeightConvergenceSmall) {
  const auto r = eqk::experiment_height_convergence({4, 16}, 0.5, 200, 11, fast_options());
  ASSERT_EQ(r.ladder.size(), 2u);
  EXPECT_EQ(r.ladder[0].samples, 200u);
  EXPECT_GT(r.ladder[0].mean, r.ladder[1].mean);
  EXPECT_EQ(r.checks["sup_violations"], 0);
  EXPECT_LT(r.checks["quadrature_max_error"].get<double>(), 1e-5);
  EXPECT_EQ(r.checks["quadrature_checked"], 40);
  EXPECT_NE(r.verdict, Verdict::Fail);
}

TEST(Experiments, InputValidation) {
  EXPECT_THROW(eqk::experiment_height_convergence({8, 4}, 0.5, 10, 1), eqk::InvalidInput);
  EXPECT_THROW(eqk::experiment_height_convergence({4}, 0.0, 10, 1), eqk::InvalidInput);
  EXPECT_THROW(eqk::experiment_height_convergence({4}, 0.5, 1, 1), eqk::InvalidInput);
  EXPECT_THROW(eqk::experiment_condition_b({1}, 100, 1), eqk::InvalidInput);
  EXPECT_THROW(eqk::build_sequence("bogus", {2}, 0.5, 1), eqk::InvalidInput);
}

TEST(Experiments, ReportsIndependentOfThreads) {
  const auto& f = eqk::find_test_function("inv1p2");
  const auto a = eqk::experiment_testfn_convergence({4, 8}, 0.5, f, 120, 5, fast_options(1));
  const auto b = eqk::experiment_testfn_convergence({4, 8}, 0.5, f, 120, 5, fast_options(3));
  EXPECT_EQ(eqk::to_json(a).dump(), eqk::to_json(b).dump());
  EXPECT_EQ(eqk::to_csv(a), eqk::to_csv(b));
  const auto ca = eqk::experiment_condition_b({2, 3}, 20000, 9, fast_options(1));
  const auto cb = eqk::experiment_condition_b({2, 3}, 20000, 9, fast_options(4));
  EXPECT_EQ(eqk::to_json(ca).dump(), eqk::to_json(cb).dump());
}

TEST(Experiments, CsvLayout) {
  const auto r = eqk::experiment_condition_b({2, 3}, 1000, 1);
  const auto csv = eqk::to_csv(r);
  EXPECT_EQ(csv.rfind("# experiment: condition-b\n# config: {", 0), 0u);
  EXPECT_NE(csv.find("\ndegree,samples,mean,stderr,bound,ratio\n2,1000,"), std::string::npos);
  EXPECT_NE(csv.find("# verdict: "), std::string::npos);
  const auto j = eqk::to_json(r);
  EXPECT_EQ(j["experiment"], "condition-b");
  EXPECT_EQ(j["ladder"].size(), 2u);
  EXPECT_TRUE(j["ladder"][0].contains("bound"));
}

TEST(Experiments, XnPlusOneCriterionIsConstant) {
  const auto& f = eqk::find_test_function("inv1p2");
  const auto seq = eqk::build_sequence("xn1", {4, 16, 64}, 0.5, 0);
  const auto e = eqk::experiment_sequence_criterion(seq, f);
  for (const auto& x : e) {
    EXPECT_NEAR(x.h_fs, 0.5 * std::log(2.0), 1e-9);
    EXPECT_NEAR(x.h_b, 0.0, 1e-15);
    EXPECT_NEAR(x.criterion, 0.5 - 0.5 * std::log(2.0), 1e-9);
    EXPECT_NEAR(x.deviation, 0.0, 1e-9);  // roots on |z| = 1 where f = 1/2 = its FS integral
  }
  const auto r = eqk::experiment_sequence("xn1", {4, 16, 64}, 0.5, f, 0);
  EXPECT_EQ(r.verdict, Verdict::Flag);
}

TEST(Experiments, MonomialSequenceHasZeroFsHeight) {
  const auto& f = eqk::find_test_function("inv1p2");
  std::vector<eqk::ComplexPolynomial> seq;
  for (int n : {2, 5, 9}) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
    c.back() = 1;
    seq.emplace_back(eqk::IntPolynomial(c));
  }
  for (const auto& x : eqk::experiment_sequence_criterion(seq, f)) {
    EXPECT_DOUBLE_EQ(x.h_fs, 0.0);
    EXPECT_DOUBLE_EQ(x.h_b, 0.0);
    EXPECT_NEAR(x.deviation, 0.5, 1e-15);  // all mass at 0 where f = 1
  }
}

TEST(Experiments, ShiftedSequenceBuilds) {
  const auto seq = eqk::build_sequence("shifted", {4, 8}, 0.5, 3);
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq[1].degree(), 8);
  EXPECT_NEAR(std::abs(seq[1](eqk::Complex{2.0})), 0.0, 1e-9);
}

TEST(Experiments, BiluSmall) {
  const auto& f = eqk::find_test_function("inv1p2sq");
  const auto r = eqk::experiment_bilu_contrast({16}, 0.5, f, 400, 2, fast_options());
  ASSERT_EQ(r.ladder.size(), 1u);
  EXPECT_NEAR(r.ladder[0].extra["unit_roots_mean"].get<double>(), 0.25, 1e-12);
  EXPECT_GT(r.ladder[0].mean, 0.28);
  const auto flat = eqk::experiment_bilu_contrast({16}, 0.5, eqk::find_test_function("inv1p2"), 50, 2, fast_options());
  EXPECT_EQ(flat.verdict, Verdict::Flag);
}

TEST(Experiments, ConditionBTwoDimensions) {
  const auto r = eqk::experiment_condition_b({2}, 200000, 4);
  // polar midpoint reference for the unit disk with u = e_1
  constexpr int kR = 2000, kT = 2000;
  double ref = 0.0;
  for (int i = 0; i < kR; ++i) {
    const double rho = (i + 0.5) / kR;
    for (int k = 0; k < kT; ++k) {
      const double th = 2 * std::numbers::pi * (k + 0.5) / kT;
      ref += std::abs(std::log(std::abs(rho * std::cos(th)))) * rho;
    }
  }
  ref *= (1.0 / kR) * (2 * std::numbers::pi / kT) / std::numbers::pi;
  EXPECT_NEAR(r.ladder[0].mean, ref, 4 * r.ladder[0].stderr_ + 2e-3);
  EXPECT_LE(r.ladder[0].mean, 1.0 + 2.0 * std::log(2.0));
}

}  // namespace
