#ifndef EQK_SELFTEST_HPP
#define EQK_SELFTEST_HPP

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqk/ensemble.hpp"
#include "eqk/fubini.hpp"
#include "eqk/latgeo.hpp"
#include "eqk/polynomial.hpp"

namespace eqk {

struct OracleResult {
  std::string name;
  bool passed = false;
  double error = 0.0;  // observed deviation (or violation margin)
  double tolerance = 0.0;
  std::string detail;
};

struct SelftestOptions {
  int quad_radial = QuadratureRule::kDefaultRadial;
  int quad_angular = QuadratureRule::kDefaultAngular;
  int max_degree = 12;
  unsigned threads = 1;
};

/// Closed-form oracle matrix: inner products of monomial sections, the
/// log|Z_1| integral, total mass, Stokes symmetry, and lattice-point
/// sandwiches on fixed fixtures.
inline std::vector<OracleResult> run_selftest(const SelftestOptions& opt = {}) {
  std::vector<OracleResult> out;
  auto guarded = [&](const std::string& name, double tol, const std::function<OracleResult()>& body) {
    try {
      auto r = body();
      r.name = name;
      r.tolerance = tol;
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      out.push_back({name, false, 0.0, tol, std::string("error: ") + e.what()});
    }
  };
  const QuadratureRule rule(opt.quad_radial, opt.quad_angular);

  guarded("total_mass", 1e-12, [&] {
    const double e = std::abs(quadrature_total_mass(rule) - 1.0);
    return OracleResult{"", e <= 1e-12, e, 0, ""};
  });
  guarded("monomial_inner_products", 1e-8, [&] {
    double worst = 0.0;
    int worst_n = 0;
    for (int n = 0; n <= opt.max_degree; ++n) {
      const double e = gram_check(SectionLattice(n), rule, opt.threads);
      if (e > worst) {
        worst = e;
        worst_n = n;
      }
    }
    return OracleResult{"", worst <= 1e-8, worst, 0, "n <= " + std::to_string(opt.max_degree) +
                                                         ", worst at n=" + std::to_string(worst_n)};
  });
  guarded("log_Z1_integral", 1e-8, [&] {
    const double e = std::abs(quadrature_log_integral(SectionCoeffs::monomial(1, 0), rule, opt.threads) + 0.5);
    return OracleResult{"", e <= 1e-8, e, 0, "expected -1/2"};
  });
  guarded("log_Z0_integral", 1e-8, [&] {
    const double e = std::abs(quadrature_log_integral(SectionCoeffs::monomial(1, 1), rule, opt.threads) + 0.5);
    return OracleResult{"", e <= 1e-8, e, 0, "expected -1/2"};
  });
  guarded("stokes_symmetry", 1e-6, [&] {
    const std::vector<std::pair<SectionCoeffs, SectionCoeffs>> pairs = {
        {SectionCoeffs::monomial(1, 1), SectionCoeffs::monomial(1, 0)},
        {SectionCoeffs(1, {-1.0, 1.0}), SectionCoeffs(1, {1.0, 1.0})},
        {SectionCoeffs(3, {2.0, -1.0, 0.0, 1.0}), SectionCoeffs(5, {1.0, 1.0, 3.0, 0.0, -2.0, 1.0})},
    };
    double worst = 0.0;
    for (const auto& [a, b] : pairs) {
      const auto sides = stokes_symmetry_check(a, b, rule, opt.threads);
      worst = std::max(worst, std::abs(sides.lhs - sides.rhs));
    }
    return OracleResult{"", worst <= 1e-6, worst, 0, std::to_string(pairs.size()) + " pairs"};
  });
  guarded("lattice_sandwich", 0.0, [&] {
    struct Fixture {
      Lattice L;
      ConvexBody K;
    };
    Matrix skew(2, 2);
    skew << 1.0, 0.5, 0.0, 1.0;
    Matrix diag3 = Matrix::Identity(3, 3);
    diag3(2, 2) = 2.0;
    const std::vector<Fixture> fixtures = {
        {Lattice::integer(2), ConvexBody::ball(2, 2.0)},
        {Lattice(skew), ConvexBody::ball(2, 3.0)},
        {Lattice(diag3), ConvexBody::ball(3, 4.0)},
        {Lattice::integer(2), ConvexBody::box(Vector::Constant(2, 2.5))},
    };
    int violations = 0;
    for (const auto& f : fixtures) {
      const auto b = freyer_lucas_bounds(f.L, f.K);
      const double closed = static_cast<double>(count_points(f.L, f.K, false));
      const double open = static_cast<double>(count_points(f.L, f.K, true));
      if (!b.lower) ++violations;  // every fixture is chosen with lambda_d <= 2/d
      if (b.lower && *b.lower > open) ++violations;
      if (open > closed || closed > b.upper) ++violations;
    }
    return OracleResult{"", violations == 0, static_cast<double>(violations), 0,
                        std::to_string(fixtures.size()) + " fixtures"};
  });
  guarded("ball_count_Z2", 0.0, [&] {
    const auto closed = count_points(Lattice::integer(2), ConvexBody::ball(2, 2.0), false);
    const auto open = count_points(Lattice::integer(2), ConvexBody::ball(2, 2.0), true);
    const bool ok = closed == 13 && open == 9;
    return OracleResult{"", ok, ok ? 0.0 : 1.0, 0,
                        "closed " + std::to_string(closed) + ", open " + std::to_string(open)};
  });
  return out;
}

inline bool all_passed(const std::vector<OracleResult>& r) {
  return std::all_of(r.begin(), r.end(), [](const auto& x) { return x.passed; });
}

inline nlohmann::ordered_json to_json(const std::vector<OracleResult>& r) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& x : r)
    rows.push_back({{"oracle", x.name}, {"passed", x.passed}, {"error", x.error}, {"tolerance", x.tolerance},
                    {"detail", x.detail}});
  return {{"passed", all_passed(r)}, {"oracles", rows}};
}

inline std::string format_matrix(const std::vector<OracleResult>& r) {
  std::string s;
  for (const auto& x : r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-26s %-4s  err=%-10.3g tol=%-8.1g %s\n", x.name.c_str(), x.passed ? "PASS" : "FAIL",
                  x.error, x.tolerance, x.detail.c_str());
    s += buf;
  }
  return s;
}

}  // namespace eqk

#endif  // EQK_SELFTEST_HPP
