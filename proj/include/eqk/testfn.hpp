#ifndef EQK_TESTFN_HPP
#define EQK_TESTFN_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "eqk/error.hpp"
#include "eqk/fubini.hpp"
#include "eqk/polynomial.hpp"

namespace eqk {

/// Continuous f: C -> R with a finite limit at infinity, together with its
/// integral against the Fubini-Study measure and its Haar average on |z| = 1.
struct TestFunction {
  std::string id;
  std::function<double(Complex)> eval;
  double limit_at_infinity = 0.0;
  double fs_integral = 0.0;
  double circle_haar_average = 0.0;
  std::string provenance;  // "closed-form" or "quadrature"

  /// Beyond |z| = 1e12 the limit value is used directly.
  double operator()(Complex z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e12) return limit_at_infinity;
    return eval(z);
  }
};

/// Functions whose reference integrals have closed forms. Radial f(|z|)
/// integrate as f against du on [0, 1] with u = |z|^2 / (1 + |z|^2).
inline const std::vector<TestFunction>& test_function_catalog() {
  static const std::vector<TestFunction> catalog = {
      {"one", [](Complex) { return 1.0; }, 1.0, 1.0, 1.0, "closed-form"},
      {"inv1p2", [](Complex z) { return 1.0 / (1.0 + std::norm(z)); }, 0.0, 0.5, 0.5, "closed-form"},
      {"inv1p2sq",
       [](Complex z) {
         const double q = 1.0 + std::norm(z);
         return 1.0 / (q * q);
       },
       0.0, 1.0 / 3.0, 0.25, "closed-form"},
      {"abs2frac", [](Complex z) { return std::norm(z) / (1.0 + std::norm(z)); }, 1.0, 0.5, 0.5, "closed-form"},
      // odd under z -> -z, so both references vanish
      {"refrac", [](Complex z) { return z.real() / (1.0 + std::norm(z)); }, 0.0, 0.0, 0.0, "closed-form"},
  };
  return catalog;
}

inline const TestFunction& find_test_function(const std::string& id) {
  for (const auto& f : test_function_catalog())
    if (f.id == id) return f;
  throw InvalidInput("unknown test function '" + id + "'");
}

/// A user-supplied function: its references are computed numerically.
inline TestFunction register_test_function(std::string id, std::function<double(Complex)> eval, double limit,
                                           const QuadratureRule& rule = {}) {
  TestFunction f{std::move(id), std::move(eval), limit, 0.0, 0.0, "quadrature"};
  f.fs_integral = integrate_fs(rule, [&](const SpherePoint& x) { return f(x.z()); });
  constexpr int kCircle = 4096;
  std::vector<double> vals(kCircle);
  for (int k = 0; k < kCircle; ++k) vals[k] = f(std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / kCircle));
  f.circle_haar_average = pairwise_sum(vals) / kCircle;
  return f;
}

}  // namespace eqk

#endif  // EQK_TESTFN_HPP
