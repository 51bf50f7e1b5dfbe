#ifndef EQK_HEIGHTS_HPP
#define EQK_HEIGHTS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqk/error.hpp"
#include "eqk/numeric.hpp"
#include "eqk/polynomial.hpp"
#include "eqk/roots.hpp"

namespace eqk {

namespace detail {
inline void require_nonconstant(const ComplexPolynomial& p, const char* height) {
  if (p.degree() < 1) throw HeightError(height, "height undefined for constant polynomial");
}
inline void require_complete(const ComplexPolynomial& p, const RootSet& roots, const char* height) {
  if (roots.total_multiplicity() != p.degree() || roots.degree != p.degree())
    throw HeightError(height, "incomplete root set");
}
}  // namespace detail

/// h_B(P) = (1/n) log max_k |a_k| / sqrt(binom(n, k)), evaluated in log space.
inline double height_bombieri(const ComplexPolynomial& p) {
  detail::require_nonconstant(p, "h_B");
  const int n = p.degree();
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n; ++k) {
    const double a = std::abs(p[k]);
    if (a == 0.0) continue;
    best = std::max(best, std::log(a) - 0.5 * log_binomial(n, k));
  }
  return best / n;
}

/// h_FS(P) = (1/n) log|a_n| + (1/2n) sum_k log(1 + |alpha_k|^2).
inline double height_fubini_study(const ComplexPolynomial& p, const RootSet& roots) {
  detail::require_nonconstant(p, "h_FS");
  detail::require_complete(p, roots, "h_FS");
  const int n = p.degree();
  std::vector<double> terms;
  terms.reserve(roots.roots.size());
  for (const auto& r : roots.roots) terms.push_back(r.multiplicity * std::log1p(std::norm(r.value)));
  return std::log(std::abs(p.leading())) / n + pairwise_sum(terms) / (2.0 * n);
}

/// h_M(P) = (1/n) (log|a_n| + sum_k log max(1, |alpha_k|)).
inline double height_mahler(const ComplexPolynomial& p, const RootSet& roots) {
  detail::require_nonconstant(p, "h_M");
  detail::require_complete(p, roots, "h_M");
  const int n = p.degree();
  std::vector<double> terms;
  terms.reserve(roots.roots.size() + 1);
  terms.push_back(std::log(std::abs(p.leading())));
  for (const auto& r : roots.roots) terms.push_back(r.multiplicity * std::log(std::max(1.0, std::abs(r.value))));
  return pairwise_sum(terms) / n;
}

/// h_ET(P) = (1/n) log(sum_k |a_k| / sqrt|a_n a_0|).
inline double height_erdos_turan(const ComplexPolynomial& p) {
  detail::require_nonconstant(p, "h_ET");
  if (p[0] == Complex{0.0}) throw HeightError("h_ET", "h_ET requires nonzero constant term");
  const int n = p.degree();
  std::vector<double> mags;
  for (const auto& a : p.coeffs()) mags.push_back(std::abs(a));
  const double sum = pairwise_sum(mags);
  return (std::log(sum) - 0.5 * (std::log(std::abs(p.leading())) + std::log(std::abs(p[0])))) / n;
}

inline double height_fubini_study(const ComplexPolynomial& p, const RootOptions& opt = {}) {
  detail::require_nonconstant(p, "h_FS");
  return height_fubini_study(p, find_roots(p, opt));
}

inline double height_mahler(const ComplexPolynomial& p, const RootOptions& opt = {}) {
  detail::require_nonconstant(p, "h_M");
  return height_mahler(p, find_roots(p, opt));
}

struct HeightReport {
  int degree = 0;
  double h_fs = 0.0;
  double h_b = 0.0;
  double h_m = 0.0;
  double h_et = 0.0;
};

/// All four heights; throws HeightError naming the first undefined height.
inline HeightReport compute_heights(const ComplexPolynomial& p, const RootSet& roots) {
  HeightReport h;
  h.degree = p.degree();
  h.h_b = height_bombieri(p);
  h.h_fs = height_fubini_study(p, roots);
  h.h_m = height_mahler(p, roots);
  h.h_et = height_erdos_turan(p);
  return h;
}

inline nlohmann::json to_json(const HeightReport& h) {
  return {{"degree", h.degree}, {"h_b", h.h_b}, {"h_fs", h.h_fs}, {"h_m", h.h_m}, {"h_et", h.h_et}};
}

}  // namespace eqk

#endif  // EQK_HEIGHTS_HPP
