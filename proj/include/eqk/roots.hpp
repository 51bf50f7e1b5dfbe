#ifndef EQK_ROOTS_HPP
#define EQK_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqk/error.hpp"
#include "eqk/numeric.hpp"
#include "eqk/polynomial.hpp"

namespace eqk {

struct Root {
  Complex value;
  int multiplicity = 1;
};

/// Roots of a polynomial with multiplicities. `residual` is the largest
/// backward error |P(a)| / sum_k |a_k||a|^k over the returned roots.
struct RootSet {
  int degree = 0;
  std::vector<Root> roots;
  double residual = 0.0;

  int total_multiplicity() const noexcept {
    int m = 0;
    for (const auto& r : roots) m += r.multiplicity;
    return m;
  }

  /// Every root repeated according to its multiplicity.
  std::vector<Complex> flattened() const {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(degree));
    for (const auto& r : roots)
      for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.value);
    return out;
  }
};

struct RootOptions {
  double tol = 1e-12;
  int max_iter = 200;
  int restarts = 3;
};

/// Raised when the iteration does not reach the requested backward error.
class RootFindingError : public Error {
 public:
  RootFindingError(const std::string& what, std::vector<Complex> best, double residual)
      : Error(what), best_(std::move(best)), residual_(residual) {}
  const std::vector<Complex>& best_iterate() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<Complex> best_;
  double residual_;
};

namespace detail {

struct NewtonStep {
  Complex ratio;          // q(z) / q'(z)
  double backward_error;  // |q(z)| / sum |q_k| |z|^k
};

/// Newton ratio and backward error, evaluating the reversed polynomial
/// outside the unit disk so that large |z| never overflows.
inline NewtonStep newton_step(std::span<const Complex> q, Complex z) {
  const int m = static_cast<int>(q.size()) - 1;
  Complex v = 0.0, dv = 0.0;
  double scale = 0.0;
  if (std::abs(z) <= 1.0) {
    const double az = std::abs(z);
    for (int k = m; k >= 0; --k) {
      dv = dv * z + v;
      v = v * z + q[static_cast<std::size_t>(k)];
      scale = scale * az + std::abs(q[static_cast<std::size_t>(k)]);
    }
    const double be = scale > 0.0 ? std::abs(v) / scale : 0.0;
    if (dv == Complex{0.0}) return {Complex{0.0}, be};
    return {v / dv, be};
  }
  // q(z) = z^m r(w), w = 1/z, r(w) = sum_k q_k w^(m-k);  q/q' = z r / (m r - w r')
  const Complex w = 1.0 / z;
  const double aw = std::abs(w);
  for (int k = 0; k <= m; ++k) {
    dv = dv * w + v;
    v = v * w + q[static_cast<std::size_t>(k)];
    scale = scale * aw + std::abs(q[static_cast<std::size_t>(k)]);
  }
  const double be = scale > 0.0 ? std::abs(v) / scale : 0.0;
  const Complex den = static_cast<double>(m) * v - w * dv;
  if (den == Complex{0.0}) return {Complex{0.0}, be};
  return {z * v / den, be};
}

inline double backward_error(std::span<const Complex> q, Complex z) { return newton_step(q, z).backward_error; }

/// k-th derivative coefficients.
inline std::vector<Complex> derivative(std::span<const Complex> q, int k) {
  std::vector<Complex> d(q.begin(), q.end());
  for (int t = 0; t < k && d.size() > 1; ++t) {
    std::vector<Complex> nd(d.size() - 1);
    for (std::size_t i = 1; i < d.size(); ++i) nd[i - 1] = d[i] * static_cast<double>(i);
    d = std::move(nd);
  }
  if (static_cast<int>(q.size()) - 1 < k) d.assign(1, Complex{0.0});
  return d;
}

/// Fujiwara upper bound on root moduli.
inline double fujiwara_bound(std::span<const Complex> q) {
  const int m = static_cast<int>(q.size()) - 1;
  const double an = std::abs(q[static_cast<std::size_t>(m)]);
  double b = 0.0;
  for (int k = 1; k <= m; ++k) {
    double c = std::abs(q[static_cast<std::size_t>(m - k)]) / an;
    if (k == m) c *= 0.5;
    if (c > 0.0) b = std::max(b, std::pow(c, 1.0 / k));
  }
  return b > 0.0 ? 2.0 * b : 1.0;
}

/// Gauss-Seidel Aberth-Ehrlich sweeps. Returns true when every iterate
/// reached backward error <= tol (or stopped moving at working precision).
inline bool aberth(std::span<const Complex> q, std::vector<Complex>& z, const RootOptions& opt) {
  const std::size_t m = z.size();
  std::vector<char> done(m, 0);
  std::size_t remaining = m;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < opt.max_iter && remaining > 0; ++it) {
    for (std::size_t k = 0; k < m; ++k) {
      if (done[k]) continue;
      const auto step = newton_step(q, z[k]);
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == k) continue;
        const Complex d = z[k] - z[j];
        if (d != Complex{0.0}) repulsion += 1.0 / d;
      }
      const Complex denom = 1.0 - step.ratio * repulsion;
      const Complex corr = denom != Complex{0.0} ? step.ratio / denom : step.ratio;
      if (std::isfinite(corr.real()) && std::isfinite(corr.imag())) z[k] -= corr;
      if (step.backward_error <= opt.tol || std::abs(corr) <= 4.0 * kEps * std::abs(z[k])) {
        done[k] = 1;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

/// Single-linkage components of points closer than radius(i, j).
template <typename RadiusFn>
std::vector<std::vector<std::size_t>> link_clusters(const std::vector<Complex>& z, RadiusFn radius) {
  const std::size_t m = z.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (std::abs(z[i] - z[j]) <= radius(i, j)) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = find(i);
    if (slot[r] == m) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

/// Try to read a cluster of `mult` iterates as one root of that multiplicity:
/// refine the centroid as the simple root of the (mult-1)-th derivative, then
/// accept only if every lower derivative is numerically zero there.
inline bool confirm_multiple_root(std::span<const Complex> q, Complex& c, int mult, double tol) {
  const auto dq = derivative(q, mult - 1);
  for (int it = 0; it < 50; ++it) {
    const auto step = newton_step(dq, c);
    c -= step.ratio;
    if (std::abs(step.ratio) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(c))) break;
  }
  for (int j = 0; j < mult; ++j) {
    const auto d = derivative(q, j);
    const double threshold = 10.0 * mult * std::pow(tol, static_cast<double>(mult - j) / mult);
    if (backward_error(d, c) > threshold) return false;
  }
  return true;
}

}  // namespace detail

/// All roots of p by Aberth-Ehrlich iteration started on the Fujiwara circle.
inline RootSet find_roots(const ComplexPolynomial& p, const RootOptions& opt = {}) {
  const int n = p.degree();
  if (n < 1) throw InvalidInput("root finding needs degree >= 1");
  if (!(opt.tol > 0.0)) throw InvalidInput("tolerance must be positive");
  RootSet out;
  out.degree = n;

  // exact zero roots
  int zeros = 0;
  while (p[zeros] == Complex{0.0}) ++zeros;
  if (zeros > 0) out.roots.push_back({Complex{0.0}, zeros});
  std::vector<Complex> q(p.coeffs().begin() + zeros, p.coeffs().end());
  const int m = n - zeros;
  if (m == 0) return out;
  if (m == 1) {
    out.roots.push_back({-q[0] / q[1], 1});
    out.residual = detail::backward_error(q, out.roots.back().value);
    return out;
  }

  const double radius = detail::fujiwara_bound(q);
  std::vector<Complex> best;
  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<Complex> z(static_cast<std::size_t>(m));
  bool converged = false;
  for (int attempt = 0; attempt <= opt.restarts && !converged; ++attempt) {
    // irrational angular offset keeps the start configuration asymmetric
    const double offset = (std::numbers::sqrt2 - 1.0) + 1.2345 * attempt;
    const double rad = radius * (1.0 + 0.37 * attempt);
    for (int k = 0; k < m; ++k) z[static_cast<std::size_t>(k)] = std::polar(rad, 2.0 * std::numbers::pi * k / m + offset);
    converged = detail::aberth(q, z, opt);
    double res = 0.0;
    for (const auto& zk : z) res = std::max(res, detail::backward_error(q, zk));
    if (!std::isfinite(res)) res = std::numeric_limits<double>::infinity();
    if (res < best_residual) {
      best_residual = res;
      best = z;
    }
    converged = converged && res <= opt.tol;
  }
  if (!converged) {
    throw RootFindingError("root finding did not converge (residual " + format_double(best_residual) + ")",
                           std::move(best), best_residual);
  }
  z = std::move(best);

  // Iterates within max(1e-7, sqrt(tol)) always merge; wider clusters merge
  // only when the centroid is confirmed as a root of that multiplicity.
  const double merge = std::max(1e-7, std::sqrt(opt.tol));
  auto scale_of = [&](std::size_t i, std::size_t j) { return std::max({1.0, std::abs(z[i]), std::abs(z[j])}); };
  const auto coarse = detail::link_clusters(z, [&](std::size_t i, std::size_t j) { return 1e-2 * scale_of(i, j); });
  double residual = 0.0;
  for (const auto& group : coarse) {
    if (group.size() > 1) {
      Complex c = 0.0;
      for (auto i : group) c += z[i];
      c /= static_cast<double>(group.size());
      if (detail::confirm_multiple_root(q, c, static_cast<int>(group.size()), opt.tol)) {
        out.roots.push_back({c, static_cast<int>(group.size())});
        residual = std::max(residual, detail::backward_error(q, c));
        continue;
      }
    }
    std::vector<Complex> members;
    for (auto i : group) members.push_back(z[i]);
    const auto fine = detail::link_clusters(members, [&](std::size_t i, std::size_t j) {
      return merge * std::max({1.0, std::abs(members[i]), std::abs(members[j])});
    });
    for (const auto& g : fine) {
      Complex c = 0.0;
      for (auto i : g) c += members[i];
      c /= static_cast<double>(g.size());
      out.roots.push_back({c, static_cast<int>(g.size())});
      residual = std::max(residual, detail::backward_error(q, c));
    }
  }
  out.residual = residual;
  return out;
}

// ---------------------------------------------------------------------------

/// Normalized counting measure (1/n) sum of point masses at the roots.
struct EmpiricalMeasure {
  struct Atom {
    Complex point;
    int count = 1;
  };
  std::vector<Atom> atoms;
  int degree = 0;

  double weight(std::size_t i) const { return static_cast<double>(atoms.at(i).count) / degree; }

  double total() const {
    std::vector<double> w(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) w[i] = weight(i);
    return pairwise_sum(w);
  }
};

inline EmpiricalMeasure empirical_measure(const RootSet& r) {
  EmpiricalMeasure m;
  m.degree = r.degree;
  for (const auto& root : r.roots) m.atoms.push_back({root.value, root.multiplicity});
  return m;
}

/// sum_i weight_i f(atom_i), computed as (sum_i count_i f(atom_i)) / n so that
/// f == 1 integrates to exactly 1.
template <typename F>
double integrate_testfn(const EmpiricalMeasure& m, const F& f) {
  if (m.degree <= 0) throw InvalidInput("empty measure");
  std::vector<double> terms(m.atoms.size());
  for (std::size_t i = 0; i < m.atoms.size(); ++i) terms[i] = m.atoms[i].count * f(m.atoms[i].point);
  return pairwise_sum(terms) / m.degree;
}

inline nlohmann::json to_json(const RootSet& r) {
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& x : r.roots) roots.push_back({x.value.real(), x.value.imag(), x.multiplicity});
  return {{"degree", r.degree}, {"roots", roots}, {"residual", r.residual}};
}

inline RootSet root_set_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("roots") || !j["roots"].is_array()) throw InvalidInput("RootSet JSON needs \"roots\"");
  RootSet r;
  for (const auto& x : j["roots"]) {
    if (!x.is_array() || x.size() != 3) throw InvalidInput("root entry must be [re, im, mult]");
    r.roots.push_back({Complex(x[0].get<double>(), x[1].get<double>()), x[2].get<int>()});
  }
  r.degree = j.value("degree", r.total_multiplicity());
  r.residual = j.value("residual", 0.0);
  if (r.degree != r.total_multiplicity()) throw InvalidInput("multiplicities do not sum to the degree");
  return r;
}

}  // namespace eqk

#endif  // EQK_ROOTS_HPP
