#ifndef EQK_FUBINI_HPP
#define EQK_FUBINI_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "eqk/error.hpp"
#include "eqk/numeric.hpp"
#include "eqk/parallel.hpp"
#include "eqk/polynomial.hpp"
#include "eqk/roots.hpp"

namespace eqk {

/// A point of P^1 given in one of the two standard affine charts:
/// z = Z_0/Z_1 (chart at zero) or w = Z_1/Z_0 (chart at infinity).
struct SpherePoint {
  Complex coord{};
  bool infinity_chart = false;

  static SpherePoint at(Complex z) {
    if (std::abs(z) <= 1.0) return {z, false};
    return {1.0 / z, true};
  }
  static SpherePoint infinity() { return {Complex{0.0}, true}; }

  bool is_infinity() const noexcept { return infinity_chart && coord == Complex{0.0}; }
  /// Affine coordinate; infinite at the point at infinity.
  Complex z() const {
    if (!infinity_chart) return coord;
    if (coord == Complex{0.0}) return {std::numeric_limits<double>::infinity(), 0.0};
    return 1.0 / coord;
  }
};

namespace detail {

/// Value of the local polynomial representing s in the point's chart:
/// sum a_j z^j at zero, sum a_j w^(n-j) at infinity.
inline Complex chart_value(const SectionCoeffs& s, const SpherePoint& x) {
  Complex v = 0.0;
  if (!x.infinity_chart) {
    for (int j = s.n; j >= 0; --j) v = v * x.coord + s.coeffs[static_cast<std::size_t>(j)];
  } else {
    for (int j = 0; j <= s.n; ++j) v = v * x.coord + s.coeffs[static_cast<std::size_t>(j)];
  }
  return v;
}

/// Value, first and second derivative of the chart polynomial.
inline void chart_derivs(const SectionCoeffs& s, bool infinity_chart, Complex t, Complex& v, Complex& d1,
                         Complex& d2) {
  v = d1 = d2 = 0.0;
  auto step = [&](Complex a) {
    d2 = d2 * t + 2.0 * d1;
    d1 = d1 * t + v;
    v = v * t + a;
  };
  if (!infinity_chart) {
    for (int j = s.n; j >= 0; --j) step(s.coeffs[static_cast<std::size_t>(j)]);
  } else {
    for (int j = 0; j <= s.n; ++j) step(s.coeffs[static_cast<std::size_t>(j)]);
  }
}

}  // namespace detail

/// log |s|_{FS, epsilon} at a point; -infinity at zeros of s.
inline double log_fs_norm_at(const SectionCoeffs& s, const SpherePoint& x) {
  const Complex v = detail::chart_value(s, x);
  return std::log(std::abs(v)) - 0.5 * s.n * std::log1p(std::norm(x.coord)) - s.epsilon * s.n;
}

/// |s|_{FS, epsilon}(z) = e^(-epsilon n) |sum a_j Z_0^j Z_1^(n-j)| / (|Z_0|^2 + |Z_1|^2)^(n/2).
inline double fs_norm_at(const SectionCoeffs& s, const SpherePoint& x) { return std::exp(log_fs_norm_at(s, x)); }
inline double fs_norm_at(const SectionCoeffs& s, Complex z) { return fs_norm_at(s, SpherePoint::at(z)); }

// ---------------------------------------------------------------------------
// Quadrature against c_1(O(1)). With u = r^2/(1+r^2) the curvature form
// becomes du dtheta / 2pi on [0,1] x [0,2pi): Gauss-Legendre in u, midpoint
// trapezoid in theta (the offset keeps nodes off the real axis).

struct QuadratureRule {
  std::vector<double> u;
  std::vector<double> weight;
  int angular = 0;

  static constexpr int kDefaultRadial = 256;
  static constexpr int kDefaultAngular = 512;

  QuadratureRule() : QuadratureRule(kDefaultRadial, kDefaultAngular) {}
  QuadratureRule(int radial, int angular_nodes) : angular(angular_nodes) {
    if (radial < 1 || angular_nodes < 1) throw InvalidInput("quadrature needs at least one node per direction");
    std::tie(u, weight) = gauss_legendre_unit(radial);
  }

  int radial() const noexcept { return static_cast<int>(u.size()); }

  /// Node (i, k) as a point in the better-conditioned chart.
  SpherePoint node(std::size_t i, int k) const {
    const double theta = 2.0 * std::numbers::pi * (k + 0.5) / angular;
    const double ui = u[i];
    if (ui <= 0.5) return {std::polar(std::sqrt(ui / (1.0 - ui)), theta), false};
    return {std::polar(std::sqrt((1.0 - ui) / ui), -theta), true};
  }
};

/// Integral of f(SpherePoint) against c_1; parallel over radial nodes.
template <typename F>
double integrate_fs(const QuadratureRule& rule, const F& f, unsigned threads = 1) {
  std::vector<double> ring(rule.u.size());
  parallel_for(rule.u.size(), threads, [&](std::size_t i) {
    std::vector<double> vals(static_cast<std::size_t>(rule.angular));
    for (int k = 0; k < rule.angular; ++k) vals[static_cast<std::size_t>(k)] = f(rule.node(i, k));
    ring[i] = rule.weight[i] * pairwise_sum(vals) / rule.angular;
  });
  return pairwise_sum(ring);
}

template <typename F>
Complex integrate_fs_complex(const QuadratureRule& rule, const F& f, unsigned threads = 1) {
  std::vector<double> re(rule.u.size()), im(rule.u.size());
  parallel_for(rule.u.size(), threads, [&](std::size_t i) {
    std::vector<double> vr(static_cast<std::size_t>(rule.angular)), vi(static_cast<std::size_t>(rule.angular));
    for (int k = 0; k < rule.angular; ++k) {
      const Complex v = f(rule.node(i, k));
      vr[static_cast<std::size_t>(k)] = v.real();
      vi[static_cast<std::size_t>(k)] = v.imag();
    }
    re[i] = rule.weight[i] * pairwise_sum(vr) / rule.angular;
    im[i] = rule.weight[i] * pairwise_sum(vi) / rule.angular;
  });
  return {pairwise_sum(re), pairwise_sum(im)};
}

/// Total c_1 mass, 1 for any sane rule.
inline double quadrature_total_mass(const QuadratureRule& rule) {
  return integrate_fs(rule, [](const SpherePoint&) { return 1.0; });
}

// ---------------------------------------------------------------------------
// L^2 geometry

namespace detail {
inline void require_compatible(const SectionCoeffs& s, const SectionCoeffs& t) {
  if (s.n != t.n) throw InvalidInput("sections have different degrees");
  if (s.epsilon != t.epsilon) throw InvalidInput("sections carry different metrics");
}
}  // namespace detail

/// <s, t> = e^(-2 epsilon n) / (n+1) sum_j conj(a_j) b_j / binom(n, j).
inline Complex l2_inner(const SectionCoeffs& s, const SectionCoeffs& t) {
  detail::require_compatible(s, t);
  const int n = s.n;
  Complex acc = 0.0;
  for (int j = 0; j <= n; ++j)
    acc += std::conj(s.coeffs[static_cast<std::size_t>(j)]) * t.coeffs[static_cast<std::size_t>(j)] /
           binomial(n, j);
  return acc * std::exp(-2.0 * s.epsilon * n) / static_cast<double>(n + 1);
}

inline double l2_norm(const SectionCoeffs& s) { return std::sqrt(l2_inner(s, s).real()); }

/// The same inner product computed by quadrature of h_FS(s, t) c_1.
inline Complex l2_inner_quadrature(const SectionCoeffs& s, const SectionCoeffs& t, const QuadratureRule& rule,
                                   unsigned threads = 1) {
  detail::require_compatible(s, t);
  const double metric = std::exp(-2.0 * s.epsilon * s.n);
  return integrate_fs_complex(
      rule,
      [&](const SpherePoint& x) {
        const Complex a = detail::chart_value(s, x), b = detail::chart_value(t, x);
        return std::conj(a) * b * std::pow(1.0 + std::norm(x.coord), -s.n);
      },
      threads) * metric;
}

/// Gram matrix of the monomial basis S_0^n..S_n^n by quadrature, in one pass
/// over the nodes: entry (j, k) is the quadrature of <S_j^n, S_k^n>.
inline std::vector<std::vector<Complex>> gram_quadrature(int n, double epsilon, const QuadratureRule& rule,
                                                         unsigned threads = 1) {
  if (n < 0) throw InvalidInput("degree must be >= 0");
  const auto dim = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<Complex>> ring(rule.u.size(), std::vector<Complex>(dim * dim));
  parallel_for(rule.u.size(), threads, [&](std::size_t i) {
    std::vector<Complex> basis(dim), acc(dim * dim);
    for (int k = 0; k < rule.angular; ++k) {
      const auto x = rule.node(i, k);
      const double scale = std::pow(1.0 + std::norm(x.coord), -0.5 * n);
      // chart values of S_j: z^j at zero, w^(n-j) at infinity
      Complex pw = scale;
      for (std::size_t j = 0; j < dim; ++j) {
        basis[x.infinity_chart ? dim - 1 - j : j] = pw;
        pw *= x.coord;
      }
      for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) acc[a * dim + b] += std::conj(basis[a]) * basis[b];
    }
    for (std::size_t e = 0; e < dim * dim; ++e) ring[i][e] = acc[e] * (rule.weight[i] / rule.angular);
  });
  const double metric = std::exp(-2.0 * epsilon * n);
  std::vector<std::vector<Complex>> g(dim, std::vector<Complex>(dim));
  std::vector<double> re(rule.u.size()), im(rule.u.size());
  for (std::size_t e = 0; e < dim * dim; ++e) {
    for (std::size_t i = 0; i < rule.u.size(); ++i) {
      re[i] = ring[i][e].real();
      im[i] = ring[i][e].imag();
    }
    g[e / dim][e % dim] = Complex(pairwise_sum(re), pairwise_sum(im)) * metric;
  }
  return g;
}

// ---------------------------------------------------------------------------
// sup norm

struct SupOptions {
  int grid_radial = 512;
  int grid_angular = 512;
  int refine_steps = 20;
  int candidates = 8;
};

/// sup of |S_j^n|_FS: e^(-epsilon n) sqrt(j^j (n-j)^(n-j) / n^n), with 0^0 = 1.
inline double monomial_sup_norm(int n, int j, double epsilon = 0.0) {
  auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  return std::exp(0.5 * (xlogx(j) + xlogx(n - j) - xlogx(n)) - epsilon * n);
}

namespace detail {

/// Newton ascent on log|s|^2_FS inside one chart, starting at t0. The chart
/// formula is the same in both charts since the metric is symmetric.
inline double refine_sup(const SectionCoeffs& s, bool infinity_chart, Complex t, int steps) {
  auto value = [&](Complex c) {
    Complex v, d1, d2;
    chart_derivs(s, infinity_chart, c, v, d1, d2);
    return std::log(std::norm(v)) - s.n * std::log1p(std::norm(c));
  };
  double f = value(t);
  for (int it = 0; it < steps; ++it) {
    Complex v, d1, d2;
    chart_derivs(s, infinity_chart, t, v, d1, d2);
    if (v == Complex{0.0}) break;
    const double q = 1.0 + std::norm(t);
    // g = d/dz of log|S|^2 - n log(1+|z|^2); A = dg/dz, B = dg/dzbar
    const Complex g = d1 / v - static_cast<double>(s.n) * std::conj(t) / q;
    const Complex a = (d2 * v - d1 * d1) / (v * v) + static_cast<double>(s.n) * std::conj(t) * std::conj(t) / (q * q);
    const double b = -s.n / (q * q);
    const double det = std::norm(a) - b * b;
    Complex delta;
    if (std::abs(det) > 1e-300) {
      delta = (-g * std::conj(a) + b * std::conj(g)) / det;
    } else {
      delta = std::conj(g) * 1e-3;  // gradient direction
    }
    bool improved = false;
    for (int h = 0; h < 30; ++h) {
      const Complex cand = t + delta;
      const double fc = value(cand);
      if (fc >= f) {
        t = cand;
        improved = fc > f;
        f = fc;
        break;
      }
      // fall back to a gradient step when Newton heads downhill
      delta = (h == 0) ? std::conj(g) * (0.1 * q * q / std::max(1, s.n)) : delta * 0.5;
    }
    if (!improved) break;
  }
  return f;
}

}  // namespace detail

/// ||s||_sup over P^1: closed form for monomials, grid search plus local
/// Newton refinement otherwise.
inline double sup_norm(const SectionCoeffs& s, const SupOptions& opt = {}) {
  if (s.is_zero()) return 0.0;
  if (auto j = s.monomial_index())
    return std::abs(s.coeffs[static_cast<std::size_t>(*j)]) * monomial_sup_norm(s.n, *j, s.epsilon);

  struct Cand {
    double logv;
    SpherePoint x;
  };
  std::vector<Cand> best;
  auto offer = [&](const SpherePoint& x) {
    const double lv = log_fs_norm_at(s, x);
    if (!std::isfinite(lv)) return;
    if (static_cast<int>(best.size()) < opt.candidates) {
      best.push_back({lv, x});
    } else {
      auto worst = std::min_element(best.begin(), best.end(), [](auto& l, auto& r) { return l.logv < r.logv; });
      if (lv > worst->logv) *worst = {lv, x};
    }
  };
  offer(SpherePoint::at(Complex{0.0}));
  offer(SpherePoint::infinity());
  for (int i = 0; i < opt.grid_radial; ++i) {
    const double u = (i + 0.5) / opt.grid_radial;
    for (int k = 0; k < opt.grid_angular; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / opt.grid_angular;
      if (u <= 0.5)
        offer({std::polar(std::sqrt(u / (1.0 - u)), theta), false});
      else
        offer({std::polar(std::sqrt((1.0 - u) / u), -theta), true});
    }
  }
  double log_sup = -std::numeric_limits<double>::infinity();
  for (const auto& c : best) {
    const double half_log_sq = 0.5 * detail::refine_sup(s, c.x.infinity_chart, c.x.coord, opt.refine_steps);
    log_sup = std::max({log_sup, c.logv + s.epsilon * s.n, half_log_sq});
  }
  return std::exp(log_sup - s.epsilon * s.n);
}

/// ||s||_sup / ||s||, at least 1 for every nonzero section.
inline double gromov_ratio(const SectionCoeffs& s, const SupOptions& opt = {}) {
  if (s.is_zero()) throw InvalidInput("ratio undefined for the zero section");
  return sup_norm(s, opt) / l2_norm(s);
}

// ---------------------------------------------------------------------------
// log-integrals

namespace detail {

/// Ring of radius e^t at which the radial factor is evaluated, with its
/// weight in the u-measure.
struct Ring {
  double t;  // log of the radius in the zero chart
  double weight;
};

/// log |s|_FS averaged over the ring |z| = e^t with m midpoint nodes.
inline double log_ring_average(const SectionCoeffs& s, double t, int m) {
  std::vector<double> vals(static_cast<std::size_t>(m));
  const bool upper = t > 0.0;
  const double rho = std::exp(upper ? -t : t);
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * std::numbers::pi * (k + 0.5) / m;
    SpherePoint x{std::polar(rho, upper ? -theta : theta), upper};
    double v = log_fs_norm_at(s, x);
    if (!std::isfinite(v)) {
      // node sits on a zero of s: nudge it off the singularity
      x.coord += Complex(1e-9, 1e-9) * std::max(1.0, std::abs(x.coord));
      v = log_fs_norm_at(s, x);
    }
    vals[static_cast<std::size_t>(k)] = v;
  }
  return pairwise_sum(vals) / m;
}

/// Radial rings for a function whose ring averages are analytic in
/// t = log r between the given breakpoints. End pieces use u = r^2/(1+r^2)
/// (graded as u ~ x^4 when a zero sits at 0 or infinity); interior pieces use t.
inline std::vector<Ring> log_radial_rings(const std::vector<double>& breaks, bool pole_zero, bool pole_inf,
                                          int per_piece) {
  const auto [x, w] = gauss_legendre_unit(per_piece);
  std::vector<Ring> rings;
  auto logit_half = [](double u, double v) { return 0.5 * (std::log(u) - std::log(v)); };  // log r from u, 1-u
  // left end: u in [0, uL], uL <= 1/2
  const double tl = std::min(breaks.front(), 0.0), tr = std::max(breaks.back(), 0.0);
  const double ul = 1.0 / (1.0 + std::exp(-2.0 * tl));
  const double vr = 1.0 / (1.0 + std::exp(2.0 * tr));  // 1 - u at the right end
  for (std::size_t i = 0; i < x.size(); ++i) {
    double g = x[i], dg = 1.0;
    if (pole_zero) {
      g = std::pow(x[i], 4);
      dg = 4.0 * std::pow(x[i], 3);
    }
    const double u = ul * g;
    rings.push_back({logit_half(u, 1.0 - u), ul * dg * w[i]});
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    double g = x[i], dg = 1.0;
    if (pole_inf) {
      g = std::pow(x[i], 4);
      dg = 4.0 * std::pow(x[i], 3);
    }
    const double v = vr * g;
    rings.push_back({logit_half(1.0 - v, v), vr * dg * w[i]});
  }
  std::vector<double> cuts;
  cuts.push_back(tl);
  for (double b : breaks)
    if (b > tl && b < tr) cuts.push_back(b);
  cuts.push_back(tr);
  // between kinks the average is linear plus a term analytic in a strip of
  // half-width pi/2, so short pieces need only a few nodes
  const int min_nodes = std::min(4, per_piece);
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], len = cuts[p + 1] - cuts[p];
    if (len <= 0.0) continue;
    const int m = std::clamp(static_cast<int>(std::ceil(per_piece * len / 2.0)), min_nodes, per_piece);
    const auto [xp, wp] = m == per_piece ? std::pair{x, w} : gauss_legendre_unit(m);
    for (std::size_t i = 0; i < xp.size(); ++i) {
      const double t = a + len * xp[i];
      const double c = std::cosh(t);
      rings.push_back({t, len * wp[i] / (2.0 * c * c)});
    }
  }
  return rings;
}

}  // namespace detail

/// Integral of log|s|_FS against c_1 (not normalized by n).
///
/// The ring average of log|s| is piecewise analytic in log r with kinks at
/// the moduli of the zeros, so the radial rule is split there (the rule's
/// radial count sets the nodes per piece, divided by 8). Rings close to a
/// zero modulus get extra angular nodes until the trapezoid aliasing bound
/// -log(1 - q^m)/m per zero, weighted by the ring, falls below 1e-15.
inline double quadrature_log_integral(const SectionCoeffs& s, const QuadratureRule& rule, unsigned threads = 1) {
  if (s.is_zero()) throw InvalidInput("log-integral of the zero section diverges");
  const auto p = section_to_poly(s);
  std::vector<std::pair<double, int>> moduli;  // (log |alpha|, multiplicity)
  bool pole_zero = false;
  const bool pole_inf = s.n > p.degree();
  if (p.degree() >= 1) {
    for (const auto& r : find_roots(p).roots) {
      if (r.value == Complex{0.0})
        pole_zero = true;
      else
        moduli.emplace_back(std::log(std::abs(r.value)), r.multiplicity);
    }
  }
  std::vector<double> breaks;
  for (const auto& [t, m] : moduli) breaks.push_back(t);
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> merged;
  for (double b : breaks)
    if (merged.empty() || b - merged.back() > 1e-12 * std::max(1.0, std::abs(b))) merged.push_back(b);
  if (merged.empty()) merged.push_back(0.0);

  const auto rings = detail::log_radial_rings(merged, pole_zero, pole_inf, std::max(2, rule.radial() / 8));
  constexpr int kMaxAngular = 1 << 15;
  std::vector<double> parts(rings.size());
  parallel_for(rings.size(), threads, [&](std::size_t i) {
    const auto& ring = rings[i];
    int m = rule.angular;
    while (m < kMaxAngular) {
      double bound = 0.0;
      for (const auto& [t, mult] : moduli) {
        const double qm = std::exp(-m * std::abs(ring.t - t));
        bound += qm < 1.0 ? -mult * std::log1p(-qm) / m : std::numeric_limits<double>::infinity();
      }
      if (ring.weight * bound <= 1e-15) break;
      m *= 2;
    }
    parts[i] = ring.weight * detail::log_ring_average(s, ring.t, m);
  });
  return pairwise_sum(parts);
}

/// (1/n) integral of log|s|_FS c_1; equals h_FS(P) - 1/2 - epsilon when s comes from P.
inline double quadrature_log_norm(const SectionCoeffs& s, const QuadratureRule& rule, unsigned threads = 1) {
  if (s.n < 1) throw InvalidInput("normalized log-integral needs n >= 1");
  return quadrature_log_integral(s, rule, threads) / s.n;
}

// ---------------------------------------------------------------------------
// divisors and the Stokes symmetry

/// Points of div(s) with multiplicity; zeros at infinity appear when the top
/// coefficients vanish.
struct Divisor {
  std::vector<std::pair<SpherePoint, int>> points;
};

inline Divisor divisor(const SectionCoeffs& s, const RootOptions& opt = {}) {
  const auto p = section_to_poly(s);
  Divisor d;
  if (p.degree() >= 1) {
    for (const auto& r : find_roots(p, opt).roots) d.points.emplace_back(SpherePoint::at(r.value), r.multiplicity);
  }
  if (s.n > p.degree()) d.points.emplace_back(SpherePoint::infinity(), s.n - p.degree());
  return d;
}

/// Chordal distance on P^1.
inline double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinity() && b.is_infinity()) return 0.0;
  if (a.is_infinity() || b.is_infinity()) {
    const Complex z = a.is_infinity() ? b.z() : a.z();
    return 1.0 / std::sqrt(1.0 + std::norm(z));
  }
  // homogeneous representatives
  auto rep = [](const SpherePoint& x) {
    return x.infinity_chart ? std::pair<Complex, Complex>{1.0, x.coord} : std::pair<Complex, Complex>{x.coord, 1.0};
  };
  const auto [a0, a1] = rep(a);
  const auto [b0, b1] = rep(b);
  const double na = std::sqrt(std::norm(a0) + std::norm(a1)), nb = std::sqrt(std::norm(b0) + std::norm(b1));
  return std::abs(a0 * b1 - a1 * b0) / (na * nb);
}

struct StokesSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// n2 int log|s1| c_1 - sum_{div s2} log|s1|  versus  n1 int log|s2| c_1 - sum_{div s1} log|s2|.
inline StokesSides stokes_symmetry_check(const SectionCoeffs& s1, const SectionCoeffs& s2, const QuadratureRule& rule,
                                         unsigned threads = 1) {
  const auto d1 = divisor(s1), d2 = divisor(s2);
  for (const auto& [x, m] : d1.points)
    for (const auto& [y, k] : d2.points)
      if (chordal_distance(x, y) <= 1e-8) throw InvalidInput("divisors intersect");
  auto boundary = [](const SectionCoeffs& s, const Divisor& d) {
    std::vector<double> t;
    for (const auto& [x, m] : d.points) t.push_back(m * log_fs_norm_at(s, x));
    return pairwise_sum(t);
  };
  StokesSides out;
  out.lhs = s2.n * quadrature_log_integral(s1, rule, threads) - boundary(s1, d2);
  out.rhs = s1.n * quadrature_log_integral(s2, rule, threads) - boundary(s2, d1);
  return out;
}

}  // namespace eqk

#endif  // EQK_FUBINI_HPP
