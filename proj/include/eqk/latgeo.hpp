#ifndef EQK_LATGEO_HPP
#define EQK_LATGEO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "eqk/error.hpp"
#include "eqk/numeric.hpp"
#include "eqk/parallel.hpp"

namespace eqk {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntVector = std::vector<std::int64_t>;

inline constexpr int kMaxLatticeDim = 10;

/// Full-rank lattice in R^d; the columns of `basis` are a Z-basis.
class Lattice {
 public:
  explicit Lattice(Matrix basis) : basis_(std::move(basis)) {
    const auto d = basis_.rows();
    if (d < 1 || d > kMaxLatticeDim || basis_.cols() != d) throw InvalidInput("lattice basis must be square, 1 <= d <= 10");
    double scale = 1.0;
    for (Eigen::Index j = 0; j < d; ++j) scale *= basis_.col(j).norm();
    det_ = std::abs(basis_.determinant());
    if (!(det_ > 1e-10 * scale)) throw InvalidInput("lattice basis is (numerically) degenerate");
    gram_ = basis_.transpose() * basis_;
    inverse_ = basis_.inverse();
  }

  static Lattice integer(int d) { return Lattice(Matrix::Identity(d, d)); }

  int dim() const noexcept { return static_cast<int>(basis_.rows()); }
  const Matrix& basis() const noexcept { return basis_; }
  const Matrix& gram() const noexcept { return gram_; }
  const Matrix& inverse() const noexcept { return inverse_; }
  double det() const noexcept { return det_; }

  Vector point(const IntVector& c) const {
    Vector v = Vector::Zero(dim());
    for (int j = 0; j < dim(); ++j)
      if (c[static_cast<std::size_t>(j)] != 0) v += static_cast<double>(c[static_cast<std::size_t>(j)]) * basis_.col(j);
    return v;
  }

 private:
  Matrix basis_;
  Matrix gram_;
  Matrix inverse_;
  double det_ = 0.0;
};

/// Compact convex symmetric body: ellipsoid {x : x^T A x <= 1} or box
/// {|x_i| <= w_i}. The Bombieri ball is the box with w_k = e^(n r) sqrt(binom(n, k)).
class ConvexBody {
 public:
  enum class Kind { Ellipsoid, Box };

  static ConvexBody ellipsoid(Matrix shape) {
    if (shape.rows() < 1 || shape.rows() != shape.cols()) throw InvalidInput("ellipsoid shape matrix must be square");
    if (!shape.isApprox(shape.transpose(), 1e-12)) throw InvalidInput("ellipsoid shape matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(shape);
    if (!(es.eigenvalues().minCoeff() > 0.0)) throw InvalidInput("ellipsoid shape matrix must be positive definite");
    ConvexBody b(Kind::Ellipsoid);
    b.shape_ = std::move(shape);
    b.shape_inv_ = b.shape_.inverse();
    b.eig_min_ = es.eigenvalues().minCoeff();
    b.eig_max_ = es.eigenvalues().maxCoeff();
    return b;
  }
  static ConvexBody ball(int d, double radius) {
    if (!(radius > 0.0)) throw InvalidInput("ball radius must be positive");
    return ellipsoid(Matrix::Identity(d, d) / (radius * radius));
  }
  static ConvexBody box(Vector half_widths) {
    if (half_widths.size() < 1 || !(half_widths.minCoeff() > 0.0)) throw InvalidInput("box half-widths must be positive");
    ConvexBody b(Kind::Box);
    b.widths_ = std::move(half_widths);
    return b;
  }
  static ConvexBody bombieri(int n, double r) {
    if (n < 0) throw InvalidInput("bombieri body needs n >= 0");
    Vector w(n + 1);
    for (int k = 0; k <= n; ++k) w[k] = std::exp(n * r + 0.5 * log_binomial(n, k));
    return box(std::move(w));
  }

  /// Parse `ellipsoid:a11,a12,...`, `box:w1,...,wd`, `bombieri:n,r` or `ball:d,radius`.
  static ConvexBody parse(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw InvalidInput("body spec needs kind:values");
    const std::string kind = spec.substr(0, colon);
    std::vector<double> v;
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t pos = 0;
        v.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw InvalidInput("bad number");
      } catch (...) {
        throw InvalidInput("body spec: malformed number '" + item + "'");
      }
    }
    if (kind == "ellipsoid") {
      const auto d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v.size()))));
      if (d < 1 || static_cast<std::size_t>(d * d) != v.size()) throw InvalidInput("ellipsoid needs d*d entries");
      Matrix a(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = v[static_cast<std::size_t>(i * d + j)];
      return ellipsoid(a);
    }
    if (kind == "box") return box(Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
    if (kind == "bombieri") {
      if (v.size() != 2 || v[0] < 0 || v[0] != std::floor(v[0])) throw InvalidInput("bombieri needs n,r");
      return bombieri(static_cast<int>(v[0]), v[1]);
    }
    if (kind == "ball") {
      if (v.size() != 2 || v[0] < 1 || v[0] != std::floor(v[0])) throw InvalidInput("ball needs d,radius");
      return ball(static_cast<int>(v[0]), v[1]);
    }
    throw InvalidInput("unknown body kind '" + kind + "'");
  }

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept {
    return static_cast<int>(kind_ == Kind::Ellipsoid ? shape_.rows() : widths_.size());
  }
  const Matrix& shape() const noexcept { return shape_; }
  const Vector& half_widths() const noexcept { return widths_; }

  /// Minkowski functional: x in mu K iff gauge(x) <= mu.
  double gauge(const Vector& x) const {
    if (kind_ == Kind::Ellipsoid) return std::sqrt(std::max(0.0, x.dot(shape_ * x)));
    return (x.cwiseAbs().array() / widths_.array()).maxCoeff();
  }

  /// Closed membership tolerates 1e-12 relative slack on the boundary; open
  /// membership excludes it.
  bool contains(const Vector& x, bool open = false) const {
    const double g = gauge(x);
    return open ? g < 1.0 - 1e-12 : g <= 1.0 + 1e-12;
  }

  /// sup over x in K of <y, x>.
  double support(const Vector& y) const {
    if (kind_ == Kind::Ellipsoid) return std::sqrt(std::max(0.0, y.dot(shape_inv_ * y)));
    return y.cwiseAbs().dot(widths_);
  }

  double volume() const {
    const int d = dim();
    if (kind_ == Kind::Ellipsoid) {
      const double unit = std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
      return unit / std::sqrt(shape_.determinant());
    }
    return (2.0 * widths_.array()).prod();
  }

  /// Largest r with the closed ball of radius r inside K.
  double inradius() const {
    if (kind_ == Kind::Ellipsoid) return 1.0 / std::sqrt(eig_max_);
    return widths_.minCoeff();
  }

  double circumradius() const {
    if (kind_ == Kind::Ellipsoid) return 1.0 / std::sqrt(eig_min_);
    return widths_.norm();
  }

  ConvexBody scaled(double mu) const {
    if (!(mu > 0.0)) throw InvalidInput("scaling factor must be positive");
    if (kind_ == Kind::Ellipsoid) return ellipsoid(shape_ / (mu * mu));
    return box(widths_ * mu);
  }

 private:
  explicit ConvexBody(Kind k) : kind_(k) {}
  Kind kind_;
  Matrix shape_, shape_inv_;
  Vector widths_;
  double eig_min_ = 0.0, eig_max_ = 0.0;
};

inline constexpr double kDefaultPointBudget = 1e8;

namespace detail {

/// Per-coordinate bounds |c_i| <= h_K(row_i of B^-1) for lattice points in K.
inline IntVector coordinate_bounds(const Lattice& L, const ConvexBody& K, double& candidates) {
  if (K.dim() != L.dim()) throw InvalidInput("lattice and body dimensions differ");
  IntVector b(static_cast<std::size_t>(L.dim()));
  candidates = 1.0;
  for (int i = 0; i < L.dim(); ++i) {
    const double h = K.support(L.inverse().row(i).transpose());
    const double bi = std::floor(h * (1.0 + 1e-12) + 1e-12);
    b[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(bi);
    candidates *= 2.0 * bi + 1.0;
  }
  return b;
}

/// Calls fn(c, v) for every coefficient vector in the bounding box; the
/// outermost coordinate is split across workers, each with its own state.
template <typename MakeState, typename Fn>
auto visit_box(const Lattice& L, const IntVector& bounds, unsigned threads, MakeState make_state, Fn fn) {
  const int d = L.dim();
  const auto outer = static_cast<std::size_t>(2 * bounds[static_cast<std::size_t>(d - 1)] + 1);
  using State = decltype(make_state());
  std::vector<State> states(outer);
  parallel_for(outer, threads, [&](std::size_t slice) {
    State st = make_state();
    IntVector c(static_cast<std::size_t>(d));
    for (int i = 0; i < d - 1; ++i) c[static_cast<std::size_t>(i)] = -bounds[static_cast<std::size_t>(i)];
    c[static_cast<std::size_t>(d - 1)] = static_cast<std::int64_t>(slice) - bounds[static_cast<std::size_t>(d - 1)];
    for (;;) {
      fn(st, c, L.point(c));
      int i = 0;
      for (; i < d - 1; ++i) {
        auto& ci = c[static_cast<std::size_t>(i)];
        if (ci < bounds[static_cast<std::size_t>(i)]) {
          ++ci;
          break;
        }
        ci = -bounds[static_cast<std::size_t>(i)];
      }
      if (i == d - 1) break;
    }
    states[slice] = std::move(st);
  });
  return states;
}

}  // namespace detail

/// Exact number of lattice points in K (closed) or its interior (open).
inline std::uint64_t count_points(const Lattice& L, const ConvexBody& K, bool open = false,
                                  double budget = kDefaultPointBudget, unsigned threads = 1) {
  double candidates = 0.0;
  const auto bounds = detail::coordinate_bounds(L, K, candidates);
  if (candidates > budget)
    throw BudgetExceeded("point enumeration needs ~" + format_double(candidates) + " candidates", candidates);
  const auto parts = detail::visit_box(
      L, bounds, threads, [] { return std::uint64_t{0}; },
      [&](std::uint64_t& acc, const IntVector&, const Vector& v) { acc += K.contains(v, open) ? 1 : 0; });
  return std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
}

// ---------------------------------------------------------------------------
// successive minima and lambda_Z

struct MinimaProfile {
  std::vector<double> lambdas;  // lambda_1 <= ... <= lambda_d
  double lambda_z = 0.0;        // min over Z-bases of the largest gauge
  bool approximate = false;     // lambda_z (and, beyond budget, lambdas) are upper bounds
  std::vector<IntVector> minima_coords;  // coordinates of vectors attaining lambdas
};

namespace detail {

struct Candidate {
  double gauge;
  IntVector coords;
};

/// Exact determinant of a small integer matrix (Bareiss).
inline __int128 int_det(std::vector<std::vector<__int128>> m) {
  const std::size_t n = m.size();
  __int128 sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline __int128 abs128(__int128 x) { return x < 0 ? -x : x; }
inline __int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// k integer vectors in Z^d extend to a basis iff the gcd of their k x k minors is 1.
inline bool is_primitive(const std::vector<const IntVector*>& vs, int d) {
  const int k = static_cast<int>(vs.size());
  std::vector<int> cols(static_cast<std::size_t>(k));
  std::iota(cols.begin(), cols.end(), 0);
  __int128 g = 0;
  for (;;) {
    std::vector<std::vector<__int128>> m(static_cast<std::size_t>(k), std::vector<__int128>(static_cast<std::size_t>(k)));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = (*vs[static_cast<std::size_t>(r)])[static_cast<std::size_t>(cols[static_cast<std::size_t>(c)])];
    g = gcd128(g, int_det(std::move(m)));
    if (g == 1) return true;
    int i = k - 1;
    while (i >= 0 && cols[static_cast<std::size_t>(i)] == d - k + i) --i;
    if (i < 0) break;
    ++cols[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
  }
  return g == 1;
}

inline int rank_of(const std::vector<const IntVector*>& vs, int d) {
  if (vs.empty()) return 0;
  Matrix m(static_cast<Eigen::Index>(vs.size()), d);
  for (std::size_t r = 0; r < vs.size(); ++r)
    for (int c = 0; c < d; ++c) m(static_cast<Eigen::Index>(r), c) = static_cast<double>((*vs[r])[static_cast<std::size_t>(c)]);
  Eigen::FullPivLU<Matrix> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

/// Depth-first search for a Z-basis among candidates[0, limit).
class BasisSearch {
 public:
  BasisSearch(const std::vector<Candidate>& cands, int d, std::size_t node_budget)
      : cands_(cands), d_(d), budget_(node_budget) {}

  /// Returns true if a basis exists among the first `limit` candidates.
  std::optional<bool> exists(std::size_t limit) {
    chosen_.clear();
    limit_ = limit;
    aborted_ = false;
    const bool found = dfs(0);
    if (aborted_) return std::nullopt;
    return found;
  }

 private:
  bool dfs(std::size_t start) {
    if (static_cast<int>(chosen_.size()) == d_) return true;
    for (std::size_t i = start; i < limit_; ++i) {
      if (++nodes_ > budget_) {
        aborted_ = true;
        return false;
      }
      // not enough candidates left to fill the basis
      if (limit_ - i < static_cast<std::size_t>(d_) - chosen_.size()) return false;
      chosen_.push_back(&cands_[i].coords);
      if (is_primitive(chosen_, d_) && dfs(i + 1)) return true;
      chosen_.pop_back();
      if (aborted_) return false;
    }
    return false;
  }

  const std::vector<Candidate>& cands_;
  int d_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::size_t limit_ = 0;
  bool aborted_ = false;
  std::vector<const IntVector*> chosen_;
};

}  // namespace detail

struct MinimaOptions {
  bool approx = false;  // allow d > 8, with upper bounds where exact search is infeasible
  double budget = kDefaultPointBudget;
  std::size_t basis_search_nodes = 2'000'000;
  unsigned threads = 1;
};

/// Successive minima lambda_j(K, L) by sorting every lattice vector of Kgauge
/// <= max basis gauge and selecting linearly independent ones greedily;
/// lambda_Z by searching for a unimodular set among the shortest candidates.
inline MinimaProfile successive_minima(const Lattice& L, const ConvexBody& K, const MinimaOptions& opt = {}) {
  const int d = L.dim();
  if (K.dim() != d) throw InvalidInput("lattice and body dimensions differ");
  if (d > 8 && !opt.approx) throw InvalidInput("exact successive minima need d <= 8 (use approx mode)");

  std::vector<double> basis_gauges(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) basis_gauges[static_cast<std::size_t>(j)] = K.gauge(L.basis().col(j));
  const double radius = *std::max_element(basis_gauges.begin(), basis_gauges.end());

  MinimaProfile prof;
  const ConvexBody outer = K.scaled(radius);
  double candidates = 0.0;
  const auto bounds = detail::coordinate_bounds(L, outer, candidates);
  if (candidates > opt.budget) {
    if (!opt.approx)
      throw BudgetExceeded("minima enumeration needs ~" + format_double(candidates) + " candidates", candidates);
    // upper bounds from the basis itself: the j shortest basis vectors are independent
    prof.approximate = true;
    prof.lambdas = basis_gauges;
    std::sort(prof.lambdas.begin(), prof.lambdas.end());
    prof.lambda_z = radius;
    return prof;
  }

  auto parts = detail::visit_box(
      L, bounds, opt.threads, [] { return std::vector<detail::Candidate>{}; },
      [&](std::vector<detail::Candidate>& acc, const IntVector& c, const Vector& v) {
        // keep one vector of each +-pair: first nonzero coordinate positive
        auto nz = std::find_if(c.begin(), c.end(), [](std::int64_t x) { return x != 0; });
        if (nz == c.end() || *nz < 0) return;
        const double g = K.gauge(v);
        if (g <= radius * (1.0 + 1e-12)) acc.push_back({g, c});
      });
  std::vector<detail::Candidate> cands;
  for (auto& p : parts) cands.insert(cands.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.gauge != b.gauge) return a.gauge < b.gauge;
    return a.coords < b.coords;
  });

  std::vector<const IntVector*> chosen;
  for (const auto& c : cands) {
    chosen.push_back(&c.coords);
    if (detail::rank_of(chosen, d) == static_cast<int>(chosen.size())) {
      prof.lambdas.push_back(c.gauge);
      prof.minima_coords.push_back(c.coords);
      if (static_cast<int>(chosen.size()) == d) break;
    } else {
      chosen.pop_back();
    }
  }
  if (static_cast<int>(prof.lambdas.size()) != d) throw Error("successive minima: enumeration missed independent vectors");

  const double lambda_d = prof.lambdas.back();
  if (d <= 6) {
    detail::BasisSearch search(cands, d, opt.basis_search_nodes);
    std::size_t limit = 0;
    bool done = false;
    while (limit < cands.size() && !done) {
      // grow the candidate set one gauge level at a time
      const double level = std::max(cands[limit].gauge, lambda_d * (1.0 - 1e-12));
      while (limit < cands.size() && cands[limit].gauge <= level) ++limit;
      const auto found = search.exists(limit);
      if (!found) break;  // node budget exhausted
      if (*found) {
        prof.lambda_z = cands[limit - 1].gauge;
        done = true;
      }
    }
    if (done) return prof;
  }
  // greedy primitive extension: a certified upper bound
  prof.approximate = true;
  chosen.clear();
  double worst = 0.0;
  for (const auto& c : cands) {
    chosen.push_back(&c.coords);
    if (detail::is_primitive(chosen, d)) {
      worst = c.gauge;
      if (static_cast<int>(chosen.size()) == d) break;
    } else {
      chosen.pop_back();
    }
  }
  prof.lambda_z = static_cast<int>(chosen.size()) == d ? std::min(worst, radius) : radius;
  return prof;
}

// ---------------------------------------------------------------------------
// point-count bounds

struct LatticeBounds {
  double upper = 0.0;
  std::optional<double> lower;  // present iff lambda_d <= 2/d
};

/// #(K cap L) <= Vol(K)/det(L) (1 + d lambda_d / 2)^d, and, when lambda_d <= 2/d,
/// #(int K cap L) >= Vol(K)/det(L) (1 - d lambda_d / 2)^d.
inline LatticeBounds freyer_lucas_bounds(const Lattice& L, const ConvexBody& K, const MinimaProfile& prof) {
  const int d = L.dim();
  const double lambda_d = prof.lambdas.back();
  const double base = K.volume() / L.det();
  LatticeBounds b;
  b.upper = base * std::pow(1.0 + d * lambda_d / 2.0, d);
  if (lambda_d <= 2.0 / d) b.lower = base * std::pow(1.0 - d * lambda_d / 2.0, d);
  return b;
}

inline LatticeBounds freyer_lucas_bounds(const Lattice& L, const ConvexBody& K, const MinimaOptions& opt = {}) {
  return freyer_lucas_bounds(L, K, successive_minima(L, K, opt));
}

struct QuotientCheck {
  double observed = 0.0;
  double bound = 0.0;
  std::uint64_t count_body = 0;
  std::uint64_t count_scaled = 0;
  double lambda_z = 0.0;
};

/// #(K cap L) / #(mu K cap L) against mu^-d (1 + d (1 + 1/mu) lambda_Z / r)^d,
/// valid when r mu >= d lambda_Z(L) and the closed ball of radius r lies in K.
inline QuotientCheck quotient_bound_check(const Lattice& L, const ConvexBody& K, double r, double mu,
                                          const MinimaOptions& opt = {}) {
  const int d = L.dim();
  if (K.dim() != d) throw InvalidInput("lattice and body dimensions differ");
  if (!(r > 0.0)) throw InvalidInput("precondition r > 0 violated");
  if (!(mu > 0.0)) throw InvalidInput("precondition mu > 0 violated");
  const auto euclid = successive_minima(L, ConvexBody::ball(d, 1.0), opt);
  QuotientCheck q;
  q.lambda_z = euclid.lambda_z;
  if (r * mu < d * q.lambda_z * (1.0 - 1e-12))
    throw InvalidInput("precondition r*mu >= d*lambda_Z violated (" + format_double(r * mu) + " < " +
                       format_double(d * q.lambda_z) + ")");
  if (r > K.inradius() * (1.0 + 1e-12))
    throw InvalidInput("precondition closed ball B_r inside K violated (inradius " + format_double(K.inradius()) + ")");
  q.count_body = count_points(L, K, false, opt.budget, opt.threads);
  q.count_scaled = count_points(L, K.scaled(mu), false, opt.budget, opt.threads);
  q.observed = static_cast<double>(q.count_body) / static_cast<double>(q.count_scaled);
  q.bound = std::pow(mu, -d) * std::pow(1.0 + d * (1.0 + 1.0 / mu) * q.lambda_z / r, d);
  return q;
}

// ---------------------------------------------------------------------------
// JSON: {"dim": d, "basis": [[...], ...]}, one inner array per basis vector.

inline Lattice lattice_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("basis") || !j["basis"].is_array()) throw InvalidInput("lattice JSON needs \"basis\"");
  const auto& b = j["basis"];
  const auto d = static_cast<int>(b.size());
  if (j.contains("dim") && j["dim"].get<int>() != d) throw InvalidInput("\"dim\" does not match the basis");
  if (d < 1) throw InvalidInput("empty basis");
  Matrix m(d, d);
  for (int col = 0; col < d; ++col) {
    const auto& v = b[static_cast<std::size_t>(col)];
    if (!v.is_array() || static_cast<int>(v.size()) != d) throw InvalidInput("basis vectors must have length dim");
    for (int row = 0; row < d; ++row) m(row, col) = v[static_cast<std::size_t>(row)].get<double>();
  }
  return Lattice(std::move(m));
}

inline nlohmann::json to_json(const Lattice& L) {
  nlohmann::json basis = nlohmann::json::array();
  for (int col = 0; col < L.dim(); ++col) {
    std::vector<double> v(static_cast<std::size_t>(L.dim()));
    for (int row = 0; row < L.dim(); ++row) v[static_cast<std::size_t>(row)] = L.basis()(row, col);
    basis.push_back(v);
  }
  return {{"dim", L.dim()}, {"basis", basis}};
}

}  // namespace eqk

#endif  // EQK_LATGEO_HPP
