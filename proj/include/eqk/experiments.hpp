#ifndef EQK_EXPERIMENTS_HPP
#define EQK_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqk/ensemble.hpp"
#include "eqk/error.hpp"
#include "eqk/fubini.hpp"
#include "eqk/heights.hpp"
#include "eqk/numeric.hpp"
#include "eqk/parallel.hpp"
#include "eqk/polynomial.hpp"
#include "eqk/roots.hpp"
#include "eqk/testfn.hpp"

namespace eqk {

using ojson = nlohmann::ordered_json;

enum class Verdict { Pass, Flag, Fail };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Flag:
      return "flag";
    case Verdict::Fail:
      return "fail";
  }
  return "fail";
}

struct LadderRow {
  int degree = 0;
  std::size_t samples = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  ojson extra = ojson::object();
};

struct ExperimentReport {
  std::string experiment;
  ojson config = ojson::object();
  std::vector<LadderRow> ladder;
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> notes;
  ojson checks = ojson::object();
};

inline ojson to_json(const ExperimentReport& r) {
  ojson ladder = ojson::array();
  for (const auto& row : r.ladder) {
    ojson j = {{"degree", row.degree}, {"samples", row.samples}, {"mean", row.mean}, {"stderr", row.stderr_}};
    for (const auto& [k, v] : row.extra.items()) j[k] = v;
    ladder.push_back(std::move(j));
  }
  return {{"experiment", r.experiment}, {"config", r.config},     {"ladder", ladder},
          {"verdict", to_string(r.verdict)}, {"notes", r.notes}, {"checks", r.checks}};
}

/// One row per degree; leading comment lines echo the run configuration.
inline std::string to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out << "# experiment: " << r.experiment << "\n# config: " << r.config.dump() << "\n";
  std::vector<std::string> extra_keys;
  if (!r.ladder.empty())
    for (const auto& [k, v] : r.ladder.front().extra.items()) extra_keys.push_back(k);
  out << "degree,samples,mean,stderr";
  for (const auto& k : extra_keys) out << ',' << k;
  out << '\n';
  for (const auto& row : r.ladder) {
    out << row.degree << ',' << row.samples << ',' << format_double(row.mean) << ',' << format_double(row.stderr_);
    for (const auto& k : extra_keys) {
      const auto& v = row.extra.at(k);
      out << ',';
      if (v.is_number_float())
        out << format_double(v.get<double>());
      else if (v.is_string())
        out << v.get<std::string>();
      else
        out << v.dump();
    }
    out << '\n';
  }
  out << "# verdict: " << to_string(r.verdict) << '\n';
  return out.str();
}

/// Convergence claims carry no rate, so the rule is property based: a later
/// mean above an earlier one by more than 3 combined standard errors, or a
/// final mean not below half the initial one, fails; consecutive means within
/// 2 combined standard errors are flagged.
inline Verdict ladder_verdict(const std::vector<LadderRow>& rows, std::vector<std::string>& notes) {
  if (rows.size() < 2) {
    notes.emplace_back("ladder has fewer than two degrees; no trend assessed");
    return Verdict::Flag;
  }
  if (std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.mean == 0.0; })) {
    notes.emplace_back("all deviations are exactly zero");
    return Verdict::Pass;
  }
  Verdict v = Verdict::Pass;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const double sigma = std::hypot(rows[i].stderr_, rows[j].stderr_);
      if (rows[j].mean - rows[i].mean > 3.0 * sigma) {
        notes.push_back("mean at degree " + std::to_string(rows[j].degree) + " exceeds degree " +
                        std::to_string(rows[i].degree) + " by more than 3 combined std errors");
        v = Verdict::Fail;
      }
    }
  if (!(rows.back().mean < 0.5 * rows.front().mean)) {
    notes.emplace_back("final mean is not below half the initial mean");
    v = Verdict::Fail;
  }
  if (v == Verdict::Pass) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      const double sigma = std::hypot(rows[i].stderr_, rows[i + 1].stderr_);
      if (std::abs(rows[i + 1].mean - rows[i].mean) <= 2.0 * sigma) {
        notes.push_back("degrees " + std::to_string(rows[i].degree) + " and " + std::to_string(rows[i + 1].degree) +
                        " are within 2 combined std errors");
        v = Verdict::Flag;
      }
    }
  }
  notes.emplace_back("halving criterion is an engineering stand-in: no convergence rate is known");
  return v;
}

// ---------------------------------------------------------------------------

struct ExperimentOptions {
  unsigned threads = 0;  // 0: EQK_THREADS or logical cores; never affects results
  RootOptions roots{};
  int quad_radial = QuadratureRule::kDefaultRadial;
  int quad_angular = QuadratureRule::kDefaultAngular;
  int check_every = 100;  // quadrature identity check stride
  SupOptions sup_check{64, 64, 20, 4};
  double max_failure_rate = 1e-3;
};

inline ojson options_json(const ExperimentOptions& o) {
  return {{"root_tol", o.roots.tol},       {"root_max_iter", o.roots.max_iter}, {"quad_radial", o.quad_radial},
          {"quad_angular", o.quad_angular}, {"check_every", o.check_every},
          {"sup_grid", {o.sup_check.grid_radial, o.sup_check.grid_angular}}};
}

namespace detail {

struct SampleOutcome {
  bool ok = false;
  double h_fs = 0.0;
  double h_b = 0.0;
  double testfn_mean = 0.0;
  double quad_error = -1.0;  // negative: not checked
  bool sup_violation = false;
};

struct DegreeBatch {
  std::vector<SampleOutcome> outcomes;
  std::size_t failures = 0;
};

inline void require_degrees(const std::vector<int>& degrees) {
  if (degrees.empty()) throw InvalidInput("need at least one degree");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 1) throw InvalidInput("degrees must be positive");
    if (i > 0 && degrees[i] <= degrees[i - 1]) throw InvalidInput("degrees must be strictly increasing");
  }
}

/// sample -> roots -> heights -> checks, one slot per sample index.
inline DegreeBatch run_degree(int n, double tau, std::size_t samples, std::uint64_t seed, const TestFunction* f,
                              const ExperimentOptions& opt, const QuadratureRule& rule) {
  const BombieriFamily family(n, tau);
  const std::uint64_t degree_seed = derive_seed(seed, static_cast<std::uint64_t>(n));
  DegreeBatch batch;
  batch.outcomes.resize(samples);
  parallel_for(samples, resolve_threads(opt.threads), [&](std::size_t i) {
    auto& out = batch.outcomes[i];
    const auto p = sample_member(family, degree_seed, i);
    const ComplexPolynomial cp(p);
    RootSet roots;
    try {
      roots = find_roots(cp, opt.roots);
    } catch (const RootFindingError&) {
      return;
    }
    out.ok = true;
    out.h_fs = height_fubini_study(cp, roots);
    out.h_b = height_bombieri(cp);
    if (f) out.testfn_mean = integrate_testfn(empirical_measure(roots), *f);
    const auto s = poly_to_section(cp);
    // integral of log|s| never exceeds log of its sup
    const double log_sup = std::log(sup_norm(s, opt.sup_check)) / n;
    out.sup_violation = out.h_fs - 0.5 > log_sup + 1e-6;
    if (opt.check_every > 0 && i % static_cast<std::size_t>(opt.check_every) == 0)
      out.quad_error = std::abs(quadrature_log_norm(s, rule) - (out.h_fs - 0.5));
  });
  for (const auto& o : batch.outcomes) batch.failures += o.ok ? 0 : 1;
  if (static_cast<double>(batch.failures) > opt.max_failure_rate * static_cast<double>(samples))
    throw Error("root finding failed on " + std::to_string(batch.failures) + " of " + std::to_string(samples) +
                " samples at degree " + std::to_string(n));
  return batch;
}

struct CheckTally {
  std::size_t quad_checked = 0;
  double quad_max_error = 0.0;
  std::size_t sup_violations = 0;
  std::size_t root_failures = 0;

  void add(const DegreeBatch& b) {
    root_failures += b.failures;
    for (const auto& o : b.outcomes) {
      if (!o.ok) continue;
      if (o.quad_error >= 0.0) {
        ++quad_checked;
        quad_max_error = std::max(quad_max_error, o.quad_error);
      }
      sup_violations += o.sup_violation ? 1 : 0;
    }
  }
  ojson json() const {
    return {{"quadrature_checked", quad_checked},
            {"quadrature_max_error", quad_max_error},
            {"quadrature_tolerance", 1e-5},
            {"sup_violations", sup_violations},
            {"root_failures", root_failures}};
  }
  bool ok() const { return quad_max_error < 1e-5 && sup_violations == 0; }
};

template <typename Value>
LadderRow summarize(int n, const DegreeBatch& b, Value value) {
  std::vector<double> v;
  v.reserve(b.outcomes.size());
  for (const auto& o : b.outcomes)
    if (o.ok) v.push_back(value(o));
  const auto s = mean_stats(v);
  return {n, s.count, s.mean, s.stderr_, ojson::object()};
}

inline void finish_checks(ExperimentReport& r, const CheckTally& t) {
  r.checks = t.json();
  if (!t.ok()) {
    r.notes.emplace_back("cross-module checks failed (quadrature identity or sup bound)");
    r.verdict = Verdict::Fail;
  }
}

}  // namespace detail

/// Mean |tau + 1/2 - h_FS(P)| over samples of P_{n,tau} for each degree.
inline ExperimentReport experiment_height_convergence(const std::vector<int>& degrees, double tau,
                                                      std::size_t samples, std::uint64_t seed,
                                                      const ExperimentOptions& opt = {}) {
  if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
  if (samples < 2) throw InvalidInput("need at least two samples per degree");
  detail::require_degrees(degrees);
  const QuadratureRule rule(opt.quad_radial, opt.quad_angular);
  ExperimentReport r;
  r.experiment = "height-conv";
  r.config = {{"degrees", degrees}, {"tau", tau}, {"samples", samples}, {"seed", seed}};
  r.config.update(options_json(opt));
  detail::CheckTally tally;
  for (int n : degrees) {
    const auto batch = detail::run_degree(n, tau, samples, seed, nullptr, opt, rule);
    tally.add(batch);
    r.ladder.push_back(detail::summarize(n, batch, [&](const auto& o) { return std::abs(tau + 0.5 - o.h_fs); }));
  }
  r.verdict = ladder_verdict(r.ladder, r.notes);
  detail::finish_checks(r, tally);
  return r;
}

/// Mean |(1/n) sum f(roots) - int f dmu_FS| over samples of P_{n,tau}.
inline ExperimentReport experiment_testfn_convergence(const std::vector<int>& degrees, double tau,
                                                      const TestFunction& f, std::size_t samples,
                                                      std::uint64_t seed, const ExperimentOptions& opt = {}) {
  if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
  if (samples < 2) throw InvalidInput("need at least two samples per degree");
  detail::require_degrees(degrees);
  const QuadratureRule rule(opt.quad_radial, opt.quad_angular);
  ExperimentReport r;
  r.experiment = "testfn";
  r.config = {{"degrees", degrees}, {"tau", tau}, {"f", f.id}, {"fs_integral", f.fs_integral},
              {"samples", samples}, {"seed", seed}};
  r.config.update(options_json(opt));
  detail::CheckTally tally;
  for (int n : degrees) {
    const auto batch = detail::run_degree(n, tau, samples, seed, &f, opt, rule);
    tally.add(batch);
    r.ladder.push_back(
        detail::summarize(n, batch, [&](const auto& o) { return std::abs(o.testfn_mean - f.fs_integral); }));
  }
  r.verdict = ladder_verdict(r.ladder, r.notes);
  detail::finish_checks(r, tally);
  return r;
}

// ---------------------------------------------------------------------------

struct SequenceEntry {
  int degree = 0;
  double h_b = 0.0;
  double h_fs = 0.0;
  double criterion = 0.0;  // h_B + 1/2 - h_FS
  double deviation = 0.0;  // |(1/n) sum f - int f dmu_FS|
};

/// Per-index criterion and test-function deviation along a polynomial sequence.
inline std::vector<SequenceEntry> experiment_sequence_criterion(const std::vector<ComplexPolynomial>& seq,
                                                                const TestFunction& f,
                                                                const RootOptions& ropt = {}) {
  std::vector<SequenceEntry> out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& p = seq[i];
    if (i > 0 && p.degree() <= seq[i - 1].degree()) throw InvalidInput("sequence degrees must be strictly increasing");
    const auto roots = find_roots(p, ropt);
    SequenceEntry e;
    e.degree = p.degree();
    e.h_b = height_bombieri(p);
    e.h_fs = height_fubini_study(p, roots);
    e.criterion = e.h_b + 0.5 - e.h_fs;
    e.deviation = std::abs(integrate_testfn(empirical_measure(roots), f) - f.fs_integral);
    out.push_back(e);
  }
  return out;
}

/// Built-in sequences: "xn1" (X^n + 1), "sampled" (one member of P_{n,tau}
/// per degree), "shifted" ((X - 2) Q_n with Q_n sampled from P_{n-1,tau}).
inline std::vector<ComplexPolynomial> build_sequence(const std::string& kind, const std::vector<int>& degrees,
                                                     double tau, std::uint64_t seed) {
  detail::require_degrees(degrees);
  std::vector<ComplexPolynomial> seq;
  for (int n : degrees) {
    if (kind == "xn1") {
      std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
      c.front() = 1;
      c.back() = 1;
      seq.emplace_back(IntPolynomial(std::move(c)));
    } else if (kind == "sampled") {
      seq.emplace_back(sample_member(BombieriFamily(n, tau), derive_seed(seed, static_cast<std::uint64_t>(n)), 0));
    } else if (kind == "shifted") {
      if (n < 2) throw InvalidInput("shifted sequence needs degrees >= 2");
      const auto q = sample_member(BombieriFamily(n - 1, tau), derive_seed(seed, static_cast<std::uint64_t>(n)), 0);
      std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex{0.0});
      for (int k = 0; k < n; ++k) {
        c[static_cast<std::size_t>(k) + 1] += static_cast<double>(q[k]);
        c[static_cast<std::size_t>(k)] -= 2.0 * static_cast<double>(q[k]);
      }
      seq.emplace_back(std::move(c));
    } else {
      throw InvalidInput("unknown sequence '" + kind + "' (xn1, sampled, shifted)");
    }
  }
  return seq;
}

inline ExperimentReport experiment_sequence(const std::string& kind, const std::vector<int>& degrees, double tau,
                                            const TestFunction& f, std::uint64_t seed,
                                            const ExperimentOptions& opt = {}) {
  const auto seq = build_sequence(kind, degrees, tau, seed);
  const auto entries = experiment_sequence_criterion(seq, f, opt.roots);
  ExperimentReport r;
  r.experiment = "sequence";
  r.config = {{"sequence", kind}, {"degrees", degrees}, {"tau", tau}, {"f", f.id}, {"seed", seed}};
  r.config.update(options_json(opt));
  for (const auto& e : entries) {
    LadderRow row{e.degree, 1, e.criterion, 0.0, ojson::object()};
    row.extra = {{"h_b", e.h_b}, {"h_fs", e.h_fs}, {"deviation", e.deviation}};
    r.ladder.push_back(std::move(row));
  }
  r.notes.emplace_back("mean is h_B + 1/2 - h_FS; equidistribution is implied only when it tends to 0");
  const double first = entries.front().criterion, last = entries.back().criterion;
  if (entries.size() >= 2 && std::abs(last) < 0.5 * std::abs(first)) {
    r.verdict = Verdict::Pass;
  } else {
    r.verdict = Verdict::Flag;
    r.notes.emplace_back("criterion does not visibly tend to 0; no equidistribution claim is made");
  }
  return r;
}

// ---------------------------------------------------------------------------

/// Roots of X^n - 1 (h_M = 0) against samples of P_{n,tau}: the first average
/// the Haar measure on the circle, the second the Fubini-Study measure.
inline ExperimentReport experiment_bilu_contrast(const std::vector<int>& degrees, double tau, const TestFunction& f,
                                                 std::size_t samples, std::uint64_t seed,
                                                 const ExperimentOptions& opt = {}) {
  if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
  if (samples < 2) throw InvalidInput("need at least two samples per degree");
  detail::require_degrees(degrees);
  ExperimentReport r;
  r.experiment = "bilu";
  r.config = {{"degrees", degrees}, {"tau", tau},         {"f", f.id},
              {"fs_integral", f.fs_integral}, {"circle_haar_average", f.circle_haar_average},
              {"samples", samples}, {"seed", seed}};
  r.config.update(options_json(opt));
  ExperimentOptions no_checks = opt;
  no_checks.check_every = 0;
  const QuadratureRule rule(1, 1);
  detail::CheckTally tally;
  bool unit_ok = true, fs_ok = true, gap_ok = true;
  for (int n : degrees) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
    c.front() = -1;
    c.back() = 1;
    const double unit = integrate_testfn(empirical_measure(find_roots(ComplexPolynomial(IntPolynomial(c)), opt.roots)), f);
    const auto batch = detail::run_degree(n, tau, samples, seed, &f, no_checks, rule);
    tally.add(batch);
    auto row = detail::summarize(n, batch, [](const auto& o) { return o.testfn_mean; });
    const bool u = std::abs(unit - f.circle_haar_average) <= 1e-10;
    const bool near_fs = std::abs(row.mean - f.fs_integral) <= 3.0 * row.stderr_;
    const bool far_circle = std::abs(row.mean - f.circle_haar_average) >= 5.0 * row.stderr_;
    row.extra = {{"unit_roots_mean", unit}, {"within_3se_of_fs", near_fs}, {"gap_over_5se", far_circle}};
    r.ladder.push_back(std::move(row));
    if (n == degrees.back()) {
      unit_ok = u;
      fs_ok = near_fs;
      gap_ok = far_circle;
    } else {
      unit_ok = unit_ok && u;
    }
  }
  r.checks = {{"root_failures", tally.root_failures}};
  if (f.fs_integral == f.circle_haar_average) {
    r.verdict = Verdict::Flag;
    r.notes.emplace_back("test function does not separate the two limit measures");
    if (!unit_ok) r.verdict = Verdict::Fail;
    return r;
  }
  r.verdict = unit_ok && fs_ok && gap_ok ? Verdict::Pass : Verdict::Fail;
  r.notes.emplace_back("sampled verdict judged at the largest degree");
  return r;
}

// ---------------------------------------------------------------------------

/// Monte Carlo estimate of (1/Vol B) int_B |log|<x, u>|| dx over the unit ball
/// B in R^d for a random unit u, against max{1, 1 + 2 log d}.
inline ExperimentReport experiment_condition_b(const std::vector<int>& dims, std::size_t trials, std::uint64_t seed,
                                               const ExperimentOptions& opt = {}) {
  if (dims.empty()) throw InvalidInput("need at least one dimension");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 2) throw InvalidInput("dimensions must be >= 2");
    if (i > 0 && dims[i] <= dims[i - 1]) throw InvalidInput("dimensions must be strictly increasing");
  }
  if (trials < 2) throw InvalidInput("need at least two trials");
  ExperimentReport r;
  r.experiment = "condition-b";
  r.config = {{"dims", dims}, {"trials", trials}, {"seed", seed}};
  constexpr std::size_t kChunk = 8192;
  bool bound_ok = true, ratio_ok = true;
  double prev_ratio = std::numeric_limits<double>::infinity();
  for (int d : dims) {
    const std::uint64_t dim_seed = derive_seed(seed, static_cast<std::uint64_t>(d));
    std::vector<double> u(static_cast<std::size_t>(d));
    {
      std::mt19937_64 gen(derive_seed(dim_seed, ~std::uint64_t{0}));
      std::normal_distribution<double> normal;
      double norm = 0.0;
      for (auto& x : u) {
        x = normal(gen);
        norm += x * x;
      }
      for (auto& x : u) x /= std::sqrt(norm);
    }
    const std::size_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<double> sums(chunks), squares(chunks);
    parallel_for(chunks, resolve_threads(opt.threads), [&](std::size_t c) {
      std::mt19937_64 gen(derive_seed(dim_seed, c));
      std::normal_distribution<double> normal;
      std::uniform_real_distribution<double> unif;
      const std::size_t begin = c * kChunk, end = std::min(trials, begin + kChunk);
      std::vector<double> vals, sq;
      vals.reserve(end - begin);
      std::vector<double> x(static_cast<std::size_t>(d));
      for (std::size_t t = begin; t < end; ++t) {
        double norm = 0.0, dot = 0.0;
        for (int k = 0; k < d; ++k) {
          x[static_cast<std::size_t>(k)] = normal(gen);
          norm += x[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
        }
        const double radius = std::pow(unif(gen), 1.0 / d) / std::sqrt(norm);
        for (int k = 0; k < d; ++k) dot += x[static_cast<std::size_t>(k)] * u[static_cast<std::size_t>(k)];
        const double v = std::abs(std::log(std::abs(dot * radius)));
        vals.push_back(v);
        sq.push_back(v * v);
      }
      sums[c] = pairwise_sum(vals);
      squares[c] = pairwise_sum(sq);
    });
    const double n = static_cast<double>(trials);
    const double mean = pairwise_sum(sums) / n;
    const double var = std::max(0.0, (pairwise_sum(squares) - n * mean * mean) / (n - 1.0));
    const double se = std::sqrt(var / n);
    const double bound = std::max(1.0, 1.0 + 2.0 * std::log(static_cast<double>(d)));
    const double ratio = mean / d;
    LadderRow row{d, trials, mean, se, ojson::object()};
    row.extra = {{"bound", bound}, {"ratio", ratio}};
    r.ladder.push_back(std::move(row));
    bound_ok = bound_ok && mean <= bound + 3.0 * se;
    ratio_ok = ratio_ok && ratio < prev_ratio;
    prev_ratio = ratio;
  }
  if (!bound_ok) r.notes.emplace_back("estimate exceeds max{1, 1 + 2 log d} + 3 std errors");
  if (!ratio_ok) r.notes.emplace_back("estimate/d does not decrease along the ladder");
  r.verdict = bound_ok && ratio_ok ? Verdict::Pass : Verdict::Fail;
  return r;
}

}  // namespace eqk

#endif  // EQK_EXPERIMENTS_HPP
