// eqk: command-line driver for heights, families, experiments, lattice bounds
// and quadrature checks. Exit codes: 0 success or flag, 1 check failure,
// 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eqk/eqk.hpp"

namespace {

using eqk::ojson;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Globals {
  unsigned threads = 0;
  int quad_radial = eqk::QuadratureRule::kDefaultRadial;
  int quad_angular = eqk::QuadratureRule::kDefaultAngular;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw eqk::InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw eqk::InvalidInput("malformed JSON in " + what + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

/// "1,0,-2" or "1.5,0,2" -> polynomial JSON; "[re im]" pairs are not accepted here.
nlohmann::json coeffs_json(const std::string& list) {
  nlohmann::json arr = nlohmann::json::array();
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      const long long v = std::stoll(item, &used);
      if (used == item.size()) {
        arr.push_back(v);
        continue;
      }
      const double x = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      arr.push_back(x);
    } catch (const std::logic_error&) {
      throw eqk::InvalidInput("bad coefficient '" + item + "'");
    }
  }
  return {{"coeffs", arr}};
}

eqk::ParsedPolynomial load_polynomial(const std::string& coeffs, const std::string& input) {
  if (coeffs.empty() == input.empty()) throw eqk::InvalidInput("give exactly one of --coeffs or --input");
  if (!coeffs.empty()) return eqk::polynomial_from_json(coeffs_json(coeffs));
  return eqk::polynomial_from_json(parse_json(read_input(input), input));
}

ojson quad_json(const Globals& g) { return {{"quad_radial", g.quad_radial}, {"quad_angular", g.quad_angular}}; }

int verdict_exit(eqk::Verdict v) { return v == eqk::Verdict::Fail ? kFail : kOk; }

std::string json_text(const ojson& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

struct HeightsArgs {
  std::string coeffs, input;
};

int cmd_heights(const HeightsArgs& a) {
  const auto p = load_polynomial(a.coeffs, a.input);
  ojson out;
  out["config"] = {{"command", "heights"}};
  if (!a.coeffs.empty()) out["config"]["coeffs"] = a.coeffs;
  if (!a.input.empty()) out["config"]["input"] = a.input;
  const auto& cp = p.complex;
  if (cp.degree() < 1) throw eqk::HeightError("h_B", "height undefined for constant polynomial");
  const auto roots = eqk::find_roots(cp);
  out["degree"] = cp.degree();
  out["h_b"] = eqk::height_bombieri(cp);
  out["h_fs"] = eqk::height_fubini_study(cp, roots);
  out["h_m"] = eqk::height_mahler(cp, roots);
  try {
    out["h_et"] = eqk::height_erdos_turan(cp);
  } catch (const eqk::HeightError& e) {
    // the other heights are still reported; the undefined one is null
    out["h_et"] = nullptr;
    std::cout << json_text(out);
    std::cerr << "eqk: " << e.height() << ": " << e.what() << "\n";
    return kUsage;
  }
  std::cout << json_text(out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct FamilyArgs {
  int degree = 1;
  double radius = 0.0;
  std::uint64_t limit = 1'000'000;
  std::optional<std::int64_t> shard;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  std::string out;
};

std::string family_csv_header(const ojson& config, int n) {
  std::string s = "# config: " + config.dump() + "\ndegree";
  for (int k = 0; k <= n; ++k) s += ",a_" + std::to_string(k);
  return s + "\n";
}

void append_row(std::string& s, const eqk::IntPolynomial& p) {
  s += std::to_string(p.degree());
  for (auto a : p.coeffs()) s += "," + std::to_string(a);
  s += "\n";
}

int cmd_enumerate(const FamilyArgs& a) {
  const eqk::BombieriFamily f(a.degree, a.radius);
  ojson config = {{"command", "enumerate"}, {"degree", a.degree}, {"radius", a.radius}, {"limit", a.limit}};
  if (a.shard) config["shard"] = *a.shard;
  config["cardinality"] = f.cardinality().str();
  std::string csv = family_csv_header(config, a.degree);
  if (a.shard) {
    eqk::FamilyCursor cur(f, a.shard);
    std::uint64_t emitted = 0;
    while (auto p = cur.next()) {
      if (++emitted > a.limit) throw eqk::InvalidInput("shard size exceeds limit " + std::to_string(a.limit));
      append_row(csv, *p);
    }
  } else {
    for (const auto& p : eqk::enumerate_family(f, a.limit)) append_row(csv, p);
  }
  write_output(a.out, csv);
  return kOk;
}

int cmd_sample(const FamilyArgs& a) {
  const eqk::BombieriFamily f(a.degree, a.radius);
  const ojson config = {
      {"command", "sample"}, {"degree", a.degree}, {"radius", a.radius}, {"count", a.count}, {"seed", a.seed}};
  std::string csv = family_csv_header(config, a.degree);
  for (std::size_t i = 0; i < a.count; ++i) append_row(csv, eqk::sample_member(f, a.seed, i));
  write_output(a.out, csv);
  return kOk;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::vector<int> degrees{4, 8, 16, 32};
  std::vector<int> dims{2, 8, 32};
  double tau = 1.0;
  std::size_t samples = 2000;
  std::size_t trials = 1'000'000;
  std::uint64_t seed = 0;
  std::string f = "inv1p2";
  std::string kind = "sampled";
  std::string out;  // prefix: writes <out>.json and <out>.csv
  std::string format = "json";
  double root_tol = 1e-12;
  int check_every = 100;
};

int emit_report(const eqk::ExperimentReport& r, const ExperimentArgs& a, unsigned threads) {
  std::cerr << "eqk: " << r.experiment << " ran with " << threads << " thread(s)\n";
  if (!a.out.empty()) {
    write_output(a.out + ".json", json_text(eqk::to_json(r)));
    write_output(a.out + ".csv", eqk::to_csv(r));
  } else if (a.format == "csv") {
    std::cout << eqk::to_csv(r);
  } else {
    std::cout << json_text(eqk::to_json(r));
  }
  if (r.verdict == eqk::Verdict::Flag) {
    std::cerr << "eqk: verdict flag";
    for (const auto& n : r.notes) std::cerr << "; " << n;
    std::cerr << "\n";
  }
  return verdict_exit(r.verdict);
}

eqk::ExperimentOptions experiment_options(const ExperimentArgs& a, const Globals& g) {
  eqk::ExperimentOptions o;
  o.threads = g.threads;
  o.quad_radial = g.quad_radial;
  o.quad_angular = g.quad_angular;
  o.roots.tol = a.root_tol;
  o.check_every = a.check_every;
  return o;
}

// ---------------------------------------------------------------------------

struct LatticeArgs {
  std::string lattice;  // JSON file
  std::string basis;    // "1,0;0,1": basis vectors separated by ';'
  std::string body = "ball:2,1";
  bool open = false;
  bool approx = false;
  double budget = eqk::kDefaultPointBudget;
  double r = 0.0;
  double mu = 1.0;
};

eqk::Lattice load_lattice(const LatticeArgs& a, int body_dim) {
  if (!a.lattice.empty() && !a.basis.empty()) throw eqk::InvalidInput("give at most one of --lattice or --basis");
  if (!a.lattice.empty()) return eqk::lattice_from_json(parse_json(read_input(a.lattice), a.lattice));
  if (a.basis.empty()) return eqk::Lattice::integer(body_dim);
  std::vector<std::vector<double>> vecs;
  std::stringstream ss(a.basis);
  std::string vec;
  while (std::getline(ss, vec, ';')) {
    std::vector<double> v;
    std::stringstream vs(vec);
    std::string x;
    while (std::getline(vs, x, ',')) {
      try {
        v.push_back(std::stod(x));
      } catch (const std::logic_error&) {
        throw eqk::InvalidInput("bad basis entry '" + x + "'");
      }
    }
    vecs.push_back(std::move(v));
  }
  nlohmann::json j = {{"basis", vecs}};
  return eqk::lattice_from_json(j);
}

int cmd_lattice(const std::string& op, const LatticeArgs& a, const Globals& g) {
  const auto K = eqk::ConvexBody::parse(a.body);
  const auto L = load_lattice(a, K.dim());
  eqk::MinimaOptions mo;
  mo.approx = a.approx;
  mo.budget = a.budget;
  mo.threads = eqk::resolve_threads(g.threads);
  ojson out;
  out["config"] = {{"command", "lattice " + op}, {"lattice", eqk::to_json(L)}, {"body", a.body},
                   {"approx", a.approx},         {"budget", a.budget}};
  if (op == "count") {
    out["config"]["open"] = a.open;
    out["count"] = eqk::count_points(L, K, a.open, a.budget, mo.threads);
  } else if (op == "minima") {
    const auto prof = eqk::successive_minima(L, K, mo);
    out["lambdas"] = prof.lambdas;
    out["lambda_z"] = prof.lambda_z;
    out["approximate"] = prof.approximate;
    out["minima_coords"] = prof.minima_coords;
  } else if (op == "bounds") {
    const auto prof = eqk::successive_minima(L, K, mo);
    const auto b = eqk::freyer_lucas_bounds(L, K, prof);
    out["lambdas"] = prof.lambdas;
    out["upper"] = b.upper;
    out["lower"] = b.lower ? ojson(*b.lower) : ojson(nullptr);
    const auto closed = eqk::count_points(L, K, false, a.budget, mo.threads);
    const auto interior = eqk::count_points(L, K, true, a.budget, mo.threads);
    out["count_closed"] = closed;
    out["count_interior"] = interior;
    const bool ok = static_cast<double>(closed) <= b.upper &&
                    (!b.lower || *b.lower <= static_cast<double>(interior));
    out["holds"] = ok;
    std::cout << json_text(out);
    return ok ? kOk : kFail;
  } else if (op == "quotient") {
    out["config"]["r"] = a.r;
    out["config"]["mu"] = a.mu;
    const auto q = eqk::quotient_bound_check(L, K, a.r, a.mu, mo);
    out["count_body"] = q.count_body;
    out["count_scaled"] = q.count_scaled;
    out["observed"] = q.observed;
    out["bound"] = q.bound;
    out["lambda_z"] = q.lambda_z;
    out["holds"] = q.observed <= q.bound;
    std::cout << json_text(out);
    return q.observed <= q.bound ? kOk : kFail;
  }
  std::cout << json_text(out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct QuadArgs {
  int max_degree = 12;
  std::string coeffs, input;
};

int cmd_quadrature_check(const QuadArgs& a, const Globals& g) {
  const eqk::QuadratureRule rule(g.quad_radial, g.quad_angular);
  const unsigned threads = eqk::resolve_threads(g.threads);
  ojson out;
  out["config"] = {{"command", "quadrature-check"}, {"max_degree", a.max_degree}};
  out["config"].update(quad_json(g));
  bool ok = true;
  const double mass_err = std::abs(eqk::quadrature_total_mass(rule) - 1.0);
  ok = ok && mass_err <= 1e-12;
  double gram_err = 0.0;
  for (int n = 0; n <= a.max_degree; ++n)
    gram_err = std::max(gram_err, eqk::gram_check(eqk::SectionLattice(n), rule, threads));
  ok = ok && gram_err <= 1e-8;
  const double log_err =
      std::abs(eqk::quadrature_log_integral(eqk::SectionCoeffs::monomial(1, 0), rule, threads) + 0.5);
  ok = ok && log_err <= 1e-8;
  out["total_mass_error"] = mass_err;
  out["gram_max_error"] = gram_err;
  out["log_Z1_error"] = log_err;
  if (!a.coeffs.empty() || !a.input.empty()) {
    const auto p = load_polynomial(a.coeffs, a.input);
    const double h = eqk::height_fubini_study(p.complex);
    const double q = eqk::quadrature_log_norm(eqk::poly_to_section(p.complex), rule, threads);
    out["h_fs"] = h;
    out["quadrature_log_norm"] = q;
    out["identity_error"] = std::abs(q - (h - 0.5));
    ok = ok && std::abs(q - (h - 0.5)) < 1e-5;
  }
  out["passed"] = ok;
  std::cout << json_text(out);
  return ok ? kOk : kFail;
}

// ---------------------------------------------------------------------------

struct SvgArgs {
  std::string coeffs, input, batch, out;
  std::optional<int> degree;
  double radius = 1.0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  bool sphere = false;
  double view = 0.0;
};

/// Batch CSV as written by `sample`/`enumerate`: comment lines, a header,
/// then "degree,a_0,...,a_n" rows.
std::vector<eqk::IntPolynomial> read_batch(const std::string& path) {
  std::vector<eqk::IntPolynomial> out;
  std::stringstream in(read_input(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("degree", 0) == 0) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<std::int64_t> v;
    while (std::getline(ls, cell, ',')) {
      try {
        v.push_back(std::stoll(cell));
      } catch (const std::logic_error&) {
        throw eqk::InvalidInput("bad batch cell '" + cell + "'");
      }
    }
    if (v.size() < 2 || v[0] + 2 != static_cast<std::int64_t>(v.size()))
      throw eqk::InvalidInput("batch row does not match its degree: " + line);
    out.emplace_back(std::vector<std::int64_t>(v.begin() + 1, v.end()));
  }
  return out;
}

int cmd_roots_svg(const SvgArgs& a) {
  if (a.out.empty()) throw eqk::InvalidInput("--out is required");
  ojson config = {{"command", "roots-svg"}, {"sphere", a.sphere}, {"view", a.view}};
  std::vector<eqk::ComplexPolynomial> polys;
  std::string title;
  const int sources = !a.coeffs.empty() + !a.input.empty() + !a.batch.empty() + a.degree.has_value();
  if (sources != 1) throw eqk::InvalidInput("give exactly one of --coeffs, --input, --batch, --degree");
  if (!a.batch.empty()) {
    config["batch"] = a.batch;
    for (auto& p : read_batch(a.batch)) polys.emplace_back(p);
    title = "batch " + a.batch;
  } else if (a.degree) {
    config.update({{"degree", *a.degree}, {"radius", a.radius}, {"count", a.count}, {"seed", a.seed}});
    const eqk::BombieriFamily f(*a.degree, a.radius);
    for (std::size_t i = 0; i < a.count; ++i) polys.emplace_back(eqk::sample_member(f, a.seed, i));
    title = "P_{" + std::to_string(*a.degree) + "," + eqk::format_double(a.radius) + "} samples";
  } else {
    if (!a.coeffs.empty()) config["coeffs"] = a.coeffs;
    if (!a.input.empty()) config["input"] = a.input;
    polys.push_back(load_polynomial(a.coeffs, a.input).complex);
    title = "roots";
  }
  std::vector<eqk::Complex> pts;
  for (const auto& p : polys) {
    if (p.degree() < 1) continue;
    for (auto z : eqk::find_roots(p).flattened()) pts.push_back(z);
  }
  eqk::SvgOptions so;
  so.sphere_panel = a.sphere;
  so.view_radius = a.view;
  so.title = title;
  so.config_echo = config.dump();
  write_output(a.out, eqk::roots_svg(pts, so));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eqk: heights, equidistribution experiments and lattice-point bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (0: EQK_THREADS or logical cores)");
  app.add_option("--quad-radial", g.quad_radial, "Gauss-Legendre nodes in u = r^2/(1+r^2)")->check(CLI::PositiveNumber);
  app.add_option("--quad-angular", g.quad_angular, "angular nodes")->check(CLI::PositiveNumber);

  HeightsArgs ha;
  auto* heights = app.add_subcommand("heights", "all four heights of a polynomial");
  heights->add_option("--coeffs", ha.coeffs, "a_0,a_1,...,a_n");
  heights->add_option("--input", ha.input, "polynomial JSON file ('-' for stdin)");

  FamilyArgs fa;
  auto* enumerate = app.add_subcommand("enumerate", "list P_{n,r} in odometer order as CSV");
  enumerate->add_option("--degree", fa.degree)->required();
  enumerate->add_option("--radius", fa.radius)->required();
  enumerate->add_option("--limit", fa.limit, "refuse families larger than this");
  enumerate->add_option("--shard", fa.shard, "fix the leading coefficient");
  enumerate->add_option("--out", fa.out, "CSV path (default stdout)");
  auto* sample = app.add_subcommand("sample", "uniform samples of P_{n,r} as CSV");
  sample->add_option("--degree", fa.degree)->required();
  sample->add_option("--radius", fa.radius)->required();
  sample->add_option("--count", fa.count)->required();
  sample->add_option("--seed", fa.seed)->required();
  sample->add_option("--out", fa.out, "CSV path (default stdout)");

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "run an equidistribution experiment");
  experiment->require_subcommand(1);
  auto common = [&](CLI::App* c, bool sampled) {
    c->add_option("--seed", ea.seed)->required();
    c->add_option("--out", ea.out, "write <out>.json and <out>.csv");
    c->add_option("--format", ea.format, "stdout format")->check(CLI::IsMember({"json", "csv"}));
    if (sampled) {
      c->add_option("--degrees", ea.degrees)->delimiter(',');
      c->add_option("--tau", ea.tau);
      c->add_option("--root-tol", ea.root_tol);
    }
  };
  auto* e_height = experiment->add_subcommand("height-conv", "mean |tau + 1/2 - h_FS| per degree");
  common(e_height, true);
  e_height->add_option("--samples", ea.samples);
  e_height->add_option("--check-every", ea.check_every, "quadrature identity stride (0 disables)");
  auto* e_testfn = experiment->add_subcommand("testfn", "mean |(1/n) sum f - int f dmu_FS| per degree");
  common(e_testfn, true);
  e_testfn->add_option("--f", ea.f, "test function id");
  e_testfn->add_option("--samples", ea.samples);
  e_testfn->add_option("--check-every", ea.check_every);
  auto* e_seq = experiment->add_subcommand("sequence", "criterion h_B + 1/2 - h_FS along a sequence");
  common(e_seq, true);
  e_seq->add_option("--kind", ea.kind)->check(CLI::IsMember({"xn1", "sampled", "shifted"}));
  e_seq->add_option("--f", ea.f);
  auto* e_bilu = experiment->add_subcommand("bilu", "unit-circle roots against sampled roots");
  common(e_bilu, true);
  e_bilu->add_option("--f", ea.f);
  e_bilu->add_option("--samples", ea.samples);
  auto* e_condb = experiment->add_subcommand("condition-b", "Monte Carlo ball average of |log|<x,u>||");
  common(e_condb, false);
  e_condb->add_option("--dims", ea.dims)->delimiter(',');
  e_condb->add_option("--trials", ea.trials);

  LatticeArgs la;
  auto* lattice = app.add_subcommand("lattice", "lattice points in convex bodies");
  lattice->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> lat_ops;
  for (const char* op : {"count", "minima", "bounds", "quotient"}) {
    auto* c = lattice->add_subcommand(op);
    c->add_option("--lattice", la.lattice, "lattice JSON file");
    c->add_option("--basis", la.basis, "basis vectors, e.g. 1,0;0,1 (default Z^d)");
    c->add_option("--body", la.body, "ellipsoid:a11,..|box:w1,..|ball:d,R|bombieri:n,r");
    c->add_option("--budget", la.budget, "candidate budget");
    c->add_flag("--approx", la.approx, "allow approximate minima");
    if (std::string(op) == "count") c->add_flag("--open", la.open, "count the interior");
    if (std::string(op) == "quotient") {
      c->add_option("--r", la.r, "inner ball radius")->required();
      c->add_option("--mu", la.mu, "scaling factor")->required();
    }
    lat_ops.emplace_back(op, c);
  }

  QuadArgs qa;
  auto* quad = app.add_subcommand("quadrature-check", "closed-form checks of the configured rule");
  quad->add_option("--max-degree", qa.max_degree);
  quad->add_option("--coeffs", qa.coeffs, "also check the h_FS identity for this polynomial");
  quad->add_option("--input", qa.input);

  SvgArgs sa;
  auto* svg = app.add_subcommand("roots-svg", "SVG plot of roots");
  svg->add_option("--coeffs", sa.coeffs);
  svg->add_option("--input", sa.input, "polynomial JSON");
  svg->add_option("--batch", sa.batch, "CSV batch from sample/enumerate");
  svg->add_option("--degree", sa.degree, "sample a batch of this degree");
  svg->add_option("--radius", sa.radius);
  svg->add_option("--count", sa.count);
  svg->add_option("--seed", sa.seed);
  svg->add_option("--view", sa.view, "half-width of the plane panel (0: auto)");
  svg->add_flag("--sphere", sa.sphere, "add a stereographic sphere panel");
  svg->add_option("--out", sa.out)->required();

  bool st_json = false;
  auto* selftest = app.add_subcommand("selftest", "closed-form oracle matrix");
  selftest->add_flag("--json", st_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*heights) return cmd_heights(ha);
    if (*enumerate) return cmd_enumerate(fa);
    if (*sample) return cmd_sample(fa);
    if (*experiment) {
      const auto opt = experiment_options(ea, g);
      const unsigned threads = eqk::resolve_threads(g.threads);
      if (*e_height)
        return emit_report(eqk::experiment_height_convergence(ea.degrees, ea.tau, ea.samples, ea.seed, opt), ea,
                           threads);
      if (*e_testfn)
        return emit_report(eqk::experiment_testfn_convergence(ea.degrees, ea.tau, eqk::find_test_function(ea.f),
                                                              ea.samples, ea.seed, opt),
                           ea, threads);
      if (*e_seq)
        return emit_report(
            eqk::experiment_sequence(ea.kind, ea.degrees, ea.tau, eqk::find_test_function(ea.f), ea.seed, opt), ea,
            threads);
      if (*e_bilu) {
        if (!e_bilu->count("--f")) ea.f = "inv1p2sq";
        if (!e_bilu->count("--degrees")) ea.degrees = {32};
        return emit_report(eqk::experiment_bilu_contrast(ea.degrees, ea.tau, eqk::find_test_function(ea.f),
                                                         ea.samples, ea.seed, opt),
                           ea, threads);
      }
      if (*e_condb) return emit_report(eqk::experiment_condition_b(ea.dims, ea.trials, ea.seed, opt), ea, threads);
    }
    if (*lattice)
      for (const auto& [name, c] : lat_ops)
        if (*c) return cmd_lattice(name, la, g);
    if (*quad) return cmd_quadrature_check(qa, g);
    if (*svg) return cmd_roots_svg(sa);
    if (*selftest) {
      eqk::SelftestOptions so;
      so.quad_radial = g.quad_radial;
      so.quad_angular = g.quad_angular;
      so.threads = eqk::resolve_threads(g.threads);
      const auto results = eqk::run_selftest(so);
      if (st_json) {
        ojson j = {{"config", {{"command", "selftest"}}}};
        j["config"].update(quad_json(g));
        j.update(eqk::to_json(results));
        std::cout << json_text(j);
      } else {
        std::cout << eqk::format_matrix(results);
      }
      return eqk::all_passed(results) ? kOk : kFail;
    }
  } catch (const eqk::HeightError& e) {
    std::cerr << "eqk: " << e.height() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const eqk::InvalidInput& e) {
    std::cerr << "eqk: " << e.what() << "\n";
    return kUsage;
  } catch (const eqk::BudgetExceeded& e) {
    std::cerr << "eqk: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "eqk: error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
