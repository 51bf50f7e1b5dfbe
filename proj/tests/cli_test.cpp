#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(EQK_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("eqk_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

TEST(Cli, HeightsMatchClosedForms) {
  const auto r = run("heights --coeffs 1,0,1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.begin().key(), "config");
  EXPECT_NEAR(j["h_fs"].get<double>(), 0.5 * std::log(2.0), 1e-12);
  EXPECT_NEAR(j["h_b"].get<double>(), 0.0, 1e-15);
  EXPECT_NEAR(j["h_m"].get<double>(), 0.0, 1e-15);
  EXPECT_NEAR(j["h_et"].get<double>(), 0.5 * std::log(2.0), 1e-12);
}

TEST(Cli, HeightsFromFile) {
  const auto path = scratch("poly.json");
  std::ofstream(path) << R"({"degree": 2, "coeffs": [2, 3, 2]})";
  const auto r = run("heights --input " + path.string());
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["h_et"].get<double>(), 0.5 * std::log(7.0 / 2.0), 1e-12);
}

TEST(Cli, HeightsErrors) {
  const auto zero = run("heights --coeffs 0,1");
  EXPECT_EQ(zero.code, 2);
  EXPECT_TRUE(nlohmann::json::parse(zero.out)["h_et"].is_null());
  EXPECT_EQ(run("heights --coeffs 5").code, 2);
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{not json";
  EXPECT_EQ(run("heights --input " + bad.string()).code, 2);
  EXPECT_EQ(run("heights --coeffs 1,x").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("heights --nope 1").code, 2);
  EXPECT_EQ(run("experiment height-conv").code, 2);  // --seed is required
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, EnumerateAndSample) {
  const auto e = run("enumerate --degree 1 --radius 0");
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(e.out.rfind("# config: ", 0), 0u);
  EXPECT_NE(e.out.find("\"cardinality\":\"6\""), std::string::npos);
  EXPECT_EQ(std::count(e.out.begin(), e.out.end(), '\n'), 8);  // config, header, 6 rows
  EXPECT_EQ(run("enumerate --degree 30 --radius 1 --limit 100").code, 2);
  const auto a = run("sample --degree 5 --radius 0.5 --count 20 --seed 3");
  const auto b = run("sample --degree 5 --radius 0.5 --count 20 --seed 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("sample --degree 3 --radius -1 --count 2 --seed 1").code, 2);
}

TEST(Cli, LatticeCommands) {
  auto count = run("lattice count --body ball:2,2");
  ASSERT_EQ(count.code, 0);
  EXPECT_EQ(nlohmann::json::parse(count.out)["count"], 13);
  count = run("lattice count --body ball:2,2 --open");
  EXPECT_EQ(nlohmann::json::parse(count.out)["count"], 9);
  const auto bounds = run("lattice bounds --body ball:2,2");
  ASSERT_EQ(bounds.code, 0);
  const auto jb = nlohmann::json::parse(bounds.out);
  EXPECT_NEAR(jb["upper"].get<double>(), 9 * M_PI, 1e-9);
  EXPECT_NEAR(jb["lower"].get<double>(), M_PI, 1e-9);
  const auto q = run("lattice quotient --body ball:2,2 --r 1 --mu 2");
  ASSERT_EQ(q.code, 0);
  const auto jq = nlohmann::json::parse(q.out);
  EXPECT_EQ(jq["count_scaled"], 49);
  EXPECT_EQ(jq["count_body"], 13);
  const auto minima = run("lattice minima --basis \"1,0;0,3\" --body ball:2,1");
  ASSERT_EQ(minima.code, 0);
  const auto lam = nlohmann::json::parse(minima.out)["lambdas"];
  EXPECT_NEAR(lam[0].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(lam[1].get<double>(), 3.0, 1e-12);
  EXPECT_EQ(run("lattice count --body ball:2,2 --budget 3").code, 2);
  EXPECT_EQ(run("lattice count --body sphere:2").code, 2);
}

TEST(Cli, ExperimentWritesReports) {
  const auto prefix = scratch("condb");
  const auto r = run("experiment condition-b --seed 1 --dims 2,3 --trials 5000 --out " + prefix.string());
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(slurp(prefix.string() + ".json"));
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["config"]["seed"], 1);
  const auto csv = slurp(prefix.string() + ".csv");
  EXPECT_EQ(csv.rfind("# experiment: condition-b", 0), 0u);
  const auto again = run("--threads 2 experiment condition-b --seed 1 --dims 2,3 --trials 5000 --format csv");
  EXPECT_EQ(again.out, csv);
}

TEST(Cli, SequenceFlagExitsZero) {
  const auto r = run("experiment sequence --seed 0 --kind xn1 --degrees 4,8,16");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "flag");
}

TEST(Cli, QuadratureCheckAndSelftest) {
  EXPECT_EQ(run("quadrature-check --max-degree 4 --coeffs 1,2,3").code, 0);
  const auto st = run("selftest --json");
  ASSERT_EQ(st.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(st.out)["passed"].get<bool>());
  EXPECT_EQ(run("--quad-radial 1 selftest").code, 1);
}

std::size_t markers(const boost::property_tree::ptree& t, const std::string& cls) {
  std::size_t n = 0;
  for (const auto& [k, v] : t) {
    if (k == "circle" && v.get<std::string>("<xmlattr>.class", "") == cls) ++n;
    n += markers(v, cls);
  }
  return n;
}

TEST(Cli, RootsSvgIsWellFormed) {
  const auto out = scratch("unity.svg");
  ASSERT_EQ(run("roots-svg --coeffs -1,0,0,0,0,0,0,0,0,0,0,0,1 --sphere --out " + out.string()).code, 0);
  boost::property_tree::ptree tree;
  ASSERT_NO_THROW(boost::property_tree::read_xml(out.string(), tree));
  EXPECT_EQ(markers(tree, "root"), 12u);
  EXPECT_EQ(markers(tree, "root-sphere"), 12u);

  const auto batch = scratch("batch.csv");
  std::ofstream(batch) << run("sample --degree 6 --radius 0.5 --count 5 --seed 2").out;
  const auto many = scratch("batch.svg");
  ASSERT_EQ(run("roots-svg --batch " + batch.string() + " --out " + many.string()).code, 0);
  tree.clear();
  ASSERT_NO_THROW(boost::property_tree::read_xml(many.string(), tree));
  EXPECT_EQ(markers(tree, "root"), 30u);

  const auto empty_batch = scratch("empty.csv");
  std::ofstream(empty_batch) << "degree,a_0,a_1\n";
  const auto empty = scratch("empty.svg");
  ASSERT_EQ(run("roots-svg --batch " + empty_batch.string() + " --out " + empty.string()).code, 0);
  tree.clear();
  ASSERT_NO_THROW(boost::property_tree::read_xml(empty.string(), tree));
  EXPECT_EQ(markers(tree, "root"), 0u);
}

}  // namespace
