#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "maass/qseries.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Proc {
  int code = -1;
  std::string out, err;
};

fs::path workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("maass_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Proc run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto out = workdir() / ("out" + std::to_string(counter) + ".txt");
  const auto err = workdir() / ("err" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      env + " \"" + MAASS_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Proc r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = workdir() / name;
  std::ofstream(p) << text;
  return p;
}

json exported(const std::string& name, long precision) {
  const Proc r = run("fixtures export --name " + name + " --precision " + std::to_string(precision));
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, FixtureExportSchema) {
  const json j = exported("j744", 32);
  for (const char* key : {"weight2", "level", "character", "period", "n0", "growth_C", "a", "b"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["weight2"], 0);
  EXPECT_EQ(j["character"]["modulus"], 1);
  const auto& a = j["a"];
  ASSERT_GE(a.size(), 2u);
  EXPECT_EQ(a[0][0], -1);
  EXPECT_EQ(a[0][1].get<double>(), 1.0);
  EXPECT_EQ(a[1][0], 1);
  EXPECT_EQ(a[1][1].get<double>(), 196884.0);
  for (size_t i = 1; i < a.size(); ++i) EXPECT_LT(a[i - 1][0].get<long>(), a[i][0].get<long>());
  EXPECT_TRUE(j["b"].empty());
}

TEST(Cli, FixtureListAndRoundTrip) {
  const Proc l = run("fixtures list");
  EXPECT_EQ(l.code, 0);
  EXPECT_NE(l.out.find("theta"), std::string::npos);
  const auto path = workdir() / "delta64.json";
  EXPECT_EQ(run("fixtures export --name delta --precision 64 -o " + path.string()).code, 0);
  const Proc a = run("lseries --fixture delta --no-integral --format csv");
  const Proc b = run("lseries --input " + path.string() + " --no-integral --format csv");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, LSeriesBatteryWithAgreementColumn) {
  const Proc r = run("lseries --fixture delta --battery default");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_GE(j["records"].size(), 10u);
  for (const auto& rec : j["records"]) {
    EXPECT_EQ(rec["series"]["method"], "series");
    EXPECT_LT(rec["agreement"].get<double>(), 1e-9);
  }
}

TEST(Cli, ClassicalValueAgainstPartialSums) {
  const Proc r = run("lseries --fixture delta --classical --s 12");
  ASSERT_EQ(r.code, 0) << r.err;
  const double v = json::parse(r.out)["records"][0]["value"][0].get<double>();
  // Σ τ(n) n^{−12}: partial sums from exact τ(n); |τ(n)| ≤ d(n) n^{11/2} ≤ 2√n·n^{11/2} bounds the tail.
  const auto d = maass::qseries::delta_qexp(2001);
  double s = 0;
  for (long n = 1; n <= 2000; ++n) s += d.coeff(n).convert_to<double>() * std::pow(double(n), -12.0);
  const double tail = 2.0 / (5.0 * std::pow(2000.0, 5.0));
  EXPECT_NEAR(v, s, 1e-9 + tail);
}

TEST(Cli, FECheckFixtures) {
  const Proc d = run("fe-check --fixture delta");
  EXPECT_EQ(d.code, 0) << d.err;
  EXPECT_TRUE(json::parse(d.out)["pass"].get<bool>());
  const Proc t = run("fe-check --fixture theta");
  EXPECT_EQ(t.code, 0) << t.err;
  const json jt = json::parse(t.out);
  EXPECT_NEAR(jt["records"][0]["plain"]["prefactor"][0].get<double>(), std::pow(2.0, 1.5), 1e-14);
}

TEST(Cli, FECheckPerturbedInputFails) {
  json j = exported("delta", 64);
  for (auto& e : j["a"])
    if (e[0] == 2) e[1] = e[1].get<double>() * (1 + 1e-3);
  const auto path = write("perturbed_delta.json", j.dump());
  const Proc r = run("fe-check --input " + path.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("witness"), std::string::npos);
  EXPECT_FALSE(json::parse(r.out)["pass"].get<bool>());
}

TEST(Cli, ConverseAndCsv) {
  const Proc r = run("converse --fixture delta --dcap 1");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["verdict"], "consistent-with-modular");
  const Proc c = run("converse --fixture delta --format csv");
  ASSERT_EQ(c.code, 0);
  std::istringstream in(c.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 11);  // header + one row per (D, χ, φ)
  EXPECT_EQ(c.out.rfind("D,chi_index,chi_id,phi_id,pass", 0), 0u);
}

TEST(Cli, SummationTerms) {
  const Proc r = run("summation-check --terms gf,mf --k 12 --nmax 5");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["terms"].size(), 10u);
}

TEST(Cli, SummationResidualReduction) {
  const auto f = write("zero_k2.json",
                       R"({"weight2":4,"level":1,"character":{"modulus":1,"index":0},"period":1,"n0":0,)"
                       R"("growth_C":1.0,"a":[],"b":[],"finite":true})");
  const Proc r = run("summation-check --terms residual --input " + f.string() + " --g-fixture j744 --g-precision 128");
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("lseries --input " + write("empty.json", "").string()).code, 2);
  EXPECT_EQ(run("lseries --input " + (workdir() / "missing.json").string()).code, 2);
  json j = exported("delta", 16);
  json no_level = j;
  no_level.erase("level");
  EXPECT_EQ(run("lseries --input " + write("nolevel.json", no_level.dump()).string()).code, 2);
  json unsorted = j;
  std::swap(unsorted["a"][0], unsorted["a"][1]);
  EXPECT_EQ(run("lseries --input " + write("unsorted.json", unsorted.dump()).string()).code, 2);
  json extra = j;
  extra["weight"] = 12;
  EXPECT_EQ(run("lseries --input " + write("extra.json", extra.dump()).string()).code, 2);
  json badchar = j;
  badchar["character"] = {{"modulus", 3}, {"index", 1}};
  EXPECT_EQ(run("lseries --input " + write("badchar.json", badchar.dump()).string()).code, 2);
  EXPECT_EQ(run("lseries --fixture nosuch").code, 2);
  EXPECT_EQ(run("lseries").code, 2);
  EXPECT_EQ(run("converse --fixture delta --dcap 0").code, 2);
  EXPECT_EQ(run("lseries --fixture delta --battery custom --battery-count 0").code, 2);
  EXPECT_EQ(run("fe-check --fixture delta --tol -1").code, 2);
  EXPECT_EQ(run("nosuchcommand").code, 2);
}

TEST(Cli, InsufficientFileDataIsInputError) {
  const auto path = workdir() / "delta4.json";
  ASSERT_EQ(run("fixtures export --name delta --precision 4 -o " + path.string()).code, 0);
  const Proc r = run("lseries --input " + path.string() + " --battery custom --support-lo 0.05 --support-hi 0.1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("needed up to"), std::string::npos);
}

TEST(Cli, DomainErrors) {
  EXPECT_EQ(run("fe-check --fixture theta --modulus 2").code, 3);
  EXPECT_EQ(run("summation-check --terms gf --k 3").code, 3);
}

TEST(Cli, FixturePrecisionRetry) {
  const Proc r = run("fe-check --fixture theta --precision 16 --modulus 3");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("regenerating fixture theta"), std::string::npos);
}

TEST(Cli, ThreadCountDoesNotChangeReports) {
  const Proc a = run("fe-check --fixture delta --modulus 3 --format csv", "MAASS_LSERIES_THREADS=1");
  const Proc b = run("fe-check --fixture delta --modulus 3 --format csv", "MAASS_LSERIES_THREADS=4");
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}
