#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "jacobi_riesz/config.hpp"
#include "jacobi_riesz/csv.hpp"

using namespace jacobi_riesz;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(JR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Run r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// last line of a one-row CSV, split on commas
std::vector<std::string> row(const std::string& out) {
  std::string s = out.substr(0, out.size() - 1);
  s = s.substr(s.rfind('\n') + 1);
  std::vector<std::string> cells;
  std::stringstream ss(s);
  std::string c;
  while (std::getline(ss, c, ',')) cells.push_back(c);
  return cells;
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("jr_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Config, ParseAndMerge) {
  const auto d = scratch("cfg");
  std::ofstream(d / "c.txt") << "# comment\nalpha = 1.5\np=1.5,2,3  # trailing\n\nseed=42\n";
  auto c = RunConfig::from_file((d / "c.txt").string());
  EXPECT_DOUBLE_EQ(c.num("alpha", 0.0), 1.5);
  EXPECT_EQ(c.list("p", {}), (std::vector<double>{1.5, 2.0, 3.0}));
  EXPECT_EQ(c.seed(), 42u);
  RunConfig over;
  over.set("alpha", "2");
  c.merge(over);
  EXPECT_DOUBLE_EQ(c.num("alpha", 0.0), 2.0);
  c.set("tol", "-1");
  EXPECT_THROW(c.tol("tol", 1.0), ConfigurationError);
  c.set("n", "2x");
  EXPECT_THROW(c.integer("n", 0), ConfigurationError);
  std::ofstream(d / "bad.txt") << "novalue\n";
  EXPECT_THROW(RunConfig::from_file((d / "bad.txt").string()), ConfigurationError);
}

TEST(Csv, RoundTripFormatting) {
  CsvTable t{{"a", "b"}};
  t.comments.push_back("seed=1");
  t.add(0.1, 3);
  std::ostringstream os;
  t.write(os);
  EXPECT_EQ(os.str(), "# seed=1\na,b\n0.10000000000000001,3\n");
  EXPECT_THROW(t.add(1.0), ShapeError);
}

TEST(Cli, EvalPoly) {
  const auto r = run("eval poly --n 2 --alpha 1 --beta 0 --x 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(row(r.out).back(), "3");
}

TEST(Cli, EvalPoissonSideBySide) {
  const auto r = run("eval poisson --t 1 --theta 1 --varphi 2 --alpha 0 --beta 0");
  ASSERT_EQ(r.code, 0);
  const auto c = row(r.out);
  ASSERT_GE(c.size(), 7u);
  EXPECT_NEAR(std::stod(c[5]), std::stod(c[6]), 1e-8);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("eval riesz-kernel --theta 1 --varphi 1").code, 2);
  EXPECT_EQ(run("eval poly --n 2 --x 2").code, 2);
  EXPECT_EQ(run("eval poly --bogus 1").code, 2);
  EXPECT_EQ(run("eval nothing").code, 2);
  EXPECT_EQ(run("verify nothing").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify identities --tol -1").code, 2);
  EXPECT_EQ(run("verify identities").code, 0);
  // an impossible bound turns into an assertion failure
  EXPECT_EQ(run("verify ball-measure --set C=1").code, 1);
  EXPECT_EQ(run("eval t-kernel --theta 1 --varphi 2 --manifold sphere --d 3").code, 0);
}

TEST(Cli, ConfigFileAndFlagsWin) {
  const auto d = scratch("cfgfile");
  std::ofstream(d / "c.txt") << "n=2\nalpha=1\nbeta=0\nx=1\n";
  auto r = run("eval poly --config " + (d / "c.txt").string());
  EXPECT_EQ(row(r.out).back(), "3");
  r = run("eval poly --config " + (d / "c.txt").string() + " --n 0");
  EXPECT_EQ(row(r.out).back(), "1");
}

TEST(Cli, DeterministicCsvWithSeedHeader) {
  const auto a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
  ASSERT_EQ(run("verify lemma0 --trials 50 --seed 5 --out " + a.string()).code, 0);
  ASSERT_EQ(run("verify lemma0 --trials 50 --seed 5 --out " + b.string()).code, 0);
  ASSERT_EQ(run("verify lemma0 --trials 50 --seed 6 --out " + c.string()).code, 0);
  const auto fa = slurp(a / "lemma0_tuples.csv");
  ASSERT_FALSE(fa.empty());
  EXPECT_EQ(fa, slurp(b / "lemma0_tuples.csv"));
  EXPECT_NE(fa, slurp(c / "lemma0_tuples.csv"));
  EXPECT_NE(fa.find("# seed=5"), std::string::npos);
}

TEST(Cli, DocumentedHeaders) {
  const auto d = scratch("headers");
  ASSERT_EQ(run("verify sphere --trials 3 --out " + d.string()).code, 0);
  EXPECT_NE(slurp(d / "sphere_riesz.csv").find("\ntrial,p,input_norm,output_norm,ratio\n"), std::string::npos);
  ASSERT_EQ(run("verify weights --trials 2 --grid 60 --out " + d.string()).code, 0);
  EXPECT_NE(slurp(d / "weights_harness.csv").find("\np,weight_id,lhs,rhs,ratio\n"), std::string::npos);
  ASSERT_EQ(run("verify kernel-growth --a 2 --b 0 --alpha 0 --beta 0 --J 1 --grid 6 --rows 1 --out " + d.string()).code,
            0);
  EXPECT_NE(slurp(d / "kernel-growth_a2_b0_alpha0_beta0_summary.csv").find("\nj,mode,sup_ratio\n"), std::string::npos);
  EXPECT_NE(slurp(d / "kernel-growth_a2_b0_alpha0_beta0_rows.csv").find("\nj,theta,varphi,mode,kernel,ball,ratio\n"),
            std::string::npos);
}
