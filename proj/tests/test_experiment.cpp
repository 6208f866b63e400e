#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "experiment.hpp"

using namespace gardner;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("gardner_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("run writes the expected files") {
  const auto dir = scratch("run");
  auto c = parse_config("experiment = example1\nN = 100\nt_end = 5\nreport_times = 0, 2.5, 5\n");
  c.output_dir = dir.string();
  const auto out = run_experiment(c);
  CHECK(out.exit_status == 0);
  CHECK(out.steps_completed == 50);
  REQUIRE(out.final_linf);
  CHECK(std::abs(*out.final_linf - 2.1665e-4) / 2.1665e-4 < 0.02);

  const auto err = lines(slurp(dir / "errors.csv"));
  REQUIRE(err.size() == 4);
  CHECK(err[0] == "t,linf,argmax_x");
  CHECK(err[3].rfind("5.00000000e+00,2.166", 0) == 0);

  const auto cons = lines(slurp(dir / "conservation.csv"));
  REQUIRE(cons.size() == 4);
  CHECK(cons[0] == "t,M,E,H,C_M,C_E,C_H");
  CHECK(cons[1].find("0.00000000e+00,0.00000000e+00,0.00000000e+00") != std::string::npos);

  const auto snaps = lines(slurp(dir / "snapshots.csv"));
  CHECK(snaps[0] == "t,x,u,v");
  CHECK(snaps.size() == 1 + 2 * 251);  // two snapshots, 5 samples per unit on [-20, 30]

  const auto summary = slurp(dir / "summary.txt");
  CHECK(summary.find("experiment = example1") != std::string::npos);
  CHECK(summary.find("status = ok") != std::string::npos);
  CHECK(parse_config(summary.substr(0, summary.find("h = "))) == c);
}

TEST_CASE("output is reproducible byte for byte") {
  const auto d1 = scratch("rep1");
  const auto d2 = scratch("rep2");
  auto c = parse_config("experiment = example2\nN = 100\nt_end = 2\nsnapshot_times = 0, 1, 2\n");
  c.output_dir = d1.string();
  run_experiment(c);
  c.output_dir = d2.string();
  run_experiment(c);
  for (const char* f : {"snapshots.csv", "conservation.csv", "errors.csv"}) {
    CHECK(slurp(d1 / f) == slurp(d2 / f));
  }
}

TEST_CASE("t_end = 0 writes only initial records") {
  const auto dir = scratch("zero");
  auto c = parse_config("experiment = example1\nN = 40\nt_end = 0\n");
  c.output_dir = dir.string();
  const auto out = run_experiment(c);
  CHECK(out.steps_completed == 0);
  CHECK(lines(slurp(dir / "errors.csv")).size() == 2);
  CHECK(lines(slurp(dir / "conservation.csv")).size() == 2);
  const auto snaps = lines(slurp(dir / "snapshots.csv"));
  for (std::size_t i = 1; i < snaps.size(); ++i) CHECK(snaps[i].rfind("0.00000000e+00,", 0) == 0);
}

TEST_CASE("example 3 has no error file") {
  const auto dir = scratch("ex3");
  auto c = parse_config("experiment = example3\nt_end = 0.5\n");
  c.output_dir = dir.string();
  run_experiment(c);
  CHECK(!fs::exists(dir / "errors.csv"));
  CHECK(fs::exists(dir / "conservation.csv"));
}

TEST_CASE("tables") {
  CHECK_THROWS_AS(run_table("T9", "-"), DomainError);
  const auto dir = scratch("table");
  run_table("T6", (dir / "t6.csv").string());
  const auto t6 = lines(slurp(dir / "t6.csv"));
  REQUIRE(t6.size() == 4);
  CHECK(t6[0].rfind("t,M0,E0,H0,C_M,C_E,C_H,ref_M0", 0) == 0);
  CHECK(t6[1].rfind("5.00000000e+00,5.2255", 0) == 0);
  CHECK(t6[1].find("2.16080000e-03") != std::string::npos);

  run_table("T3", (dir / "t3.csv").string());
  const auto t3 = lines(slurp(dir / "t3.csv"));
  REQUIRE(t3.size() == 5);
  CHECK(t3[1].rfind("100,1.0446", 0) == 0);
}

TEST_CASE("scan and stability outputs") {
  const auto dir = scratch("scan");
  auto c = parse_config("experiment = example1\nN = 50\nt_end = 1\n");
  const auto r = run_scan(c, {1e-6, 1.0, 4, true}, (dir / "scan.csv").string());
  const auto rows = lines(slurp(dir / "scan.csv"));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "zeta,linf,status");
  CHECK(r.table.size() == 4);

  const double worst = run_stability(c, 1.0, 16, (dir / "stab.csv").string());
  CHECK(worst <= 1.0 + 1e-12);
  CHECK(lines(slurp(dir / "stab.csv")).size() == 18);
  CHECK_THROWS_AS(run_stability(c, std::nullopt, 0, "-"), DomainError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(2.1665e-4) == "2.16650000e-04");
  CHECK(format_number(0.0) == "0.00000000e+00");
}
