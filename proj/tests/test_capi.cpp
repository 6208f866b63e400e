#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "gardner/gardner.h"

TEST_CASE("status names and version") {
  CHECK(std::string(gardner_status_name(GARDNER_OK)) == "ok");
  CHECK(std::string(gardner_status_name(GARDNER_ERR_BREAKDOWN)) == "numerical_breakdown");
  CHECK(std::string(gardner_version()) == "1.0.0");
}

TEST_CASE("basis constants") {
  gardner_basis_constants k{};
  REQUIRE(gardner_basis_constants_compute(1e-6 / 0.5, 0.5, &k) == GARDNER_OK);
  CHECK(k.alpha1 == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(k.beta1 == doctest::Approx(-1.5).epsilon(1e-9));
  CHECK(k.gamma1 == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(k.alpha2 == 1.0);
  CHECK(gardner_basis_constants_compute(0.0, 0.5, &k) == GARDNER_ERR_DOMAIN);
  CHECK(std::strlen(gardner_last_error()) > 0);
  CHECK(gardner_basis_constants_compute(1.0, 0.5, nullptr) == GARDNER_ERR_INVALID_ARGUMENT);
}

TEST_CASE("config parse errors report the line") {
  gardner_config* c = nullptr;
  CHECK(gardner_config_parse("experiment = example1\ndt = nope\n", &c) == GARDNER_ERR_PARSE);
  CHECK(c == nullptr);
  CHECK(gardner_last_parse_line() == 2);
  CHECK(std::string(gardner_last_error()).find("dt") != std::string::npos);
  CHECK(gardner_config_load("/nonexistent/file.cfg", &c) != GARDNER_OK);
}

TEST_CASE("config emit") {
  gardner_config* c = nullptr;
  REQUIRE(gardner_config_parse("experiment = example2\nN = 64\n", &c) == GARDNER_OK);
  size_t needed = 0;
  CHECK(gardner_config_emit(c, nullptr, 0, &needed) == GARDNER_OK);
  REQUIRE(needed > 0);
  std::vector<char> buf(needed);
  REQUIRE(gardner_config_emit(c, buf.data(), buf.size(), &needed) == GARDNER_OK);
  CHECK(std::string(buf.data()).find("N = 64") != std::string::npos);
  gardner_config_free(c);
}

TEST_CASE("solver lifecycle on example 1") {
  gardner_problem* p = nullptr;
  REQUIRE(gardner_problem_create_example(1, 100, 0.1, 1.0, &p) == GARDNER_OK);
  CHECK(gardner_problem_has_analytical(p) == 1);
  double a = 0, b = 0;
  int n = 0;
  REQUIRE(gardner_problem_grid(p, &a, &b, &n) == GARDNER_OK);
  CHECK(a == -20.0);
  CHECK(b == 30.0);
  CHECK(n == 100);

  gardner_solver* s = nullptr;
  REQUIRE(gardner_solver_create(p, &s) == GARDNER_OK);
  REQUIRE(gardner_solver_step(s, 25) == GARDNER_OK);
  double t = 0;
  gardner_solver_time(s, &t);
  CHECK(t == doctest::Approx(2.5));
  REQUIRE(gardner_solver_run(s) == GARDNER_OK);
  gardner_solver_time(s, &t);
  CHECK(t == doctest::Approx(5.0));

  double linf = 0;
  int node = -1;
  REQUIRE(gardner_solver_linf_error(s, &linf, &node) == GARDNER_OK);
  CHECK(linf == doctest::Approx(2.1665e-4).epsilon(0.02));
  CHECK(node >= 0);

  std::vector<double> u(101);
  REQUIRE(gardner_solver_nodal_u(s, u.data(), u.size()) == GARDNER_OK);
  CHECK(gardner_solver_nodal_u(s, u.data(), 10) == GARDNER_ERR_INVALID_ARGUMENT);
  double eu = 0, eux = 0, ev = 0;
  REQUIRE(gardner_solver_evaluate(s, a + 50 * (b - a) / 100, &eu, &eux, &ev) == GARDNER_OK);
  CHECK(eu == doctest::Approx(u[50]).epsilon(1e-12));
  CHECK(gardner_solver_evaluate(s, b + 1.0, &eu, &eux, &ev) == GARDNER_ERR_DOMAIN);

  gardner_conservation cons{};
  REQUIRE(gardner_solver_conservation(s, &cons) == GARDNER_OK);
  CHECK(cons.M == doctest::Approx(1.04458).epsilon(1e-4));
  CHECK(cons.C_M < 1e-4);

  gardner_solver_free(s);
  gardner_problem_free(p);
}

TEST_CASE("example 3 has no analytical solution") {
  gardner_problem* p = nullptr;
  REQUIRE(gardner_problem_create_example(3, 40, 0.1, 1.0, &p) == GARDNER_OK);
  CHECK(gardner_problem_has_analytical(p) == 0);
  REQUIRE(gardner_problem_set_t_end(p, 0.2) == GARDNER_OK);
  gardner_solver* s = nullptr;
  REQUIRE(gardner_solver_create(p, &s) == GARDNER_OK);
  double linf = 0;
  CHECK(gardner_solver_linf_error(s, &linf, nullptr) == GARDNER_ERR_UNSUPPORTED);
  gardner_solver_free(s);
  gardner_problem_free(p);
  CHECK(gardner_problem_create_example(4, 40, 0.1, 1.0, &p) == GARDNER_ERR_INVALID_ARGUMENT);
  CHECK(gardner_problem_create_example(1, 2, 0.1, 1.0, &p) == GARDNER_ERR_DOMAIN);
}

TEST_CASE("experiment entry points") {
  gardner_config* c = nullptr;
  REQUIRE(gardner_config_parse("experiment = example1\nN = 40\nt_end = 1\noutput_dir = -\n", &c) ==
          GARDNER_OK);
  double best_zeta = 0, best_linf = 0;
  REQUIRE(gardner_run_scan(c, 1e-6, 1.0, 3, 1, "/dev/null", &best_zeta, &best_linf) == GARDNER_OK);
  CHECK(std::isfinite(best_linf));
  double worst = 0;
  REQUIRE(gardner_run_stability(c, 1, 0.5, 32, "/dev/null", &worst) == GARDNER_OK);
  CHECK(worst <= 1.0 + 1e-12);
  CHECK(gardner_run_table("T0", "/dev/null") == GARDNER_ERR_DOMAIN);
  gardner_config_free(c);
}
