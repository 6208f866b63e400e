#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "errors.hpp"
#include "problem_model.hpp"

using namespace gardner;

namespace {

// Residual of u_t + mu1 u u_x + mu2 u^2 u_x + mu3 u_xxx by centered
// differences; high-order stencils keep truncation near 1e-9.
double gardner_residual(const ProblemSpec& s, double x, double t) {
  const auto& u = *s.analytical;
  const double e = 1e-2;
  auto f = [&](double xx) { return u(xx, t); };
  const double ux = (f(x - 2 * e) - 8 * f(x - e) + 8 * f(x + e) - f(x + 2 * e)) / (12 * e);
  const double uxxx = (f(x - 3 * e) - 8 * f(x - 2 * e) + 13 * f(x - e) - 13 * f(x + e) +
                       8 * f(x + 2 * e) - f(x + 3 * e)) /
                      (8 * e * e * e);
  const double et = 1e-3;
  const double ut = (u(x, t - 2 * et) - 8 * u(x, t - et) + 8 * u(x, t + et) - u(x, t + 2 * et)) /
                    (12 * et);
  const double v = u(x, t);
  return ut + s.params.mu1 * v * ux + s.params.mu2 * v * v * ux + s.params.mu3 * uxxx;
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const Grid g(-20.0, 30.0, 100);
  CHECK(g.h() == doctest::Approx(0.5));
  const auto x = g.nodes();
  REQUIRE(x.size() == 101);
  CHECK(x.front() == -20.0);
  CHECK(x.back() == doctest::Approx(30.0).epsilon(1e-15));
  for (std::size_t m = 0; m + 1 < x.size(); ++m) CHECK(std::abs(x[m + 1] - x[m] - g.h()) < 1e-12);

  CHECK_THROWS_AS(Grid(1.0, 1.0, 10), DomainError);
  CHECK_THROWS_AS(Grid(2.0, 1.0, 10), DomainError);
  CHECK_THROWS_AS(Grid(0.0, 1.0, 3), DomainError);
}

TEST_CASE("equation parameters reject a vanishing dispersion") {
  GardnerParameters p{1.0, 1.0, 0.0};
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.mu3 = -1.0;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("example 1 data") {
  const auto s = example1_spec(100, 0.1, 1.0);
  CHECK(s.params.mu1 == 4.0);
  CHECK(s.params.mu2 == -3.0);
  CHECK(s.params.mu3 == 1.0);
  CHECK(s.grid.a() == -20.0);
  CHECK(s.grid.b() == 30.0);
  CHECK(s.t_end == 5.0);
  CHECK(s.initial_u(5.0) == doctest::Approx(0.086114204408686204805).epsilon(1e-15));
  REQUIRE(s.analytical);
  for (double x = -20.0; x <= 30.0; x += 1.7) CHECK((*s.analytical)(x, 0.0) == s.initial_u(x));
  CHECK(derivative_consistency(s) < 1e-6);
}

TEST_CASE("example 2 data") {
  const auto s = example2_spec(100, 0.1, 1.0);
  CHECK(s.params.mu1 == 1.0);
  CHECK(s.params.mu2 == -5.0);
  CHECK(s.params.mu3 == 1.0);
  CHECK(s.t_end == 12.0);
  CHECK(s.initial_u(0.0) == 0.1);
  CHECK(std::abs(s.initial_u(-80.0) - 0.2) < 1e-6);
  CHECK(std::abs(s.initial_u(80.0)) < 1e-6);
  CHECK(derivative_consistency(s) < 1e-6);
}

TEST_CASE("example 3 data") {
  const auto s = example3_spec();
  CHECK(s.params.mu1 == 10.0);
  CHECK(s.params.mu2 == -3.0);
  CHECK(s.grid.n() == 200);
  CHECK(s.grid.h() == doctest::Approx(0.5));
  CHECK(s.dt == 0.1);
  CHECK(s.t_end == 15.0);
  CHECK(!s.analytical);
  CHECK(s.initial_u(5.0) == doctest::Approx(0.43057102204343102403).epsilon(1e-15));
  CHECK(derivative_consistency(s) < 1e-6);
}

TEST_CASE("closed-form solutions satisfy the equation") {
  std::mt19937_64 rng(3);
  for (const auto& s : {example1_spec(100, 0.1, 1.0), example2_spec(100, 0.1, 1.0)}) {
    std::uniform_real_distribution<double> xd(s.grid.a() + 2.0, s.grid.b() - 2.0);
    std::uniform_real_distribution<double> td(0.5, s.t_end);
    for (int i = 0; i < 20; ++i) {
      const double x = xd(rng), t = td(rng);
      CAPTURE(s.name);
      CAPTURE(x);
      CHECK(std::abs(gardner_residual(s, x, t)) < 1e-5);
    }
  }
}

TEST_CASE("finite-difference derivative fallback") {
  auto f = [](double x) { return std::sin(x) * std::exp(-0.1 * x * x); };
  auto df = [](double x) {
    return (std::cos(x) - 0.2 * x * std::sin(x)) * std::exp(-0.1 * x * x);
  };
  const double a = -5.0, b = 5.0, e = 0.01;
  for (double x : {-5.0, -4.99, -3.0, 0.0, 2.5, 4.995, 5.0}) {
    CAPTURE(x);
    CHECK(std::abs(fd_derivative(f, x, a, b, e) - df(x)) < 1e-7);
  }
  const auto s = custom_spec("c", {1.0, 0.0, 1.0}, Grid(a, b, 40), 0.1, 1.0, 1.0, f);
  CHECK(std::abs(s.initial_v(1.3) - df(1.3)) < 1e-5);
  CHECK(std::abs(s.initial_v(a) - df(a)) < 1e-4);
}

TEST_CASE("spec validation") {
  auto s = example1_spec(100, 0.1, 1.0);
  s.dt = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = example1_spec(100, 0.1, 1.0);
  s.zeta = -1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK_THROWS_AS(example1_spec(3, 0.1, 1.0), DomainError);
  CHECK_THROWS_AS(example2_spec(100, -0.1, 1.0), DomainError);
  CHECK(example1_spec(100, 0.1, 1.0).step_count() == 50);
  CHECK(boundary_closure_from_string("neumann") == BoundaryClosure::kNeumann);
  CHECK_THROWS_AS(boundary_closure_from_string("periodic"), DomainError);
}
