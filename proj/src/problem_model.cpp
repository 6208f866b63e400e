#include "problem_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace gardner {

void GardnerParameters::validate() const {
  if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(mu3)) {
    throw DomainError("equation coefficients must be finite");
  }
  if (mu3 == 0.0) throw DomainError("mu3 must be nonzero");
}

Grid::Grid(double a, double b, int n) : a_(a), b_(b), n_(n), h_(0.0) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("grid requires finite a < b");
  }
  if (n < 4) throw DomainError("grid requires N >= 4, got " + std::to_string(n));
  h_ = (b - a) / n;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(n_) + 1);
  for (int m = 0; m <= n_; ++m) x[m] = node(m);
  return x;
}

const char* to_string(BoundaryClosure closure) {
  switch (closure) {
    case BoundaryClosure::kLinearExtrapolation:
      return "linear_extrapolation";
    case BoundaryClosure::kNeumann:
      return "neumann";
  }
  return "unknown";
}

BoundaryClosure boundary_closure_from_string(const std::string& name) {
  if (name == "linear_extrapolation") return BoundaryClosure::kLinearExtrapolation;
  if (name == "neumann") return BoundaryClosure::kNeumann;
  throw DomainError("unknown boundary closure '" + name + "'");
}

void ProblemSpec::validate() const {
  params.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw DomainError("zeta must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be non-negative");
  if (!initial_u || !initial_v) throw DomainError("initial condition is not set");
}

int ProblemSpec::step_count() const { return static_cast<int>(std::lround(t_end / dt)); }

namespace {

ProblemSpec make_spec(std::string name, GardnerParameters params, Grid grid, double dt,
                      double zeta, double t_end) {
  ProblemSpec spec;
  spec.name = std::move(name);
  spec.params = params;
  spec.grid = grid;
  spec.dt = dt;
  spec.zeta = zeta;
  spec.t_end = t_end;
  return spec;
}

}  // namespace

ProblemSpec example1_spec(int n, double dt, double zeta) {
  ProblemSpec spec = make_spec("example1", {4.0, -3.0, 1.0}, Grid(-20.0, 30.0, n), dt, zeta, 5.0);
  const double k = 3.0 * std::sqrt(14.0);
  auto u = [k](double x, double t) {
    return 2.0 / (12.0 + k * std::cosh(-x / 3.0 + 5.0 / 3.0 + t / 27.0));
  };
  spec.analytical = u;
  spec.initial_u = [u](double x) { return u(x, 0.0); };
  spec.initial_v = [k](double x) {
    const double psi = -x / 3.0 + 5.0 / 3.0;
    const double den = 12.0 + k * std::cosh(psi);
    return 2.0 * std::sqrt(14.0) * std::sinh(psi) / (den * den);
  };
  spec.validate();
  return spec;
}

ProblemSpec example2_spec(int n, double dt, double zeta) {
  ProblemSpec spec = make_spec("example2", {1.0, -5.0, 1.0}, Grid(-80.0, 80.0, n), dt, zeta, 12.0);
  const double k = std::sqrt(30.0) / 60.0;
  auto u = [k](double x, double t) { return 0.1 - 0.1 * std::tanh((x - t / 30.0) * k); };
  spec.analytical = u;
  spec.initial_u = [u](double x) { return u(x, 0.0); };
  spec.initial_v = [k](double x) {
    const double sech = 1.0 / std::cosh(x * k);
    return -0.1 * k * sech * sech;
  };
  spec.validate();
  return spec;
}

ProblemSpec example3_spec(int n, double dt, double zeta) {
  ProblemSpec spec = make_spec("example3", {10.0, -3.0, 1.0}, Grid(-40.0, 60.0, n), dt, zeta, 15.0);
  const double k = std::sqrt(14.0);
  spec.initial_u = [k](double x) {
    return (10.0 / 3.0) / (4.0 + k * std::cosh(x / 3.0 - 5.0 / 3.0));
  };
  spec.initial_v = [k](double x) {
    const double psi = x / 3.0 - 5.0 / 3.0;
    const double den = 4.0 + k * std::cosh(psi);
    return -(10.0 * k / 9.0) * std::sinh(psi) / (den * den);
  };
  spec.validate();
  return spec;
}

double fd_derivative(const InitialFunction& f, double x, double a, double b, double e) {
  if (x - 2.0 * e >= a && x + 2.0 * e <= b) {
    return (f(x - 2.0 * e) - 8.0 * f(x - e) + 8.0 * f(x + e) - f(x + 2.0 * e)) / (12.0 * e);
  }
  // Fourth-order one-sided stencils, pointing into the domain.
  const double s = (x - 2.0 * e < a) ? e : -e;
  return (-25.0 * f(x) + 48.0 * f(x + s) - 36.0 * f(x + 2 * s) + 16.0 * f(x + 3 * s) -
          3.0 * f(x + 4 * s)) /
         (12.0 * s);
}

ProblemSpec custom_spec(std::string name, GardnerParameters params, Grid grid, double dt,
                        double zeta, double t_end, InitialFunction initial_u) {
  ProblemSpec spec = make_spec(std::move(name), params, grid, dt, zeta, t_end);
  if (!initial_u) throw DomainError("initial condition is not set");
  spec.initial_u = initial_u;
  const double a = grid.a();
  const double b = grid.b();
  const double e = grid.h() / 4.0;
  spec.initial_v = [initial_u, a, b, e](double x) { return fd_derivative(initial_u, x, a, b, e); };
  spec.validate();
  return spec;
}

double derivative_consistency(const ProblemSpec& spec, int samples) {
  std::mt19937_64 rng(12345);
  const double a = spec.grid.a();
  const double b = spec.grid.b();
  const double margin = 0.05 * (b - a);
  std::uniform_real_distribution<double> dist(a + margin, b - margin);
  const double e = 1e-3;
  double scale = 0.0;
  for (double x : spec.grid.nodes()) scale = std::max(scale, std::abs(spec.initial_v(x)));
  if (scale == 0.0) scale = 1.0;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = dist(rng);
    const double fd = fd_derivative(spec.initial_u, x, a, b, e);
    worst = std::max(worst, std::abs(fd - spec.initial_v(x)) / scale);
  }
  return worst;
}

}  // namespace gardner
