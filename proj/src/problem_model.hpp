#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gardner {

/// Coefficients of u_t + mu1 u u_x + mu2 u^2 u_x + mu3 u_xxx = 0.
struct GardnerParameters {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 1.0;

  /// Throws DomainError when mu3 == 0 or a coefficient is not finite.
  void validate() const;
};

/// Uniform grid x_m = a + m h, m = 0..N.
class Grid {
 public:
  Grid(double a, double b, int n);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  int n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  double node(int m) const noexcept { return a_ + m * h_; }
  std::vector<double> nodes() const;

 private:
  double a_;
  double b_;
  int n_;
  double h_;
};

/// How the ghost coefficients delta_{-1}, delta_{N+1} (and phi analogues) are
/// closed while stepping. Initialization always imposes zero end slopes.
enum class BoundaryClosure {
  /// delta_{-1} = 2 delta_0 - delta_1, delta_{N+1} = 2 delta_N - delta_{N-1}.
  kLinearExtrapolation,
  /// delta_{-1} = delta_1, delta_{N+1} = delta_{N-1}.
  kNeumann,
};

const char* to_string(BoundaryClosure closure);
BoundaryClosure boundary_closure_from_string(const std::string& name);

using InitialFunction = std::function<double(double)>;
using AnalyticalFunction = std::function<double(double, double)>;

struct ProblemSpec {
  std::string name;
  GardnerParameters params;
  Grid grid{0.0, 1.0, 4};
  double dt = 0.1;
  double zeta = 1.0;
  double t_end = 0.0;
  InitialFunction initial_u;
  /// Spatial derivative of initial_u.
  InitialFunction initial_v;
  std::optional<AnalyticalFunction> analytical;
  BoundaryClosure closure = BoundaryClosure::kLinearExtrapolation;

  /// Checks parameter ranges and that the callables are set. Throws DomainError.
  void validate() const;

  int step_count() const;
};

ProblemSpec example1_spec(int n, double dt, double zeta);
ProblemSpec example2_spec(int n, double dt, double zeta);
ProblemSpec example3_spec(int n = 200, double dt = 0.1, double zeta = 1.0);

/// Builds a spec from an initial profile with no known derivative. initial_v
/// is filled by fourth-order finite differences with step h/4 (one-sided
/// stencils within two steps of the domain ends).
ProblemSpec custom_spec(std::string name, GardnerParameters params, Grid grid, double dt,
                        double zeta, double t_end, InitialFunction initial_u);

/// Fourth-order finite-difference derivative of f at x, restricted to [a, b].
double fd_derivative(const InitialFunction& f, double x, double a, double b, double step);

/// Largest relative mismatch between initial_v and a centered difference of
/// initial_u over `samples` pseudo-random interior points (fixed seed).
double derivative_consistency(const ProblemSpec& spec, int samples = 10);

}  // namespace gardner
