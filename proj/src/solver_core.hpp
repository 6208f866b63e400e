#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "banded.hpp"
#include "espline_basis.hpp"
#include "problem_model.hpp"

namespace gardner {

/// Spline coefficients at one time level. Entry k of delta/phi holds the
/// coefficient of B_{k-1}, so index 0 and N+2 are the ghost coefficients.
struct SplineState {
  double t = 0.0;
  std::vector<double> delta;
  std::vector<double> phi;

  int n() const noexcept { return static_cast<int>(delta.size()) - 3; }
  /// Coefficient of B_j for j = -1..N+1.
  double d(int j) const { return delta[static_cast<std::size_t>(j + 1)]; }
  double p(int j) const { return phi[static_cast<std::size_t>(j + 1)]; }
  bool finite() const;
};

struct NodalValues {
  std::vector<double> U, Ux, Uxx;
  std::vector<double> V, Vx, Vxx;
};

NodalValues nodal_values(const SplineState& state, const BasisConstants& k);
/// U_m only.
std::vector<double> nodal_u(const SplineState& state, const BasisConstants& k);

/// Linear system A x^{n+1} = B x^n of one time step.
///
/// Unknowns are interleaved (delta_0, phi_0, ..., delta_N, phi_N); row 2m is
/// the momentum equation at x_m and row 2m+1 the constraint v = u_x. The
/// ghost columns of A are folded in through the boundary closure, so A is
/// banded with 3 sub- and 3 super-diagonals. B is kept as a six-entry stencil
/// per row acting on the full state (ghosts included): row 2m or 2m+1 reads
/// delta/phi of B_{m-1}, B_m, B_{m+1}.
struct BandedSystem {
  static constexpr std::size_t kLower = 3;
  static constexpr std::size_t kUpper = 3;

  BandedMatrix A;
  std::vector<std::array<double, 6>> B;

  std::size_t size() const noexcept { return A.size(); }
  /// B x^n for a full state.
  std::vector<double> rhs(const SplineState& state) const;
};

/// Ghost closure coefficients: ghost = c_near * edge + c_far * neighbour.
struct ClosureWeights {
  double c_near;
  double c_far;
};
ClosureWeights closure_weights(BoundaryClosure closure);

/// Applies the closure to the ghost coefficients of both fields.
void refresh_ghosts(SplineState& state, BoundaryClosure closure);

/// Interpolates the initial data at all nodes with zero end slopes.
/// Throws InitializationError on a vanishing pivot.
SplineState build_initial_state(const ProblemSpec& spec, const BasisConstants& k);

/// Assembles the step system with coefficients frozen at `state`.
BandedSystem assemble_step(const SplineState& state, const ProblemSpec& spec,
                           const BasisConstants& k, double dt);
BandedSystem assemble_step(const SplineState& state, const ProblemSpec& spec,
                           const BasisConstants& k);

/// Advances by one time step of size dt (may be negative). `step_index` is
/// only used to label a NumericalBreakdown.
SplineState step(const SplineState& state, const ProblemSpec& spec, const BasisConstants& k,
                 double dt, std::size_t step_index = 1);
SplineState step(const SplineState& state, const ProblemSpec& spec, const BasisConstants& k);

/// Called with the state and the number of completed steps.
using StepObserver = std::function<void(const SplineState&, int)>;

/// Owns the assembly and factorization buffers of one run.
class Stepper {
 public:
  Stepper(const ProblemSpec& spec, const BasisConstants& k);

  /// Advances `state` in place by dt; throws NumericalBreakdown.
  void advance(SplineState& state, double dt, std::size_t step_index);

  const BandedSystem& system() const noexcept { return system_; }

 private:
  GardnerParameters params_;
  BoundaryClosure closure_;
  int n_;
  BasisConstants k_;
  BandedSystem system_;
  std::vector<double> work_;
};

/// Runs round(t_end / dt) steps from the initial state. Observers fire at
/// t = 0 and after every step.
SplineState run(const ProblemSpec& spec, const std::vector<StepObserver>& observers = {});
SplineState run(const ProblemSpec& spec, const BasisConstants& k,
                const std::vector<StepObserver>& observers);

struct PointValue {
  double U = 0.0;
  double Ux = 0.0;
  double Uxx = 0.0;
  double V = 0.0;
};

/// Evaluates the spline fields at x in [a, b]; throws DomainError outside.
PointValue evaluate_solution(const SplineState& state, const Grid& grid, double x,
                             const SplinePieceCoefficients& coeffs);

/// max_m |Ux_m - V_m|.
double reduction_mismatch(const SplineState& state, const BasisConstants& k);

}  // namespace gardner
