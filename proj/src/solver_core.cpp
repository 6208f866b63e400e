#include "solver_core.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace gardner {

bool SplineState::finite() const {
  auto ok = [](double v) { return std::isfinite(v); };
  return std::all_of(delta.begin(), delta.end(), ok) && std::all_of(phi.begin(), phi.end(), ok);
}

NodalValues nodal_values(const SplineState& s, const BasisConstants& k) {
  const int n = s.n();
  NodalValues out;
  for (auto* v : {&out.U, &out.Ux, &out.Uxx, &out.V, &out.Vx, &out.Vxx}) {
    v->resize(static_cast<std::size_t>(n) + 1);
  }
  for (int m = 0; m <= n; ++m) {
    const double dl = s.d(m - 1), dc = s.d(m), dr = s.d(m + 1);
    const double pl = s.p(m - 1), pc = s.p(m), pr = s.p(m + 1);
    out.U[m] = k.alpha1 * (dl + dr) + dc;
    out.Ux[m] = k.beta1 * (dl - dr);
    out.Uxx[m] = k.gamma1 * (dl + dr) + k.gamma2 * dc;
    out.V[m] = k.alpha1 * (pl + pr) + pc;
    out.Vx[m] = k.beta1 * (pl - pr);
    out.Vxx[m] = k.gamma1 * (pl + pr) + k.gamma2 * pc;
  }
  return out;
}

std::vector<double> nodal_u(const SplineState& s, const BasisConstants& k) {
  const int n = s.n();
  std::vector<double> u(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) u[m] = k.alpha1 * (s.d(m - 1) + s.d(m + 1)) + s.d(m);
  return u;
}

std::vector<double> BandedSystem::rhs(const SplineState& s) const {
  const std::size_t rows = B.size();
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t j0 = r / 2;  // full index of B_{m-1}
    const auto& c = B[r];
    double acc = 0.0;
    for (std::size_t q = 0; q < 3; ++q) {
      acc += c[2 * q] * s.delta[j0 + q] + c[2 * q + 1] * s.phi[j0 + q];
    }
    out[r] = acc;
  }
  return out;
}

ClosureWeights closure_weights(BoundaryClosure closure) {
  switch (closure) {
    case BoundaryClosure::kLinearExtrapolation:
      return {2.0, -1.0};
    case BoundaryClosure::kNeumann:
      return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

void refresh_ghosts(SplineState& s, BoundaryClosure closure) {
  const auto w = closure_weights(closure);
  const std::size_t last = s.delta.size() - 1;
  for (auto* v : {&s.delta, &s.phi}) {
    auto& c = *v;
    c[0] = w.c_near * c[1] + w.c_far * c[2];
    c[last] = w.c_near * c[last - 1] + w.c_far * c[last - 2];
  }
}

namespace {

// Solves the interpolation system with zero end slopes for one field:
// rows  f_0 = delta_0 + 2 alpha1 delta_1, interior alpha1/1/alpha1,
//       f_N = 2 alpha1 delta_{N-1} + delta_N.
std::vector<double> interpolate_neumann(const std::vector<double>& f, double alpha1) {
  const std::size_t n = f.size();
  std::vector<double> lower(n, alpha1), diag(n, 1.0), upper(n, alpha1), rhs = f;
  upper[0] = 2.0 * alpha1;
  lower[n - 1] = 2.0 * alpha1;

  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(diag[i - 1]) < 1e-14) {
      throw InitializationError("singular interpolation system at row " + std::to_string(i - 1));
    }
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (std::abs(diag[n - 1]) < 1e-14) {
    throw InitializationError("singular interpolation system at row " + std::to_string(n - 1));
  }
  std::vector<double> c(n + 2);
  c[n] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) c[i + 1] = (rhs[i] - upper[i] * c[i + 2]) / diag[i];
  c[0] = c[2];
  c[n + 1] = c[n - 1];
  return c;
}

void fill_system(BandedSystem& sys, const SplineState& s, const GardnerParameters& mu,
                 BoundaryClosure closure, const BasisConstants& k, double dt) {
  const int n = s.n();
  const auto w = closure_weights(closure);
  sys.A.fill(0.0);
  sys.B.assign(2 * static_cast<std::size_t>(n) + 2, {});

  const double al[3] = {k.alpha1, 1.0, k.alpha1};
  const double be[3] = {k.beta1, 0.0, -k.beta1};
  const double ga[3] = {k.gamma1, k.gamma2, k.gamma1};

  // Adds coefficient v for field `var` of B_j to row r of A, folding ghosts.
  auto put = [&](std::size_t r, int j, int var, double v) {
    if (j < 0) {
      sys.A.add(r, static_cast<std::size_t>(var), w.c_near * v);
      sys.A.add(r, static_cast<std::size_t>(2 + var), w.c_far * v);
    } else if (j > n) {
      sys.A.add(r, static_cast<std::size_t>(2 * n + var), w.c_near * v);
      sys.A.add(r, static_cast<std::size_t>(2 * (n - 1) + var), w.c_far * v);
    } else {
      sys.A.add(r, static_cast<std::size_t>(2 * j + var), v);
    }
  };

  for (int m = 0; m <= n; ++m) {
    const double K = k.alpha1 * (s.d(m - 1) + s.d(m + 1)) + s.d(m);
    const double L = k.alpha1 * (s.p(m - 1) + s.p(m + 1)) + s.p(m);
    const double ca = 2.0 / dt + mu.mu1 * L + 2.0 * mu.mu2 * K * L;
    const double cb = mu.mu1 * K + mu.mu2 * K * K;
    const double cr = 2.0 / dt + mu.mu2 * K * L;

    const std::size_t rm = 2 * static_cast<std::size_t>(m);
    const std::size_t rc = rm + 1;
    auto& bm = sys.B[rm];
    auto& bc = sys.B[rc];
    for (int q = 0; q < 3; ++q) {
      const int j = m - 1 + q;
      put(rm, j, 0, ca * al[q] + cb * be[q]);
      put(rm, j, 1, mu.mu3 * ga[q]);
      put(rc, j, 0, -be[q]);
      put(rc, j, 1, al[q]);
      bm[2 * q] = cr * al[q];
      bm[2 * q + 1] = -mu.mu3 * ga[q];
      bc[2 * q] = be[q];
      bc[2 * q + 1] = -al[q];
    }
  }
}

}  // namespace

SplineState build_initial_state(const ProblemSpec& spec, const BasisConstants& k) {
  const auto x = spec.grid.nodes();
  std::vector<double> fu(x.size()), fv(x.size());
  for (std::size_t m = 0; m < x.size(); ++m) {
    fu[m] = spec.initial_u(x[m]);
    fv[m] = spec.initial_v(x[m]);
  }
  SplineState s;
  s.t = 0.0;
  s.delta = interpolate_neumann(fu, k.alpha1);
  s.phi = interpolate_neumann(fv, k.alpha1);
  if (!s.finite()) throw InitializationError("initial data produced non-finite coefficients");
  return s;
}

BandedSystem assemble_step(const SplineState& state, const ProblemSpec& spec,
                           const BasisConstants& k, double dt) {
  BandedSystem sys;
  sys.A = BandedMatrix(2 * static_cast<std::size_t>(state.n()) + 2, BandedSystem::kLower,
                       BandedSystem::kUpper);
  fill_system(sys, state, spec.params, spec.closure, k, dt);
  return sys;
}

BandedSystem assemble_step(const SplineState& state, const ProblemSpec& spec,
                           const BasisConstants& k) {
  return assemble_step(state, spec, k, spec.dt);
}

Stepper::Stepper(const ProblemSpec& spec, const BasisConstants& k)
    : params_(spec.params), closure_(spec.closure), n_(spec.grid.n()), k_(k) {
  system_.A = BandedMatrix(2 * static_cast<std::size_t>(n_) + 2, BandedSystem::kLower,
                           BandedSystem::kUpper);
}

void Stepper::advance(SplineState& state, double dt, std::size_t step_index) {
  fill_system(system_, state, params_, closure_, k_, dt);
  work_ = system_.rhs(state);
  PivotFailure failure;
  if (!banded_lu_factor(system_.A, failure)) {
    throw NumericalBreakdown(step_index, failure.row, failure.pivot);
  }
  banded_lu_solve(system_.A, work_);
  for (int m = 0; m <= n_; ++m) {
    state.delta[m + 1] = work_[2 * m];
    state.phi[m + 1] = work_[2 * m + 1];
  }
  refresh_ghosts(state, closure_);
  state.t += dt;
  if (!state.finite()) throw NumericalBreakdown(step_index, 0, std::nan(""));
}

SplineState step(const SplineState& state, const ProblemSpec& spec, const BasisConstants& k,
                 double dt, std::size_t step_index) {
  Stepper stepper(spec, k);
  SplineState next = state;
  stepper.advance(next, dt, step_index);
  return next;
}

SplineState step(const SplineState& state, const ProblemSpec& spec, const BasisConstants& k) {
  return step(state, spec, k, spec.dt);
}

SplineState run(const ProblemSpec& spec, const BasisConstants& k,
                const std::vector<StepObserver>& observers) {
  spec.validate();
  SplineState state = build_initial_state(spec, k);
  for (const auto& obs : observers) obs(state, 0);
  const int steps = spec.step_count();
  Stepper stepper(spec, k);
  for (int i = 1; i <= steps; ++i) {
    stepper.advance(state, spec.dt, static_cast<std::size_t>(i));
    state.t = i * spec.dt;  // avoid accumulated rounding in t
    for (const auto& obs : observers) obs(state, i);
  }
  return state;
}

SplineState run(const ProblemSpec& spec, const std::vector<StepObserver>& observers) {
  return run(spec, compute_basis_constants(spec.zeta, spec.grid.h()), observers);
}

PointValue evaluate_solution(const SplineState& s, const Grid& grid, double x,
                             const SplinePieceCoefficients& coeffs) {
  const double a = grid.a();
  const double b = grid.b();
  const double h = grid.h();
  const double tol = 1e-12 * (b - a);
  if (!(x >= a - tol && x <= b + tol)) {
    throw DomainError("evaluation point " + std::to_string(x) + " outside [a, b]");
  }
  const int n = grid.n();
  const int cell = std::clamp(static_cast<int>(std::floor((x - a) / h)), 0, n - 1);
  PointValue out;
  for (int j = std::max(-1, cell - 1); j <= std::min(n + 1, cell + 2); ++j) {
    const auto bv = evaluate_bspline(grid.node(j), x, coeffs);
    out.U += s.d(j) * bv.value;
    out.Ux += s.d(j) * bv.d1;
    out.Uxx += s.d(j) * bv.d2;
    out.V += s.p(j) * bv.value;
  }
  return out;
}

double reduction_mismatch(const SplineState& s, const BasisConstants& k) {
  const auto nv = nodal_values(s, k);
  double worst = 0.0;
  for (std::size_t m = 0; m < nv.U.size(); ++m) worst = std::max(worst, std::abs(nv.Ux[m] - nv.V[m]));
  return worst;
}

}  // namespace gardner
