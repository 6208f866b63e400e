#include "diagnostics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>

#include "errors.hpp"

namespace gardner {

ErrorReport linf_error(const SplineState& state, const ProblemSpec& spec, const BasisConstants& k) {
  if (!spec.analytical) {
    throw UnsupportedDiagnostic("problem '" + spec.name + "' has no analytical solution");
  }
  const auto u = nodal_u(state, k);
  ErrorReport r;
  r.t = state.t;
  for (int m = 0; m <= spec.grid.n(); ++m) {
    const double e = std::abs((*spec.analytical)(spec.grid.node(m), state.t) - u[m]);
    if (e > r.linf) {
      r.linf = e;
      r.argmax_node = m;
    }
  }
  return r;
}

ErrorReport linf_error(const SplineState& state, const ProblemSpec& spec) {
  return linf_error(state, spec, compute_basis_constants(spec.zeta, spec.grid.h()));
}

const char* to_string(Quadrature q) {
  switch (q) {
    case Quadrature::kNodalSum:
      return "nodal_sum";
    case Quadrature::kGauss4:
      return "gauss4";
    case Quadrature::kGauss6:
      return "gauss6";
  }
  return "unknown";
}

Quadrature quadrature_from_string(const std::string& name) {
  if (name == "nodal_sum") return Quadrature::kNodalSum;
  if (name == "gauss4") return Quadrature::kGauss4;
  if (name == "gauss6") return Quadrature::kGauss6;
  throw DomainError("unknown quadrature '" + name + "'");
}

namespace {

struct Densities {
  double m = 0.0;
  double e = 0.0;
  double h = 0.0;
};

void accumulate(Densities& acc, double w, double u, double ux, const GardnerParameters& p) {
  const double u2 = u * u;
  acc.m += w * u;
  acc.e += w * u2;
  acc.h += w * (p.mu1 * u2 * u / 3.0 + p.mu2 * u2 * u2 / 6.0 - p.mu3 * ux * ux);
}

template <std::size_t K>
Densities gauss(const SplineState& s, const ProblemSpec& spec, const std::array<double, K>& x,
                const std::array<double, K>& w) {
  const auto coeffs = compute_piece_coefficients(spec.zeta, spec.grid.h());
  const double h = spec.grid.h();
  Densities acc;
  for (int e = 0; e < spec.grid.n(); ++e) {
    const double mid = spec.grid.node(e) + 0.5 * h;
    for (std::size_t q = 0; q < K; ++q) {
      const auto pv = evaluate_solution(s, spec.grid, mid + 0.5 * h * x[q], coeffs);
      accumulate(acc, 0.5 * h * w[q], pv.U, pv.Ux, spec.params);
    }
  }
  return acc;
}

double relative_change(double now, double base, bool& absolute) {
  absolute = base == 0.0;
  return absolute ? std::abs(now - base) : std::abs((now - base) / base);
}

}  // namespace

ConservationReport conservation(const SplineState& state, const ProblemSpec& spec,
                                const std::optional<ConservationReport>& baseline,
                                Quadrature rule) {
  Densities d;
  switch (rule) {
    case Quadrature::kNodalSum: {
      const auto k = compute_basis_constants(spec.zeta, spec.grid.h());
      const auto nv = nodal_values(state, k);
      for (std::size_t m = 0; m < nv.U.size(); ++m) {
        accumulate(d, spec.grid.h(), nv.U[m], nv.Ux[m], spec.params);
      }
      break;
    }
    case Quadrature::kGauss4: {
      constexpr double a = 0.3399810435848563, b = 0.8611363115940526;
      constexpr double wa = 0.6521451548625461, wb = 0.3478548451374538;
      d = gauss<4>(state, spec, {-b, -a, a, b}, {wb, wa, wa, wb});
      break;
    }
    case Quadrature::kGauss6: {
      constexpr double a = 0.2386191860831969, b = 0.6612093864662645, c = 0.9324695142031521;
      constexpr double wa = 0.4679139345726910, wb = 0.3607615730481386,
                       wc = 0.1713244923791704;
      d = gauss<6>(state, spec, {-c, -b, -a, a, b, c}, {wc, wb, wa, wa, wb, wc});
      break;
    }
  }

  ConservationReport r;
  r.t = state.t;
  r.M = d.m;
  r.E = d.e;
  r.H = d.h;
  if (baseline) {
    r.has_baseline = true;
    r.C_M = relative_change(r.M, baseline->M, r.absolute_M);
    r.C_E = relative_change(r.E, baseline->E, r.absolute_E);
    r.C_H = relative_change(r.H, baseline->H, r.absolute_H);
  }
  return r;
}

std::vector<AmplificationSample> amplification_factors(const ProblemSpec& spec,
                                                       const BasisConstants& k, double epsilon,
                                                       const std::vector<double>& phases) {
  const double dt = spec.dt;
  const double mu3 = spec.params.mu3;
  std::vector<AmplificationSample> out;
  out.reserve(phases.size());
  for (double phi : phases) {
    const double P = 2.0 * k.alpha1 * std::cos(phi) + k.alpha2;
    const double Q = 2.0 * k.gamma1 * std::cos(phi) + k.gamma2;
    // Symbol of the centered first derivative is i * omega.
    const double omega = -2.0 * k.beta1 * std::sin(phi);
    // The constraint P A2 = i omega A1 eliminates the phi amplitude.
    const double X = 2.0 * P / dt;
    const double Y = omega * (epsilon + mu3 * Q / P);

    AmplificationSample s;
    s.phase = phi;
    s.epsilon = epsilon;
    s.rho_momentum = std::complex<double>(X, -Y) / std::complex<double>(X, Y);
    // Constraint equation with unit amplitudes: (P - i omega) rho = -(P - i omega).
    const std::complex<double> c(P, -omega);
    s.rho_constraint = -c / c;
    s.modulus_momentum = std::abs(s.rho_momentum);
    s.modulus_constraint = std::abs(s.rho_constraint);
    out.push_back(s);
  }
  return out;
}

double default_epsilon(const ProblemSpec& spec, const BasisConstants& k) {
  const auto u = nodal_u(build_initial_state(spec, k), k);
  double eps = 0.0;
  for (double v : u) eps = std::max(eps, std::abs(v + v * v));
  return eps;
}

std::vector<ErrorReport> linf_at_times(const ProblemSpec& spec, const std::vector<double>& times) {
  if (!spec.analytical) {
    throw UnsupportedDiagnostic("problem '" + spec.name + "' has no analytical solution");
  }
  std::vector<int> want;
  for (double t : times) want.push_back(static_cast<int>(std::lround(t / spec.dt)));
  ProblemSpec s = spec;
  s.t_end = *std::max_element(times.begin(), times.end());
  const auto k = compute_basis_constants(s.zeta, s.grid.h());
  std::vector<ErrorReport> out(times.size());
  run(s, k, {[&](const SplineState& st, int n) {
        for (std::size_t i = 0; i < want.size(); ++i) {
          if (want[i] == n) out[i] = linf_error(st, s, k);
        }
      }});
  return out;
}

namespace {

ScanResult pick_best(std::vector<ScanEntry> table) {
  std::stable_sort(table.begin(), table.end(),
                   [](const ScanEntry& a, const ScanEntry& b) { return a.zeta < b.zeta; });
  ScanResult r;
  bool found = false;
  for (const auto& e : table) {
    if (e.ok && std::isfinite(e.linf) && (!found || e.linf < r.best_linf)) {
      r.best_zeta = e.zeta;
      r.best_linf = e.linf;
      found = true;
    }
  }
  if (!found) {
    r.best_zeta = std::nan("");
    r.best_linf = std::nan("");
  }
  r.table = std::move(table);
  return r;
}

}  // namespace

std::vector<ScanResult> zeta_scan_times(const ProblemSpec& spec_template,
                                        const std::vector<double>& zeta_grid,
                                        const std::vector<double>& times, unsigned threads) {
  if (zeta_grid.empty()) throw DomainError("zeta grid is empty");
  if (times.empty()) throw DomainError("no metric time given");
  for (double z : zeta_grid) {
    if (!(z > 0.0)) throw DomainError("zeta grid values must be positive");
  }
  if (!spec_template.analytical) {
    throw UnsupportedDiagnostic("zeta scan requires an analytical solution");
  }

  const std::size_t n = zeta_grid.size();
  std::vector<std::vector<ScanEntry>> rows(n, std::vector<ScanEntry>(times.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      ProblemSpec s = spec_template;
      s.zeta = zeta_grid[i];
      try {
        const auto reports = linf_at_times(s, times);
        for (std::size_t j = 0; j < times.size(); ++j) {
          rows[i][j] = {s.zeta, reports[j].linf, true, {}};
        }
      } catch (const std::exception& ex) {
        for (auto& e : rows[i]) e = {s.zeta, std::nan(""), false, ex.what()};
      }
    }
  };
  unsigned count = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  count = static_cast<unsigned>(std::min<std::size_t>(count, n));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<ScanResult> out;
  for (std::size_t j = 0; j < times.size(); ++j) {
    std::vector<ScanEntry> table;
    for (std::size_t i = 0; i < n; ++i) table.push_back(rows[i][j]);
    out.push_back(pick_best(std::move(table)));
  }
  return out;
}

ScanResult zeta_scan(const ProblemSpec& spec_template, const std::vector<double>& zeta_grid,
                     double metric_time, unsigned threads) {
  return zeta_scan_times(spec_template, zeta_grid, {metric_time}, threads).front();
}

std::vector<double> log_spaced(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) throw DomainError("invalid log-spaced range");
  std::vector<double> v(static_cast<std::size_t>(points));
  if (points == 1) {
    v[0] = lo;
    return v;
  }
  const double l0 = std::log(lo);
  const double step = (std::log(hi) - l0) / (points - 1);
  for (int i = 0; i < points; ++i) v[i] = std::exp(l0 + i * step);
  v.front() = lo;
  v.back() = hi;
  return v;
}

}  // namespace gardner
