#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "espline_basis.hpp"
#include "problem_model.hpp"
#include "solver_core.hpp"

namespace gardner {

struct ErrorReport {
  double t = 0.0;
  double linf = 0.0;
  int argmax_node = 0;
};

/// max_m |u(x_m, t) - U_m|. Throws UnsupportedDiagnostic without an
/// analytical solution.
ErrorReport linf_error(const SplineState& state, const ProblemSpec& spec);
ErrorReport linf_error(const SplineState& state, const ProblemSpec& spec, const BasisConstants& k);

enum class Quadrature {
  /// h * sum_{m=0..N} f(x_m) with nodal U and U_x.
  kNodalSum,
  /// Gauss-Legendre per element on the spline.
  kGauss4,
  kGauss6,
};

const char* to_string(Quadrature q);
Quadrature quadrature_from_string(const std::string& name);

struct ConservationReport {
  double t = 0.0;
  double M = 0.0;
  double E = 0.0;
  double H = 0.0;
  bool has_baseline = false;
  double C_M = 0.0;
  double C_E = 0.0;
  double C_H = 0.0;
  /// Set when the baseline quantity is zero and C_* holds the absolute change.
  bool absolute_M = false;
  bool absolute_E = false;
  bool absolute_H = false;
};

ConservationReport conservation(const SplineState& state, const ProblemSpec& spec,
                                const std::optional<ConservationReport>& baseline = std::nullopt,
                                Quadrature rule = Quadrature::kNodalSum);

struct AmplificationSample {
  double phase = 0.0;
  double epsilon = 0.0;
  std::complex<double> rho_momentum;
  std::complex<double> rho_constraint;
  double modulus_momentum = 0.0;
  double modulus_constraint = 0.0;
};

/// Von Neumann factors of the frozen-coefficient scheme, where epsilon stands
/// for the nonlinear transport coefficient mu1 U + mu2 U^2.
std::vector<AmplificationSample> amplification_factors(const ProblemSpec& spec,
                                                       const BasisConstants& k, double epsilon,
                                                       const std::vector<double>& phases);

/// max_m |U_m + U_m^2| of the initial state.
double default_epsilon(const ProblemSpec& spec, const BasisConstants& k);

/// L_inf error at each of `times` (sorted ascending) for one run.
std::vector<ErrorReport> linf_at_times(const ProblemSpec& spec, const std::vector<double>& times);

struct ScanEntry {
  double zeta = 0.0;
  double linf = 0.0;
  bool ok = true;
  std::string error;
};

struct ScanResult {
  double best_zeta = 0.0;
  double best_linf = 0.0;
  /// Sorted by zeta.
  std::vector<ScanEntry> table;
};

/// Runs the solver once per zeta up to metric_time and picks the smallest
/// L_inf error, ties going to the smaller zeta. Failed runs are recorded and
/// skipped. `threads` = 0 uses the hardware concurrency.
ScanResult zeta_scan(const ProblemSpec& spec_template, const std::vector<double>& zeta_grid,
                     double metric_time, unsigned threads = 0);

/// Multi-time variant: entry i of the result scans the error at times[i].
std::vector<ScanResult> zeta_scan_times(const ProblemSpec& spec_template,
                                        const std::vector<double>& zeta_grid,
                                        const std::vector<double>& times, unsigned threads = 0);

std::vector<double> log_spaced(double lo, double hi, int points);

}  // namespace gardner
