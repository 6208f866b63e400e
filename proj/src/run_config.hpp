#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "problem_model.hpp"

namespace gardner {

enum class Experiment { kExample1, kExample2, kExample3, kCustom };

const char* to_string(Experiment e);

/// Problem data of a user-defined experiment.
struct CustomProblem {
  double a = 0.0;
  double b = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 1.0;
  std::string initial;  // expression in x

  bool operator==(const CustomProblem&) const = default;
};

struct RunConfig {
  Experiment experiment = Experiment::kExample1;
  int n = 100;
  double dt = 0.1;
  double zeta = 1.0;
  double t_end = 5.0;
  std::vector<double> snapshot_times;
  /// Empty means every time step.
  std::vector<double> report_times;
  std::string output_dir = "out";
  /// Snapshot samples per unit length.
  double snapshot_density = 5.0;
  BoundaryClosure closure = BoundaryClosure::kLinearExtrapolation;
  Quadrature quadrature = Quadrature::kNodalSum;
  std::optional<CustomProblem> custom;

  bool operator==(const RunConfig&) const = default;
};

/// Parses `key = value` lines. '#' starts a comment; a `[custom]` line opens
/// the block holding a, b, mu1, mu2, mu3 and initial. Lists are comma
/// separated. Missing keys take per-experiment defaults. Throws ParseError
/// naming the key and line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Text that parse_config maps back to the same RunConfig.
std::string emit_config(const RunConfig& config);

/// Builds the problem described by the config.
ProblemSpec make_problem(const RunConfig& config);

}  // namespace gardner
