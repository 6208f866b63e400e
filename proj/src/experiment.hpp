#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace gardner {

struct ExperimentOutcome {
  /// 0 success, 2 numerical breakdown.
  int exit_status = 0;
  int steps_completed = 0;
  std::optional<std::size_t> breakdown_step;
  std::string message;
  std::optional<double> final_linf;
  std::optional<ConservationReport> final_conservation;
};

/// Runs the configured simulation and writes snapshots.csv, conservation.csv,
/// errors.csv (only with an analytical solution) and summary.txt into
/// config.output_dir. Throws on I/O failure.
ExperimentOutcome run_experiment(const RunConfig& config);

/// Table ids are "T2" to "T6". Throws DomainError for an unknown id.
void run_table(const std::string& table_id, const std::string& output_path);

/// Zeta grid used by the T2 and T4 scans.
std::vector<double> table_scan_grid();

struct ScanOptions {
  double zeta_min = 1e-7;
  double zeta_max = 1.0;
  int points = 20;
  bool log_spaced = true;
};

/// Scans zeta at the config's t_end and writes zeta,linf,status rows.
/// `output_path` of "-" writes to stdout.
ScanResult run_scan(const RunConfig& config, const ScanOptions& options,
                    const std::string& output_path);

/// Writes amplification factors at phases k*pi/phases, k = 0..phases, and
/// returns the largest modulus seen. Without an epsilon the initial-data
/// default is used.
double run_stability(const RunConfig& config, std::optional<double> epsilon, int phases,
                     const std::string& output_path);

/// Scientific notation with 9 significant digits.
std::string format_number(double v);

}  // namespace gardner
