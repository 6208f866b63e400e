#include <cmath>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "gardner/gardner.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBreakdown = 2;

int report(gardner_status s) {
  if (s == GARDNER_OK) return kExitOk;
  std::fprintf(stderr, "error (%s): %s\n", gardner_status_name(s), gardner_last_error());
  return s == GARDNER_ERR_BREAKDOWN ? kExitBreakdown : kExitUsage;
}

/// Owns a loaded config handle.
class Config {
 public:
  explicit Config(const std::string& path) { status_ = gardner_config_load(path.c_str(), &cfg_); }
  ~Config() { gardner_config_free(cfg_); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;

  gardner_status status() const { return status_; }
  const gardner_config* get() const { return cfg_; }

 private:
  gardner_config* cfg_ = nullptr;
  gardner_status status_;
};

int cmd_run(const std::string& path) {
  Config cfg(path);
  if (cfg.status() != GARDNER_OK) return report(cfg.status());
  gardner_run_summary summary{};
  const gardner_status s = gardner_run_experiment(cfg.get(), &summary);
  if (s == GARDNER_OK) {
    std::printf("steps: %d\n", summary.steps_completed);
    if (summary.has_linf) std::printf("final linf: %.8e\n", summary.final_linf);
  } else if (s == GARDNER_ERR_BREAKDOWN) {
    std::fprintf(stderr, "breakdown at step %zu\n", summary.breakdown_step);
  }
  return report(s);
}

int cmd_table(const std::string& id, const std::string& out) {
  return report(gardner_run_table(id.c_str(), out.c_str()));
}

int cmd_scan(const std::string& path, double zmin, double zmax, int points, bool log_spaced,
             const std::string& out) {
  Config cfg(path);
  if (cfg.status() != GARDNER_OK) return report(cfg.status());
  double best_zeta = 0.0, best_linf = 0.0;
  const gardner_status s = gardner_run_scan(cfg.get(), zmin, zmax, points, log_spaced ? 1 : 0,
                                            out.c_str(), &best_zeta, &best_linf);
  if (s == GARDNER_OK) {
    std::fprintf(stderr, "best zeta %.8e, linf %.8e\n", best_zeta, best_linf);
  }
  return report(s);
}

int cmd_stability(const std::string& path, double epsilon, int phases, const std::string& out) {
  Config cfg(path);
  if (cfg.status() != GARDNER_OK) return report(cfg.status());
  double worst = 0.0;
  const bool have_eps = !std::isnan(epsilon);
  const gardner_status s =
      gardner_run_stability(cfg.get(), have_eps ? 1 : 0, epsilon, phases, out.c_str(), &worst);
  if (s == GARDNER_OK) std::fprintf(stderr, "max |rho| = %.17g\n", worst);
  return report(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential cubic B-spline collocation solver for the Gardner equation"};
  app.require_subcommand(1);

  std::string run_cfg;
  auto* run = app.add_subcommand("run", "Run a simulation and write CSV output");
  run->add_option("config", run_cfg, "Run configuration file")->required();

  std::string table_id, table_out = "-";
  auto* table = app.add_subcommand("table", "Reproduce one of the error/conservation tables");
  table->add_option("id", table_id, "T2, T3, T4, T5 or T6")->required();
  table->add_option("--out", table_out, "Output CSV path ('-' for stdout)");

  std::string scan_cfg, scan_out = "-";
  double zmin = 1e-7, zmax = 1.0;
  int points = 20;
  bool log_spaced = false;
  auto* scan = app.add_subcommand("scan", "Scan the spline parameter zeta");
  scan->add_option("config", scan_cfg, "Run configuration file")->required();
  scan->add_option("--zeta-min", zmin, "Smallest zeta");
  scan->add_option("--zeta-max", zmax, "Largest zeta");
  scan->add_option("--points", points, "Number of zeta values");
  scan->add_flag("--log-spaced", log_spaced, "Use logarithmic spacing");
  scan->add_option("--out", scan_out, "Output CSV path ('-' for stdout)");

  std::string stab_cfg, stab_out = "-";
  double epsilon = std::nan("");
  int phases = 256;
  auto* stab = app.add_subcommand("stability", "Tabulate von Neumann amplification factors");
  stab->add_option("config", stab_cfg, "Run configuration file")->required();
  stab->add_option("--epsilon", epsilon, "Frozen nonlinear coefficient (default from data)");
  stab->add_option("--phases", phases, "Number of phase intervals on [0, pi]");
  stab->add_option("--out", stab_out, "Output CSV path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*run) return cmd_run(run_cfg);
  if (*table) return cmd_table(table_id, table_out);
  if (*scan) return cmd_scan(scan_cfg, zmin, zmax, points, log_spaced, scan_out);
  if (*stab) return cmd_stability(stab_cfg, epsilon, phases, stab_out);
  return kExitUsage;
}
