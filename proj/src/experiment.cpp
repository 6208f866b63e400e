#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "errors.hpp"

namespace gardner {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

namespace {

namespace fs = std::filesystem;

std::ofstream open_file(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  return f;
}

/// Writes through a file or stdout.
void write_output(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  auto f = open_file(p);
  f << text;
  if (!f) throw Error("failed writing '" + path + "'");
}

std::set<int> step_set(const std::vector<double>& times, double dt) {
  std::set<int> s;
  for (double t : times) s.insert(static_cast<int>(std::lround(t / dt)));
  return s;
}

std::string row(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  return out + '\n';
}

// Runs independent jobs on a small thread pool.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) job(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

ExperimentOutcome run_experiment(const RunConfig& config) {
  const ProblemSpec spec = make_problem(config);
  const auto k = compute_basis_constants(spec.zeta, spec.grid.h());
  const auto coeffs = compute_piece_coefficients(spec.zeta, spec.grid.h());

  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  std::ostringstream snapshots, cons, errors;
  snapshots << "t,x,u,v\n";
  cons << "t,M,E,H,C_M,C_E,C_H\n";
  errors << "t,linf,argmax_x\n";

  const auto snap_steps = step_set(config.snapshot_times, spec.dt);
  const bool every_step = config.report_times.empty();
  const auto report_steps = step_set(config.report_times, spec.dt);
  const double a = spec.grid.a();
  const double b = spec.grid.b();
  const int samples = std::max(2, static_cast<int>(std::ceil((b - a) * config.snapshot_density)) + 1);

  ExperimentOutcome out;
  std::optional<ConservationReport> baseline;

  auto observe = [&](const SplineState& s, int n) {
    out.steps_completed = n;
    if (snap_steps.count(n)) {
      const std::string t = format_number(s.t);
      for (int i = 0; i < samples; ++i) {
        const double x = i + 1 == samples ? b : a + (b - a) * i / (samples - 1);
        const auto pv = evaluate_solution(s, spec.grid, x, coeffs);
        snapshots << row({t, format_number(x), format_number(pv.U), format_number(pv.V)});
      }
    }
    const bool report = every_step || report_steps.count(n) || n == 0;
    if (!report && n != spec.step_count()) return;
    auto c = conservation(s, spec, baseline, config.quadrature);
    if (!baseline) {
      baseline = c;
      c = conservation(s, spec, baseline, config.quadrature);
    }
    out.final_conservation = c;
    if (report) {
      cons << row({format_number(c.t), format_number(c.M), format_number(c.E), format_number(c.H),
                   format_number(c.C_M), format_number(c.C_E), format_number(c.C_H)});
    }
    if (spec.analytical) {
      const auto e = linf_error(s, spec, k);
      out.final_linf = e.linf;
      if (report) {
        errors << row({format_number(e.t), format_number(e.linf),
                       format_number(spec.grid.node(e.argmax_node))});
      }
    }
  };

  try {
    run(spec, k, {observe});
  } catch (const NumericalBreakdown& e) {
    out.exit_status = 2;
    out.breakdown_step = e.step();
    out.message = e.what();
  }

  auto write = [&](const char* name, const std::string& text) {
    auto f = open_file(dir / name);
    f << text;
    if (!f) throw Error("failed writing '" + (dir / name).string() + "'");
  };
  write("snapshots.csv", snapshots.str());
  write("conservation.csv", cons.str());
  if (spec.analytical) write("errors.csv", errors.str());

  std::ostringstream summary;
  summary << emit_config(config);
  summary << "h = " << format_number(spec.grid.h()) << '\n';
  summary << "alpha1 = " << format_number(k.alpha1) << '\n';
  summary << "beta1 = " << format_number(k.beta1) << '\n';
  summary << "gamma1 = " << format_number(k.gamma1) << '\n';
  summary << "steps_planned = " << spec.step_count() << '\n';
  summary << "steps_completed = " << out.steps_completed << '\n';
  summary << "status = " << (out.exit_status == 0 ? "ok" : "numerical_breakdown") << '\n';
  if (out.breakdown_step) {
    summary << "breakdown_step = " << *out.breakdown_step << '\n';
    summary << "message = " << out.message << '\n';
  }
  if (baseline) {
    summary << "M0 = " << format_number(baseline->M) << '\n';
    summary << "E0 = " << format_number(baseline->E) << '\n';
    summary << "H0 = " << format_number(baseline->H) << '\n';
  }
  if (out.final_conservation) {
    summary << "C_M = " << format_number(out.final_conservation->C_M) << '\n';
    summary << "C_E = " << format_number(out.final_conservation->C_E) << '\n';
    summary << "C_H = " << format_number(out.final_conservation->C_H) << '\n';
  }
  if (out.final_linf) summary << "final_linf = " << format_number(*out.final_linf) << '\n';
  write("summary.txt", summary.str());
  return out;
}

std::vector<double> table_scan_grid() {
  auto g = log_spaced(1e-7, 1e-5, 40);
  g.push_back(1.0);
  return g;
}

namespace {

struct ReferenceScan {
  double zeta;
  double linf;
};

struct ConservationRun {
  ConservationReport initial;
  std::vector<ConservationReport> at;
};

ConservationRun conservation_run(const ProblemSpec& spec, const std::vector<double>& times) {
  const auto k = compute_basis_constants(spec.zeta, spec.grid.h());
  ProblemSpec s = spec;
  s.t_end = times.back();
  ConservationRun r;
  r.at.resize(times.size());
  std::optional<ConservationReport> base;
  run(s, k, {[&](const SplineState& st, int n) {
        if (n == 0) {
          base = conservation(st, s);
          r.initial = *base;
        }
        for (std::size_t i = 0; i < times.size(); ++i) {
          if (std::lround(times[i] / s.dt) == n) r.at[i] = conservation(st, s, base);
        }
      }});
  return r;
}

std::string table_t2() {
  const int ns[] = {100, 200, 300, 400};
  const double ref_25[] = {1.1502e-4, 4.1696e-5, 2.3860e-5, 1.6985e-5};
  const double ref_5[] = {2.1665e-4, 5.7428e-5, 2.9888e-5, 1.8721e-5};
  const ReferenceScan scan_25[] = {{3e-6, 3.2331e-5}, {1e-6, 1.6622e-5}, {5e-6, 1.3923e-5}, {4e-6, 1.4470e-5}};
  const ReferenceScan scan_5[] = {{3e-6, 5.1481e-5}, {1e-6, 1.8886e-5}, {4e-6, 1.7006e-5}, {3e-6, 1.5404e-5}};
  std::vector<std::string> lines(4);
  for (std::size_t i = 0; i < 4; ++i) {
    std::string status = "ok";
    std::vector<ScanResult> sc;
    try {
      sc = zeta_scan_times(example1_spec(ns[i], 0.1, 1.0), table_scan_grid(), {2.5, 5.0});
    } catch (const std::exception& e) {
      status = e.what();
    }
    auto at_one = [&](const ScanResult& r) {
      for (const auto& e : r.table) {
        if (e.zeta == 1.0) return e.ok ? e.linf : std::nan("");
      }
      return std::nan("");
    };
    const double nan = std::nan("");
    const bool ok = sc.size() == 2;
    lines[i] = row({std::to_string(ns[i]), format_number(ok ? at_one(sc[0]) : nan),
                    format_number(ref_25[i]), format_number(ok ? sc[0].best_zeta : nan),
                    format_number(ok ? sc[0].best_linf : nan), format_number(scan_25[i].zeta),
                    format_number(scan_25[i].linf), format_number(ok ? at_one(sc[1]) : nan),
                    format_number(ref_5[i]), format_number(ok ? sc[1].best_zeta : nan),
                    format_number(ok ? sc[1].best_linf : nan), format_number(scan_5[i].zeta),
                    format_number(scan_5[i].linf), '"' + status + '"'});
  }
  std::string out =
      "N,linf_2.5_zeta1,ref_linf_2.5_zeta1,scan_zeta_2.5,linf_2.5_scan,ref_zeta_2.5,"
      "ref_linf_2.5_scan,linf_5_zeta1,ref_linf_5_zeta1,scan_zeta_5,linf_5_scan,ref_zeta_5,"
      "ref_linf_5_scan,status\n";
  for (const auto& l : lines) out += l;
  return out;
}

std::string table_t4() {
  const int ns[] = {100, 200, 400, 600, 800};
  const double reference[] = {3.8436e-4, 1.0016e-4, 2.5327e-5, 1.1280e-5, 6.3476e-6};
  const ReferenceScan scan[] = {{1e-6, 2.3022e-5}, {2e-6, 5.8623e-6}, {4e-6, 1.3684e-6},
                            {6e-6, 5.3420e-7}, {8e-6, 2.3800e-7}};
  std::string out =
      "N,linf_12_zeta1,ref_linf_12_zeta1,scan_zeta,linf_12_scan,ref_zeta,ref_linf_12_scan,"
      "status\n";
  for (std::size_t i = 0; i < 5; ++i) {
    std::string status = "ok";
    ScanResult sc;
    double one = std::nan("");
    try {
      sc = zeta_scan(example2_spec(ns[i], 0.1, 1.0), table_scan_grid(), 12.0);
      for (const auto& e : sc.table) {
        if (e.zeta == 1.0 && e.ok) one = e.linf;
      }
    } catch (const std::exception& e) {
      status = e.what();
      sc.best_zeta = sc.best_linf = std::nan("");
    }
    out += row({std::to_string(ns[i]), format_number(one), format_number(reference[i]),
                format_number(sc.best_zeta), format_number(sc.best_linf),
                format_number(scan[i].zeta), format_number(scan[i].linf), '"' + status + '"'});
  }
  return out;
}

struct ConservationReferenceRow {
  int n;
  double m0, e0, h0, cm, ce, ch;
};

std::string conservation_table(const std::vector<ConservationReferenceRow>& reference,
                               const std::function<ProblemSpec(int)>& make, double t,
                               const std::string& suffix) {
  std::vector<std::string> lines(reference.size());
  parallel_for(reference.size(), [&](std::size_t i) {
    const auto& p = reference[i];
    std::string status = "ok";
    ConservationRun r;
    r.at.resize(1);
    const double nan = std::nan("");
    r.initial.M = r.initial.E = r.initial.H = nan;
    r.at[0].C_M = r.at[0].C_E = r.at[0].C_H = nan;
    try {
      r = conservation_run(make(p.n), {t});
    } catch (const std::exception& e) {
      status = e.what();
    }
    const auto& c = r.at[0];
    lines[i] = row({std::to_string(p.n), format_number(r.initial.M), format_number(r.initial.E),
                    format_number(r.initial.H), format_number(c.C_M), format_number(c.C_E),
                    format_number(c.C_H), format_number(p.m0), format_number(p.e0),
                    format_number(p.h0), format_number(p.cm), format_number(p.ce),
                    format_number(p.ch), '"' + status + '"'});
  });
  std::string out = "N,M0,E0,H0,C_M" + suffix + ",C_E" + suffix + ",C_H" + suffix +
                    ",ref_M0,ref_E0,ref_H0,ref_C_M" + suffix + ",ref_C_E" + suffix +
                    ",ref_C_H" + suffix + ",status\n";
  for (const auto& l : lines) out += l;
  return out;
}

std::string table_t3() {
  return conservation_table(
      {{100, 1.04458, 0.06013453, 0.00407022, 5.5668e-6, 2.6168e-8, 1.2174e-5},
       {200, 1.04458, 0.06013453, 0.00407022, 2.9640e-6, 5.0740e-8, 1.0597e-6},
       {300, 1.04458, 0.06013453, 0.00407022, 2.3326e-7, 2.2152e-8, 2.7126e-6},
       {400, 1.04458, 0.06013453, 0.00407022, 1.1862e-6, 8.8551e-10, 3.3555e-6}},
      [](int n) { return example1_spec(n, 0.1, 1.0); }, 5.0, "_5");
}

std::string table_t5() {
  return conservation_table(
      {{100, 16.1599, 3.0129, 0.0979, 4.9493e-4, 5.3092e-4, 5.4405e-4},
       {200, 16.0799, 2.9969, 0.0974, 4.9750e-4, 5.3387e-4, 5.4720e-4},
       {400, 16.0399, 2.9889, 0.0971, 4.9875e-4, 5.3531e-4, 5.4871e-4},
       {600, 16.0266, 2.9862, 0.0971, 4.9917e-4, 5.3578e-4, 5.4922e-4},
       {800, 16.0199, 2.9849, 0.0970, 4.9937e-4, 5.3602e-4, 5.4947e-4}},
      [](int n) { return example2_spec(n, 0.1, 1.0); }, 12.0, "_12");
}

std::string table_t6() {
  const double times[] = {5.0, 10.0, 15.0};
  const double reference[3][3] = {{1.2040e-6, 3.7180e-5, 2.1608e-3},
                              {3.6819e-6, 5.2527e-5, 3.1907e-3},
                              {8.9144e-6, 5.8526e-4, 3.5478e-3}};
  std::string status = "ok";
  ConservationRun r;
  try {
    r = conservation_run(example3_spec(200, 0.1, 1.0), {5.0, 10.0, 15.0});
  } catch (const std::exception& e) {
    status = e.what();
    const double nan = std::nan("");
    r.initial.M = r.initial.E = r.initial.H = nan;
    r.at.assign(3, {});
    for (auto& c : r.at) c.C_M = c.C_E = c.C_H = nan;
  }
  std::string out =
      "t,M0,E0,H0,C_M,C_E,C_H,ref_M0,ref_E0,ref_H0,ref_C_M,ref_C_E,ref_C_H,status\n";
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& c = r.at[i];
    out += row({format_number(times[i]), format_number(r.initial.M), format_number(r.initial.E),
                format_number(r.initial.H), format_number(c.C_M), format_number(c.C_E),
                format_number(c.C_H), format_number(5.2255), format_number(1.5033),
                format_number(1.5994), format_number(reference[i][0]), format_number(reference[i][1]),
                format_number(reference[i][2]), '"' + status + '"'});
  }
  return out;
}

}  // namespace

void run_table(const std::string& id, const std::string& output_path) {
  std::string text;
  if (id == "T2") {
    text = table_t2();
  } else if (id == "T3") {
    text = table_t3();
  } else if (id == "T4") {
    text = table_t4();
  } else if (id == "T5") {
    text = table_t5();
  } else if (id == "T6") {
    text = table_t6();
  } else {
    throw DomainError("unknown table id '" + id + "' (expected T2..T6)");
  }
  write_output(output_path, text);
}

ScanResult run_scan(const RunConfig& config, const ScanOptions& o, const std::string& output_path) {
  if (o.points < 1) throw DomainError("scan needs at least one point");
  if (!(o.zeta_min > 0.0) || !(o.zeta_max >= o.zeta_min)) throw DomainError("invalid zeta range");
  std::vector<double> grid;
  if (o.log_spaced) {
    grid = log_spaced(o.zeta_min, o.zeta_max, o.points);
  } else if (o.points == 1) {
    grid = {o.zeta_min};
  } else {
    for (int i = 0; i < o.points; ++i) {
      grid.push_back(o.zeta_min + (o.zeta_max - o.zeta_min) * i / (o.points - 1));
    }
  }
  const ProblemSpec spec = make_problem(config);
  const auto result = zeta_scan(spec, grid, config.t_end);
  std::string text = "zeta,linf,status\n";
  for (const auto& e : result.table) {
    text += row({format_number(e.zeta), format_number(e.linf), '"' + (e.ok ? std::string("ok") : e.error) + '"'});
  }
  text += "# best_zeta = " + format_number(result.best_zeta) +
          ", best_linf = " + format_number(result.best_linf) + '\n';
  write_output(output_path, text);
  return result;
}

double run_stability(const RunConfig& config, std::optional<double> epsilon, int phases,
                     const std::string& output_path) {
  if (phases < 1) throw DomainError("phases must be positive");
  const ProblemSpec spec = make_problem(config);
  const auto k = compute_basis_constants(spec.zeta, spec.grid.h());
  const double eps = epsilon ? *epsilon : default_epsilon(spec, k);
  std::vector<double> ph;
  for (int i = 0; i <= phases; ++i) ph.push_back(std::numbers::pi * i / phases);
  const auto samples = amplification_factors(spec, k, eps, ph);
  std::string text =
      "phase,epsilon,rho_momentum_re,rho_momentum_im,modulus_momentum,rho_constraint_re,"
      "rho_constraint_im,modulus_constraint\n";
  double worst = 0.0;
  for (const auto& s : samples) {
    text += row({format_number(s.phase), format_number(s.epsilon),
                 format_number(s.rho_momentum.real()), format_number(s.rho_momentum.imag()),
                 format_number(s.modulus_momentum), format_number(s.rho_constraint.real()),
                 format_number(s.rho_constraint.imag()), format_number(s.modulus_constraint)});
    worst = std::max({worst, s.modulus_momentum, s.modulus_constraint});
  }
  write_output(output_path, text);
  return worst;
}

}  // namespace gardner
