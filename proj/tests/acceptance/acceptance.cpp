// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset; the exit status is nonzero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "espline_basis.hpp"
#include "experiment.hpp"
#include "solver_core.hpp"
#include "support/dense_oracle.hpp"

using namespace gardner;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += "; failed: " + what;
    }
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

struct ConservationAt {
  ConservationReport initial;
  ConservationReport final_report;
};

ConservationAt conservation_over(const ProblemSpec& spec) {
  const auto k = compute_basis_constants(spec.zeta, spec.grid.h());
  ConservationAt r;
  std::optional<ConservationReport> base;
  run(spec, k, {[&](const SplineState& s, int n) {
        if (n == 0) {
          base = conservation(s, spec);
          r.initial = *base;
        }
        r.final_report = conservation(s, spec, base);
      }});
  return r;
}

Verdict example1_errors() {
  Verdict v;
  const int ns[] = {100, 200, 300, 400};
  const double p25[] = {1.1502e-4, 4.1696e-5, 2.3860e-5, 1.6985e-5};
  const double p5[] = {2.1665e-4, 5.7428e-5, 2.9888e-5, 1.8721e-5};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto r = linf_at_times(example1_spec(ns[i], 0.1, 1.0), {2.5, 5.0});
    const double d25 = rel(r[0].linf, p25[i]), d5 = rel(r[1].linf, p5[i]);
    worst = std::max({worst, d25, d5});
    v.require(d25 <= 0.05, "N=" + std::to_string(ns[i]) + " t=2.5 " + sci(r[0].linf));
    v.require(d5 <= 0.05, "N=" + std::to_string(ns[i]) + " t=5 " + sci(r[1].linf));
  }
  v.detail << "max relative deviation " << sci(worst) << " (tol 5e-2)";
  return v;
}

Verdict example1_scan() {
  Verdict v;
  const auto r = zeta_scan(example1_spec(100, 0.1, 1.0), table_scan_grid(), 5.0);
  v.detail << "best zeta " << sci(r.best_zeta) << " L_inf(5) " << sci(r.best_linf)
           << " (bound 6e-5)";
  v.require(r.best_linf <= 6e-5, "scan bound");
  return v;
}

Verdict example1_conservation() {
  Verdict v;
  double worst0 = 0.0, cm = 0.0, ce = 0.0, ch = 0.0;
  for (int n : {100, 200, 300, 400}) {
    const auto r = conservation_over(example1_spec(n, 0.1, 1.0));
    const double d = std::max({rel(r.initial.M, 1.04458), rel(r.initial.E, 0.06013453),
                               rel(r.initial.H, 0.00407022)});
    worst0 = std::max(worst0, d);
    cm = std::max(cm, r.final_report.C_M);
    ce = std::max(ce, r.final_report.C_E);
    ch = std::max(ch, r.final_report.C_H);
    v.require(d <= 1e-4, "initial values N=" + std::to_string(n));
    v.require(r.final_report.C_M <= 1e-4, "C_M N=" + std::to_string(n));
    v.require(r.final_report.C_E <= 1e-6, "C_E N=" + std::to_string(n));
    v.require(r.final_report.C_H <= 1e-4, "C_H N=" + std::to_string(n));
  }
  v.detail << "initial dev " << sci(worst0) << ", max C_M " << sci(cm) << " C_E " << sci(ce)
           << " C_H " << sci(ch);
  return v;
}

Verdict example2_errors() {
  Verdict v;
  const int ns[] = {100, 200, 400, 600, 800};
  const double reference[] = {3.8436e-4, 1.0016e-4, 2.5327e-5, 1.1280e-5, 6.3476e-6};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto spec = example2_spec(ns[i], 0.1, 1.0);
    const double e = linf_error(run(spec), spec).linf;
    worst = std::max(worst, rel(e, reference[i]));
    v.require(rel(e, reference[i]) <= 0.05, "N=" + std::to_string(ns[i]) + " " + sci(e));
  }
  const auto scan = zeta_scan(example2_spec(100, 0.1, 1.0), table_scan_grid(), 12.0);
  v.require(scan.best_linf <= 3e-5, "scan " + sci(scan.best_linf));
  v.detail << "max relative deviation " << sci(worst) << ", scanned L_inf(12) "
           << sci(scan.best_linf) << " at zeta " << sci(scan.best_zeta);
  return v;
}

Verdict example2_conservation() {
  Verdict v;
  const auto r = conservation_over(example2_spec(100, 0.1, 1.0));
  v.require(rel(r.initial.M, 16.1599) <= 1e-3, "M0 " + sci(r.initial.M));
  v.require(rel(r.initial.E, 3.0129) <= 1e-3, "E0 " + sci(r.initial.E));
  v.require(rel(r.initial.H, 0.0979) <= 1e-3, "H0 " + sci(r.initial.H));
  const auto& c = r.final_report;
  for (auto [name, val] : {std::pair{"C_M", c.C_M}, {"C_E", c.C_E}, {"C_H", c.C_H}}) {
    v.require(val >= 1e-4 && val <= 1e-3, std::string(name) + " " + sci(val) + " not in [1e-4, 1e-3]");
  }
  v.detail << "M0 " << sci(r.initial.M) << " E0 " << sci(r.initial.E) << " H0 "
           << sci(r.initial.H) << ", C_M " << sci(c.C_M) << " C_E " << sci(c.C_E) << " C_H "
           << sci(c.C_H);
  return v;
}

Verdict example3_conservation() {
  Verdict v;
  const auto r = conservation_over(example3_spec(200, 0.1, 1.0));
  v.require(rel(r.initial.M, 5.2255) <= 1e-3, "M0");
  v.require(rel(r.initial.E, 1.5033) <= 1e-3, "E0");
  v.require(rel(r.initial.H, 1.5994) <= 1e-3, "H0");
  const auto& c = r.final_report;
  v.require(c.C_M <= 1e-4, "C_M " + sci(c.C_M) + " > 1e-4");
  v.require(c.C_E <= 1e-3, "C_E " + sci(c.C_E) + " > 1e-3");
  v.require(c.C_H <= 1e-2, "C_H " + sci(c.C_H) + " > 1e-2");
  v.detail << "M0 " << sci(r.initial.M) << " E0 " << sci(r.initial.E) << " H0 "
           << sci(r.initial.H) << ", C_M(15) " << sci(c.C_M) << " C_E(15) " << sci(c.C_E)
           << " C_H(15) " << sci(c.C_H);
  return v;
}

Verdict stability() {
  Verdict v;
  std::vector<double> phases;
  for (int i = 0; i <= 256; ++i) phases.push_back(std::numbers::pi * i / 256);
  double worst = 0.0;
  for (const auto& spec : {example1_spec(100, 0.1, 1.0), example2_spec(100, 0.1, 1.0), example3_spec()}) {
    const auto k = compute_basis_constants(spec.zeta, spec.grid.h());
    for (double eps : {0.0, 0.1, 1.0, 10.0}) {
      for (const auto& s : amplification_factors(spec, k, eps, phases)) {
        worst = std::max({worst, s.modulus_momentum, s.modulus_constraint});
      }
    }
  }
  v.require(worst <= 1.0 + 1e-12, "modulus above one");
  v.detail << "max |rho| - 1 = " << sci(worst - 1.0);
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double worst = 0.0;
  for (int n : {8, 16, 32}) {
    const auto spec = example1_spec(n, 0.1, 1.0);
    const auto k = compute_basis_constants(1.0, spec.grid.h());
    for (int trial = 0; trial < 5; ++trial) {
      SplineState s;
      s.delta.resize(static_cast<std::size_t>(n) + 3);
      s.phi.resize(static_cast<std::size_t>(n) + 3);
      for (auto& x : s.delta) x = u(rng);
      for (auto& x : s.phi) x = u(rng);
      const auto a = step(s, spec, k);
      const auto b = testing::dense_step(s, spec, k, spec.dt);
      double diff = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < a.delta.size(); ++i) {
        diff = std::max({diff, std::abs(a.delta[i] - b.delta[i]), std::abs(a.phi[i] - b.phi[i])});
        scale = std::max({scale, std::abs(b.delta[i]), std::abs(b.phi[i])});
      }
      worst = std::max(worst, diff / scale);
    }
  }
  v.require(worst <= 1e-10, "banded vs dense");
  v.detail << "max relative difference " << sci(worst) << " (tol 1e-10)";
  return v;
}

Verdict basis_properties() {
  Verdict v;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> logx(std::log(1e-8), std::log(5.0));
  double cont = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const double h = 0.5;
    const double z = std::exp(logx(rng)) / h;
    const auto p = compute_piece_coefficients(z, h);
    const auto k = compute_basis_constants(z, h);
    const double e = 1e-12 * h;
    for (double knot : {-h, h}) {
      const auto lo = evaluate_bspline(0.0, knot - e, p);
      const auto hi = evaluate_bspline(0.0, knot + e, p);
      cont = std::max({cont, std::abs(lo.value - hi.value), std::abs(lo.d1 - hi.d1) / std::abs(k.beta1),
                       std::abs(lo.d2 - hi.d2) / k.gamma1});
    }
  }
  // The 2e offset contributes about 6e / h to the scaled d2 jump.
  v.require(cont <= 1e-9, "knot continuity");

  const double h = 0.5;
  const auto k = compute_basis_constants(1e-6 / h, h);
  const double da = std::abs(k.alpha1 - 0.25);
  const double db = std::abs(k.beta1 + 3.0 / (4.0 * h)) / (3.0 / (4.0 * h));
  const double dg = std::abs(k.gamma1 - 3.0 / (2.0 * h * h)) / (3.0 / (2.0 * h * h));
  v.require(std::max({da, db, dg}) <= 1e-9, "cubic limit");

  double fixed = 0.0;
  std::uniform_real_distribution<double> mu(-5.0, 5.0), c(-1.0, 1.0), lz(-14.0, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const double zeta = std::exp(lz(rng));
    auto spec = custom_spec("c", {mu(rng), mu(rng), 1.0 + std::abs(mu(rng))}, Grid(-5.0, 5.0, 16),
                            0.1, zeta, 1.0, [](double) { return 0.0; });
    const auto kk = compute_basis_constants(zeta, spec.grid.h());
    SplineState s;
    s.delta.assign(19, c(rng));
    s.phi.assign(19, 0.0);
    const auto next = step(s, spec, kk);
    for (std::size_t i = 0; i < 19; ++i) {
      fixed = std::max({fixed, std::abs(next.delta[i] - s.delta[i]), std::abs(next.phi[i])});
    }
  }
  v.require(fixed <= 1e-10, "constant fixed point");
  v.detail << "continuity " << sci(cont) << ", limit dev " << sci(std::max({da, db, dg}))
           << ", fixed-point dev " << sci(fixed);
  return v;
}

Verdict refinement() {
  Verdict v;
  std::ostringstream e1, e2;
  double prev = INFINITY;
  for (int n : {100, 200, 300, 400}) {
    const auto spec = example1_spec(n, 0.1, 1.0);
    const double e = linf_error(run(spec), spec).linf;
    v.require(e < prev, "example 1 N=" + std::to_string(n));
    e1 << ' ' << sci(e);
    prev = e;
  }
  prev = INFINITY;
  for (int n : {100, 200, 400, 600, 800}) {
    const auto spec = example2_spec(n, 0.1, 1.0);
    const double e = linf_error(run(spec), spec).linf;
    v.require(e < prev, "example 2 N=" + std::to_string(n));
    e2 << ' ' << sci(e);
    prev = e;
  }
  v.detail << "example 1:" << e1.str() << "; example 2:" << e2.str();
  return v;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "Example 1 error reproduction (zeta = 1)", example1_errors},
      {2, "Example 1 scanned-zeta improvement", example1_scan},
      {3, "Example 1 conservation", example1_conservation},
      {4, "Example 2 error reproduction and scan", example2_errors},
      {5, "Example 2 conservation", example2_conservation},
      {6, "Example 3 conservation", example3_conservation},
      {7, "Amplification factors bounded by one", stability},
      {8, "Banded step equals dense solve", oracle_equivalence},
      {9, "Basis properties", basis_properties},
      {10, "Refinement trend", refinement},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    std::printf("%s [%d] %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                (v.detail.str() + v.failures).c_str());
    failed += v.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
