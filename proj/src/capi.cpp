#include <cstring>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "gardner/gardner.h"
#include "run_config.hpp"
#include "solver_core.hpp"

struct gardner_config {
  gardner::RunConfig config;
};

struct gardner_problem {
  gardner::ProblemSpec spec;
};

struct gardner_solver {
  gardner::ProblemSpec spec;
  gardner::BasisConstants constants;
  gardner::SplinePieceCoefficients coeffs;
  gardner::SplineState state;
  gardner::ConservationReport baseline;
  gardner::Stepper stepper;
  int steps_done = 0;
  std::size_t breakdown_step = 0;

  explicit gardner_solver(const gardner::ProblemSpec& s)
      : spec(s),
        constants(gardner::compute_basis_constants(s.zeta, s.grid.h())),
        coeffs(gardner::compute_piece_coefficients(s.zeta, s.grid.h())),
        state(gardner::build_initial_state(spec, constants)),
        baseline(gardner::conservation(state, spec)),
        stepper(spec, constants) {}
};

namespace {

thread_local std::string g_last_error;
thread_local std::size_t g_parse_line = 0;

gardner_status fail(gardner_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, mapping library exceptions to status codes.
template <class F>
gardner_status guard(F&& f) {
  g_last_error.clear();
  g_parse_line = 0;
  try {
    return f();
  } catch (const gardner::ParseError& e) {
    g_parse_line = e.line();
    return fail(GARDNER_ERR_PARSE, e.what());
  } catch (const gardner::NumericalBreakdown& e) {
    return fail(GARDNER_ERR_BREAKDOWN, e.what());
  } catch (const gardner::UnsupportedDiagnostic& e) {
    return fail(GARDNER_ERR_UNSUPPORTED, e.what());
  } catch (const gardner::InitializationError& e) {
    return fail(GARDNER_ERR_INITIALIZATION, e.what());
  } catch (const gardner::DomainError& e) {
    return fail(GARDNER_ERR_DOMAIN, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(GARDNER_ERR_IO, e.what());
  } catch (const gardner::Error& e) {
    return fail(GARDNER_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GARDNER_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GARDNER_ERR_INTERNAL, e.what());
  }
}

#define GARDNER_REQUIRE(cond, what) \
  if (!(cond)) return fail(GARDNER_ERR_INVALID_ARGUMENT, what)

std::string out_path(const char* p) { return p ? std::string(p) : std::string("-"); }

}  // namespace

extern "C" {

const char* gardner_last_error(void) { return g_last_error.c_str(); }

size_t gardner_last_parse_line(void) { return g_parse_line; }

const char* gardner_status_name(gardner_status status) {
  switch (status) {
    case GARDNER_OK:
      return "ok";
    case GARDNER_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case GARDNER_ERR_PARSE:
      return "parse_error";
    case GARDNER_ERR_DOMAIN:
      return "domain_error";
    case GARDNER_ERR_UNSUPPORTED:
      return "unsupported_diagnostic";
    case GARDNER_ERR_INITIALIZATION:
      return "initialization_error";
    case GARDNER_ERR_BREAKDOWN:
      return "numerical_breakdown";
    case GARDNER_ERR_IO:
      return "io_error";
    case GARDNER_ERR_INTERNAL:
      return "internal_error";
  }
  return "unknown";
}

const char* gardner_version(void) { return "1.0.0"; }

gardner_status gardner_basis_constants_compute(double zeta, double h,
                                               gardner_basis_constants* out) {
  return guard([&] {
    GARDNER_REQUIRE(out, "out is null");
    const auto k = gardner::compute_basis_constants(zeta, h);
    *out = {k.alpha1, k.alpha2, k.beta1, k.beta2, k.gamma1, k.gamma2};
    return GARDNER_OK;
  });
}

gardner_status gardner_config_load(const char* path, gardner_config** out) {
  return guard([&] {
    GARDNER_REQUIRE(path && out, "null argument");
    *out = new gardner_config{gardner::load_config(path)};
    return GARDNER_OK;
  });
}

gardner_status gardner_config_parse(const char* text, gardner_config** out) {
  return guard([&] {
    GARDNER_REQUIRE(text && out, "null argument");
    *out = new gardner_config{gardner::parse_config(text)};
    return GARDNER_OK;
  });
}

void gardner_config_free(gardner_config* config) { delete config; }

gardner_status gardner_config_emit(const gardner_config* config, char* buf, size_t capacity,
                                   size_t* needed) {
  return guard([&] {
    GARDNER_REQUIRE(config, "config is null");
    const std::string text = gardner::emit_config(config->config);
    if (needed) *needed = text.size() + 1;
    if (buf && capacity > text.size()) std::memcpy(buf, text.c_str(), text.size() + 1);
    return GARDNER_OK;
  });
}

gardner_status gardner_problem_create_example(int example, int n, double dt, double zeta,
                                              gardner_problem** out) {
  return guard([&] {
    GARDNER_REQUIRE(out, "out is null");
    switch (example) {
      case 1:
        *out = new gardner_problem{gardner::example1_spec(n, dt, zeta)};
        break;
      case 2:
        *out = new gardner_problem{gardner::example2_spec(n, dt, zeta)};
        break;
      case 3:
        *out = new gardner_problem{gardner::example3_spec(n, dt, zeta)};
        break;
      default:
        return fail(GARDNER_ERR_INVALID_ARGUMENT, "example must be 1, 2 or 3");
    }
    return GARDNER_OK;
  });
}

gardner_status gardner_problem_from_config(const gardner_config* config, gardner_problem** out) {
  return guard([&] {
    GARDNER_REQUIRE(config && out, "null argument");
    *out = new gardner_problem{gardner::make_problem(config->config)};
    return GARDNER_OK;
  });
}

void gardner_problem_free(gardner_problem* problem) { delete problem; }

gardner_status gardner_problem_set_t_end(gardner_problem* problem, double t_end) {
  return guard([&] {
    GARDNER_REQUIRE(problem, "problem is null");
    GARDNER_REQUIRE(t_end >= 0.0, "t_end must be non-negative");
    problem->spec.t_end = t_end;
    return GARDNER_OK;
  });
}

gardner_status gardner_problem_grid(const gardner_problem* problem, double* a, double* b, int* n) {
  return guard([&] {
    GARDNER_REQUIRE(problem, "problem is null");
    if (a) *a = problem->spec.grid.a();
    if (b) *b = problem->spec.grid.b();
    if (n) *n = problem->spec.grid.n();
    return GARDNER_OK;
  });
}

int gardner_problem_has_analytical(const gardner_problem* problem) {
  return problem && problem->spec.analytical ? 1 : 0;
}

gardner_status gardner_solver_create(const gardner_problem* problem, gardner_solver** out) {
  return guard([&] {
    GARDNER_REQUIRE(problem && out, "null argument");
    *out = new gardner_solver(problem->spec);
    return GARDNER_OK;
  });
}

void gardner_solver_free(gardner_solver* solver) { delete solver; }

gardner_status gardner_solver_step(gardner_solver* solver, int steps) {
  return guard([&] {
    GARDNER_REQUIRE(solver, "solver is null");
    GARDNER_REQUIRE(steps >= 0, "steps must be non-negative");
    for (int i = 0; i < steps; ++i) {
      const std::size_t index = static_cast<std::size_t>(solver->steps_done) + 1;
      try {
        solver->stepper.advance(solver->state, solver->spec.dt, index);
      } catch (const gardner::NumericalBreakdown&) {
        solver->breakdown_step = index;
        throw;
      }
      ++solver->steps_done;
      solver->state.t = solver->steps_done * solver->spec.dt;
    }
    return GARDNER_OK;
  });
}

gardner_status gardner_solver_run(gardner_solver* solver) {
  if (!solver) return fail(GARDNER_ERR_INVALID_ARGUMENT, "solver is null");
  const int remaining = solver->spec.step_count() - solver->steps_done;
  return gardner_solver_step(solver, remaining > 0 ? remaining : 0);
}

gardner_status gardner_solver_time(const gardner_solver* solver, double* t) {
  return guard([&] {
    GARDNER_REQUIRE(solver && t, "null argument");
    *t = solver->state.t;
    return GARDNER_OK;
  });
}

size_t gardner_solver_breakdown_step(const gardner_solver* solver) {
  return solver ? solver->breakdown_step : 0;
}

gardner_status gardner_solver_nodal_u(const gardner_solver* solver, double* out, size_t capacity) {
  return guard([&] {
    GARDNER_REQUIRE(solver && out, "null argument");
    const auto u = gardner::nodal_u(solver->state, solver->constants);
    GARDNER_REQUIRE(capacity >= u.size(), "buffer too small");
    std::memcpy(out, u.data(), u.size() * sizeof(double));
    return GARDNER_OK;
  });
}

gardner_status gardner_solver_evaluate(const gardner_solver* solver, double x, double* u,
                                       double* ux, double* v) {
  return guard([&] {
    GARDNER_REQUIRE(solver, "solver is null");
    const auto pv = gardner::evaluate_solution(solver->state, solver->spec.grid, x, solver->coeffs);
    if (u) *u = pv.U;
    if (ux) *ux = pv.Ux;
    if (v) *v = pv.V;
    return GARDNER_OK;
  });
}

gardner_status gardner_solver_linf_error(const gardner_solver* solver, double* linf,
                                         int* argmax_node) {
  return guard([&] {
    GARDNER_REQUIRE(solver, "solver is null");
    const auto r = gardner::linf_error(solver->state, solver->spec, solver->constants);
    if (linf) *linf = r.linf;
    if (argmax_node) *argmax_node = r.argmax_node;
    return GARDNER_OK;
  });
}

gardner_status gardner_solver_conservation(const gardner_solver* solver,
                                           gardner_conservation* out) {
  return guard([&] {
    GARDNER_REQUIRE(solver && out, "null argument");
    const auto c = gardner::conservation(solver->state, solver->spec, solver->baseline);
    *out = {c.t, c.M, c.E, c.H, c.C_M, c.C_E, c.C_H};
    return GARDNER_OK;
  });
}

gardner_status gardner_run_experiment(const gardner_config* config, gardner_run_summary* summary) {
  return guard([&] {
    GARDNER_REQUIRE(config, "config is null");
    const auto o = gardner::run_experiment(config->config);
    if (summary) {
      summary->exit_status = o.exit_status;
      summary->steps_completed = o.steps_completed;
      summary->breakdown_step = o.breakdown_step.value_or(0);
      summary->has_linf = o.final_linf.has_value() ? 1 : 0;
      summary->final_linf = o.final_linf.value_or(0.0);
    }
    if (o.exit_status == 2) return fail(GARDNER_ERR_BREAKDOWN, o.message);
    return GARDNER_OK;
  });
}

gardner_status gardner_run_table(const char* table_id, const char* output_path) {
  return guard([&] {
    GARDNER_REQUIRE(table_id, "table id is null");
    gardner::run_table(table_id, out_path(output_path));
    return GARDNER_OK;
  });
}

gardner_status gardner_run_scan(const gardner_config* config, double zeta_min, double zeta_max,
                                int points, int log_spaced, const char* output_path,
                                double* best_zeta, double* best_linf) {
  return guard([&] {
    GARDNER_REQUIRE(config, "config is null");
    gardner::ScanOptions o{zeta_min, zeta_max, points, log_spaced != 0};
    const auto r = gardner::run_scan(config->config, o, out_path(output_path));
    if (best_zeta) *best_zeta = r.best_zeta;
    if (best_linf) *best_linf = r.best_linf;
    return GARDNER_OK;
  });
}

gardner_status gardner_run_stability(const gardner_config* config, int use_epsilon,
                                     double epsilon, int phases, const char* output_path,
                                     double* max_modulus) {
  return guard([&] {
    GARDNER_REQUIRE(config, "config is null");
    std::optional<double> eps;
    if (use_epsilon) eps = epsilon;
    const double m = gardner::run_stability(config->config, eps, phases, out_path(output_path));
    if (max_modulus) *max_modulus = m;
    return GARDNER_OK;
  });
}

}  // extern "C"
