#pragma once

/// C interface of the Gardner equation solver library.
///
/// All objects are opaque handles created by a *_create / *_load function and
/// released by the matching *_free. Functions return a gardner_status; on
/// failure gardner_last_error() describes the problem (per thread).

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GARDNER_API __declspec(dllexport)
#else
#define GARDNER_API __attribute__((visibility("default")))
#endif

typedef enum gardner_status {
  GARDNER_OK = 0,
  GARDNER_ERR_INVALID_ARGUMENT = 1,
  GARDNER_ERR_PARSE = 2,
  GARDNER_ERR_DOMAIN = 3,
  GARDNER_ERR_UNSUPPORTED = 4,
  GARDNER_ERR_INITIALIZATION = 5,
  GARDNER_ERR_BREAKDOWN = 6,
  GARDNER_ERR_IO = 7,
  GARDNER_ERR_INTERNAL = 8
} gardner_status;

typedef struct gardner_config gardner_config;
typedef struct gardner_problem gardner_problem;
typedef struct gardner_solver gardner_solver;

/// Message of the last failed call on this thread; empty after success.
GARDNER_API const char* gardner_last_error(void);
GARDNER_API const char* gardner_status_name(gardner_status status);
GARDNER_API const char* gardner_version(void);

/* Basis */

typedef struct gardner_basis_constants {
  double alpha1;
  double alpha2;
  double beta1;
  double beta2;
  double gamma1;
  double gamma2;
} gardner_basis_constants;

GARDNER_API gardner_status gardner_basis_constants_compute(double zeta, double h,
                                                           gardner_basis_constants* out);

/* Configuration */

GARDNER_API gardner_status gardner_config_load(const char* path, gardner_config** out);
GARDNER_API gardner_status gardner_config_parse(const char* text, gardner_config** out);
GARDNER_API void gardner_config_free(gardner_config* config);
/// Copies the canonical text form into buf (NUL-terminated when it fits).
/// *needed receives the required size including the terminator.
GARDNER_API gardner_status gardner_config_emit(const gardner_config* config, char* buf,
                                               size_t capacity, size_t* needed);
/// Line of the last parse error (0 when unknown).
GARDNER_API size_t gardner_last_parse_line(void);

/* Problems */

/// example is 1, 2 or 3.
GARDNER_API gardner_status gardner_problem_create_example(int example, int n, double dt,
                                                          double zeta, gardner_problem** out);
GARDNER_API gardner_status gardner_problem_from_config(const gardner_config* config,
                                                       gardner_problem** out);
GARDNER_API void gardner_problem_free(gardner_problem* problem);
GARDNER_API gardner_status gardner_problem_set_t_end(gardner_problem* problem, double t_end);
/// Node count is N + 1.
GARDNER_API gardner_status gardner_problem_grid(const gardner_problem* problem, double* a,
                                                double* b, int* n);
GARDNER_API int gardner_problem_has_analytical(const gardner_problem* problem);

/* Solver */

/// Builds the initial state of the problem.
GARDNER_API gardner_status gardner_solver_create(const gardner_problem* problem,
                                                 gardner_solver** out);
GARDNER_API void gardner_solver_free(gardner_solver* solver);
/// Advances by `steps` time steps.
GARDNER_API gardner_status gardner_solver_step(gardner_solver* solver, int steps);
/// Advances to the problem's t_end.
GARDNER_API gardner_status gardner_solver_run(gardner_solver* solver);
GARDNER_API gardner_status gardner_solver_time(const gardner_solver* solver, double* t);
/// Step index at which the last breakdown happened (0 if none).
GARDNER_API size_t gardner_solver_breakdown_step(const gardner_solver* solver);
/// Writes N + 1 nodal values of U.
GARDNER_API gardner_status gardner_solver_nodal_u(const gardner_solver* solver, double* out,
                                                  size_t capacity);
GARDNER_API gardner_status gardner_solver_evaluate(const gardner_solver* solver, double x,
                                                   double* u, double* ux, double* v);
GARDNER_API gardner_status gardner_solver_linf_error(const gardner_solver* solver, double* linf,
                                                     int* argmax_node);

typedef struct gardner_conservation {
  double t;
  double M, E, H;
  double C_M, C_E, C_H;
} gardner_conservation;

/// Drifts are relative to the initial state of this solver.
GARDNER_API gardner_status gardner_solver_conservation(const gardner_solver* solver,
                                                       gardner_conservation* out);

/* Experiments */

typedef struct gardner_run_summary {
  int exit_status;
  int steps_completed;
  size_t breakdown_step;
  int has_linf;
  double final_linf;
} gardner_run_summary;

/// Runs the configured experiment and writes its CSV files. A numerical
/// breakdown is reported through summary->exit_status == 2 and
/// GARDNER_ERR_BREAKDOWN.
GARDNER_API gardner_status gardner_run_experiment(const gardner_config* config,
                                                  gardner_run_summary* summary);
/// output_path "-" writes to stdout.
GARDNER_API gardner_status gardner_run_table(const char* table_id, const char* output_path);
GARDNER_API gardner_status gardner_run_scan(const gardner_config* config, double zeta_min,
                                            double zeta_max, int points, int log_spaced,
                                            const char* output_path, double* best_zeta,
                                            double* best_linf);
/// Pass use_epsilon = 0 to use the default epsilon from the initial data.
GARDNER_API gardner_status gardner_run_stability(const gardner_config* config, int use_epsilon,
                                                 double epsilon, int phases,
                                                 const char* output_path, double* max_modulus);

#ifdef __cplusplus
}
#endif
