/* Copyright 2026 The tmg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libtmg: two-mode Gaussian states, closed-form thermal-channel
 * evolution, the Simon separability test, entanglement-sudden-death analysis
 * and a truncated-Fock reference integrator.
 *
 * Conventions:
 *   - Every function returns a tmg_status; TMG_OK is 0. On failure the
 *     message of the most recent error on the calling thread is available
 *     from tmg_last_error().
 *   - Output pointers are written only on success.
 *   - Values cross the boundary as double. The library computes in extended
 *     precision internally; quantities that may underflow a double (S(t) of
 *     states decaying to the vacuum) also come with an exact sign.
 *   - All functions are thread safe; handles must not be shared between
 *     threads without external synchronisation.
 */

#ifndef TMG_TMG_H
#define TMG_TMG_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TMG_BUILDING_LIBRARY)
#    define TMG_API __declspec(dllexport)
#  else
#    define TMG_API __declspec(dllimport)
#  endif
#else
#  define TMG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tmg_status {
  TMG_OK = 0,
  TMG_ERR_INVALID_ARGUMENT = 1,
  TMG_ERR_NON_PHYSICAL_CM = 2,
  TMG_ERR_EXTRACTION_OUT_OF_DOMAIN = 3,
  TMG_ERR_DOMAIN = 4,
  TMG_ERR_BUDGET_EXCEEDED = 5,
  TMG_ERR_INVALID_GRID = 6,
  TMG_ERR_CUTOFF_INSUFFICIENT = 7,
  TMG_ERR_STEP_TOO_LARGE = 8,
  TMG_ERR_IMAGINARY_PART = 9,
  TMG_ERR_INTERNAL = 10
} tmg_status;

typedef struct tmg_params {
  double z1, z2; /* single-mode squeezing */
  double r;      /* two-mode squeezing */
  double nu1, nu2; /* thermal photons of the core state, >= 0 */
} tmg_params;

/* n_i = <a_i^dag a_i>, m_i = -<a_i^2>, ms = -<a1 a2^dag>, mc = <a1 a2> */
typedef struct tmg_cm {
  double n1, n2, m1, m2, ms, mc;
} tmg_cm;

typedef struct tmg_channel {
  double gamma1, gamma2; /* > 0 */
  double nb1, nb2;       /* >= 0 */
} tmg_channel;

typedef struct tmg_invariants {
  double i1, i2, i3, i4, iv;
} tmg_invariants;

typedef enum tmg_extraction {
  TMG_EXTRACT_CORRECTED = 0,
  TMG_EXTRACT_PRINTED = 1
} tmg_extraction;

typedef enum tmg_esd_kind {
  TMG_ESD_FINITE_TIME = 0,
  TMG_ESD_ASYMPTOTIC = 1,
  TMG_ESD_INITIALLY_SEPARABLE = 2
} tmg_esd_kind;

typedef enum tmg_esd_method {
  TMG_ESD_ANALYTIC = 0,
  TMG_ESD_NUMERIC_ROOT = 1
} tmg_esd_method;

typedef struct tmg_esd_result {
  int kind;   /* tmg_esd_kind */
  int method; /* tmg_esd_method */
  int has_time;
  double t_esd; /* valid iff has_time */
  /* analytic: ratios e^{-2 gamma t} of the (eta, zeta) form and of the
   * first closed form; numeric: scan horizon. NaN when not applicable. */
  double ratio;
  double first_form_ratio;
  double horizon;
  int iterations;
} tmg_esd_result;

typedef struct tmg_fock_options {
  int cutoff;          /* per-mode Fock dimension, 2..32 */
  double tail_tolerance; /* default 1e-6 */
  int enforce_tail;    /* nonzero: CutoffInsufficient when exceeded */
} tmg_fock_options;

typedef struct tmg_fock_report {
  double max_tail;
  double max_trace_error;
  double max_hermiticity_defect;
  double min_eigenvalue;
  double step_change;
  int steps;
} tmg_fock_report;

typedef struct tmg_trajectory tmg_trajectory;
typedef struct tmg_sign_grid tmg_sign_grid;
typedef struct tmg_fock_state tmg_fock_state;

/* ---- errors ------------------------------------------------------------ */
TMG_API const char* tmg_status_string(tmg_status status);
TMG_API const char* tmg_last_error(void);
TMG_API const char* tmg_version(void);

/* ---- Gaussian states ----------------------------------------------------- */
TMG_API tmg_status tmg_cm_from_params(const tmg_params* p, tmg_cm* out);
TMG_API tmg_status tmg_params_from_cm(const tmg_cm* cm, tmg_extraction method,
                                      tmg_params* out);
TMG_API tmg_status tmg_is_physical(const tmg_cm* cm, double tol, int* out);
TMG_API tmg_status tmg_cm_invariants(const tmg_cm* cm, tmg_invariants* out);
TMG_API tmg_status tmg_simon(const tmg_cm* cm, double* out);
TMG_API tmg_status tmg_simon_from_invariants(const tmg_invariants* inv, double* out);

/* ---- channel --------------------------------------------------------------- */
TMG_API tmg_status tmg_evolve(const tmg_params* p0, const tmg_channel* ch,
                              double t, tmg_cm* out);
/* S(t) and its sign (-1, 0, +1), the sign computed before any rounding. */
TMG_API tmg_status tmg_evolve_simon(const tmg_params* p0, const tmg_channel* ch,
                                    double t, double* s, int* sign);
TMG_API tmg_status tmg_evolve_symmetric(double n0, double m0, double gamma,
                                        double t, double* n, double* m);

TMG_API tmg_status tmg_trajectory_sample(const tmg_params* p0,
                                         const tmg_channel* ch, double t_max,
                                         size_t n_points, tmg_trajectory** out);
TMG_API size_t tmg_trajectory_size(const tmg_trajectory* traj);
TMG_API tmg_status tmg_trajectory_point(const tmg_trajectory* traj, size_t k,
                                        double* t, tmg_cm* cm, double* s,
                                        int* sign);
TMG_API void tmg_trajectory_free(tmg_trajectory* traj);

/* ---- entanglement sudden death -------------------------------------------- */
TMG_API tmg_status tmg_esd_condition_symmetric(double z0, double r0, int* out);
TMG_API tmg_status tmg_esd_threshold_z0(double r0, double* out);
TMG_API tmg_status tmg_t_esd_analytic(double z0, double r0, double gamma,
                                      tmg_esd_result* out);
TMG_API tmg_status tmg_t_esd_numeric(const tmg_params* p0, const tmg_channel* ch,
                                     double t_max, tmg_esd_result* out);
TMG_API tmg_status tmg_initial_entanglement_threshold(double nu1, double nu2,
                                                      double* out);

/* sign(S) over a (z, t) grid, z1 = z2 = z, nu = 0; workers = 0 picks the
 * hardware concurrency. */
TMG_API tmg_status tmg_esd_boundary_sweep(double r0, const tmg_channel* ch,
                                          const double* z, size_t nz,
                                          const double* t, size_t nt,
                                          unsigned workers, tmg_sign_grid** out);
TMG_API size_t tmg_sign_grid_rows(const tmg_sign_grid* grid);
TMG_API size_t tmg_sign_grid_cols(const tmg_sign_grid* grid);
TMG_API int tmg_sign_grid_at(const tmg_sign_grid* grid, size_t iz, size_t it);
TMG_API void tmg_sign_grid_free(tmg_sign_grid* grid);

/* ---- truncated-Fock reference ---------------------------------------------- */
TMG_API tmg_fock_options tmg_fock_default_options(void);
TMG_API tmg_status tmg_fock_build(const tmg_params* p,
                                  const tmg_fock_options* options,
                                  tmg_fock_state** out);
/* Advances the state in place by t with steps no larger than dt. */
TMG_API tmg_status tmg_fock_integrate(tmg_fock_state* state,
                                      const tmg_channel* ch, double t,
                                      double dt);
TMG_API tmg_status tmg_fock_moments(const tmg_fock_state* state, tmg_cm* out);
TMG_API tmg_status tmg_fock_report_get(const tmg_fock_state* state,
                                       tmg_fock_report* out);
TMG_API int tmg_fock_cutoff(const tmg_fock_state* state);
TMG_API void tmg_fock_free(tmg_fock_state* state);

#ifdef __cplusplus
}
#endif

#endif /* TMG_TMG_H */
