/*
   Copyright 2026 fmv developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/*
 * fmv: simulation and feasibility toolkit for functional (delay)
 * McKean-Vlasov SDEs.
 *
 * C interface of the shared library. Objects are opaque handles created and
 * destroyed through matching functions; every fallible call returns an
 * fmv_status. On failure, fmv_last_error() carries a thread-local detail
 * message valid until the next failing call on the same thread. Strings
 * returned through char** out-parameters are heap-allocated and must be
 * released with fmv_string_free().
 *
 * Structured inputs (model parameters, simulation and solver configuration,
 * feasibility points) are JSON text; structured outputs (reports, measures)
 * are JSON text as well. Schemas are documented in the project README.
 */

#ifndef FMV_H
#define FMV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FMV_API __declspec(dllexport)
#else
#define FMV_API __attribute__((visibility("default")))
#endif

typedef enum fmv_status {
    FMV_OK = 0,
    FMV_ERR_INVALID_ARGUMENT = 1,
    FMV_ERR_SHAPE_MISMATCH = 2,
    FMV_ERR_OUT_OF_RANGE = 3,
    FMV_ERR_DOMAIN = 4,
    FMV_ERR_PRECONDITION = 5,
    FMV_ERR_NUMERICAL_BLOWUP = 6,
    FMV_ERR_CAP_EXCEEDED = 7,
    FMV_ERR_CONFIG = 8,
    FMV_ERR_INTERNAL = 9
} fmv_status;

typedef struct fmv_model fmv_model;
typedef struct fmv_measure fmv_measure;
typedef struct fmv_oracle fmv_oracle;
typedef struct fmv_sim_result fmv_sim_result;
typedef struct fmv_solve_result fmv_solve_result;

/* ---- library-level utilities ------------------------------------------- */

FMV_API const char* fmv_version(void);
FMV_API const char* fmv_status_name(fmv_status status);
FMV_API const char* fmv_last_error(void);
FMV_API void fmv_string_free(char* s);

/* One-sided Burkholder-Davis-Gundy constant chi (~1.30693). */
FMV_API double fmv_chi(void);

/* ---- coefficient models ------------------------------------------------ */

/*
 * name: speed_measure | ou | delayed_linear | mean_field_ou.
 * params_json: JSON object of numeric parameters, e.g.
 *   {"lambda1": 1.0, "c": 0.3, "sigma": 1.0, "r0": 0.25, "p": 2.0}
 * plus optional overrides "K" and "lambda0".."lambda5" for the derived
 * structural constants.
 */
FMV_API fmv_status fmv_model_create(const char* name, const char* params_json,
                                    fmv_model** out);
FMV_API void fmv_model_destroy(fmv_model* model);
FMV_API fmv_status fmv_model_dims(const fmv_model* model, int* dim_d, int* dim_m);
FMV_API fmv_status fmv_model_constants_json(const fmv_model* model, char** out_json);

/* Empirical dissipativity probe on n random (segment, measure) samples with
 * coordinates in [-coord_range, coord_range]; dt fixes the probe grid. */
FMV_API fmv_status fmv_model_probe_h3(const fmv_model* model, double dt,
                                      int n_samples, double coord_range,
                                      uint64_t seed, char** report_json);

/* ---- speed-measure oracle ---------------------------------------------- */

FMV_API fmv_status fmv_oracle_create(double lambda1, double sigma, fmv_oracle** out);
FMV_API void fmv_oracle_destroy(fmv_oracle* oracle);
FMV_API fmv_status fmv_oracle_density(const fmv_oracle* oracle, double x, double* out);
FMV_API fmv_status fmv_oracle_moment_finite(const fmv_oracle* oracle, double p,
                                            int* out);
FMV_API fmv_status fmv_oracle_moment(const fmv_oracle* oracle, int k, double* out);
FMV_API fmv_status fmv_oracle_quantile(const fmv_oracle* oracle, double u,
                                       double* out);

/* ---- empirical segment measures ---------------------------------------- */

/*
 * values: n_atoms segments, each (n_lag + 1) * dim doubles, oldest point
 * first. weights may be NULL for uniform.
 */
FMV_API fmv_status fmv_measure_create(double r0, double dt, int dim, int n_atoms,
                                      const double* values, const double* weights,
                                      fmv_measure** out);
FMV_API fmv_status fmv_measure_delta0(double r0, double dt, int dim,
                                      fmv_measure** out);
FMV_API void fmv_measure_destroy(fmv_measure* measure);
FMV_API fmv_status fmv_measure_shape(const fmv_measure* measure, int* n_atoms,
                                     int* n_points, int* dim);
FMV_API fmv_status fmv_measure_moment(const fmv_measure* measure, double p,
                                      double* out);
/* values: n_atoms * dim doubles; weights: n_atoms doubles. Either may be
 * NULL to skip. */
FMV_API fmv_status fmv_measure_endpoints(const fmv_measure* measure, double* values,
                                         double* weights);
FMV_API fmv_status fmv_measure_to_json(const fmv_measure* measure, char** out_json);
FMV_API fmv_status fmv_measure_from_json(const char* json, fmv_measure** out);

/* Exact W_p under the sup-norm ground metric (optimal transport solve).
 * max_cost_entries <= 0 selects the default cap (4e6). */
FMV_API fmv_status fmv_wasserstein_exact(const fmv_measure* mu,
                                         const fmv_measure* nu, double p,
                                         long long max_cost_entries, double* out);
/* Sliced approximation via random one-dimensional projections. */
FMV_API fmv_status fmv_wasserstein_sliced(const fmv_measure* mu,
                                          const fmv_measure* nu, double p,
                                          int n_projections, uint64_t seed,
                                          double* out);

/* ---- feasibility algebra ------------------------------------------------ */

/*
 * constants_json: {"p": 2.0, "r0": 1.0, "K": 1.0,
 *                  "lambda": [l0, l1, l2, l3, l4, l5]}
 * point_json: {"eps": 0.5, "alpha": 1.0, "gamma1": 1.0, "gamma2": 1.0,
 *              "gamma3": 0.2}  (gamma3 optional)
 * The report carries psi, kappa1..kappa3, phi, theta, gap_A, gap_U, in_A,
 * in_U.
 */
FMV_API fmv_status fmv_feasibility_check(const char* constants_json,
                                         const char* point_json,
                                         char** report_json);
/* Deterministic log-grid search; *found = 0 means budget exhausted with no
 * admissible point (not a proof of emptiness) and *report_json stays NULL. */
FMV_API fmv_status fmv_feasibility_search(const char* constants_json,
                                          uint64_t budget, int* found,
                                          char** report_json);
/* Right-hand side of the explicit moment bound at time t, given
 * W_p(nu, delta0)^p and mu(||.||^p). */
FMV_API fmv_status fmv_moment_bound(const char* constants_json,
                                    const char* point_json, double nu_moment_p,
                                    double mu_moment_p, double t, double* out);

/* ---- simulation --------------------------------------------------------- */

/*
 * sim_json: {"dt": 0.01, "t_end": 1.0, "n_particles": 100, "seed": 1,
 *            "threads": 0, "record_stride": 10, "moment_p": 2.0,
 *            "snapshot_times": [0.5, 1.0]}
 * frozen == NULL runs the coupled mean-field dynamics; otherwise the
 * measure argument is held fixed at *frozen.
 */
FMV_API fmv_status fmv_simulate(const fmv_model* model,
                                const fmv_measure* initial_law,
                                const fmv_measure* frozen, const char* sim_json,
                                fmv_sim_result** out);
FMV_API void fmv_sim_result_destroy(fmv_sim_result* result);
FMV_API fmv_status fmv_sim_result_n_moment_rows(const fmv_sim_result* result,
                                                int* out);
FMV_API fmv_status fmv_sim_result_moment_row(const fmv_sim_result* result, int i,
                                             double* t, double* estimate,
                                             double* std_error);
FMV_API fmv_status fmv_sim_result_final_law(const fmv_sim_result* result,
                                            fmv_measure** out);
FMV_API fmv_status fmv_sim_result_n_snapshots(const fmv_sim_result* result,
                                              int* out);
/* Query a snapshot: pass values == NULL to read the shape first; otherwise
 * values receives n_particles * dim doubles. */
FMV_API fmv_status fmv_sim_result_snapshot(const fmv_sim_result* result, int i,
                                           double* t, int* n_particles, int* dim,
                                           double* values);

/* Synchronous-coupling verification of the frozen-measure continuity bound. */
FMV_API fmv_status fmv_verify_lemma_continuity(const fmv_model* model,
                                               const fmv_measure* mu,
                                               const fmv_measure* nu1,
                                               const fmv_measure* nu2,
                                               const char* sim_json,
                                               const double* times, int n_times,
                                               char** report_json);
/* Monte Carlo check of the explicit moment bound at a feasible point. */
FMV_API fmv_status fmv_verify_moment_bound(const fmv_model* model,
                                           const char* point_json,
                                           const fmv_measure* mu,
                                           const fmv_measure* nu,
                                           const char* sim_json,
                                           const double* times, int n_times,
                                           char** report_json);

/* ---- invariant-measure solver ------------------------------------------ */

/*
 * solver_json: {"burn_in": 4.0, "sample_window": 2.0, "snapshot_stride": 20,
 *               "tol": 0.05, "max_outer": 15, "p": 2.0, "gap_atoms": 256,
 *               "divergence_factor": 1e6, "common_inner_seed": false,
 *               "q": 2.5, "M": 50.0,   (optional admissibility gate)
 *               "sim": {"dt": 0.01, "n_particles": 512, "seed": 1,
 *                        "threads": 0}}
 */
FMV_API fmv_status fmv_solve_ipm(const fmv_model* model, const fmv_measure* nu0,
                                 const char* solver_json, fmv_solve_result** out);
FMV_API void fmv_solve_result_destroy(fmv_solve_result* result);
/* 0 = converged, 1 = max-iterations, 2 = diverged. */
FMV_API fmv_status fmv_solve_result_status(const fmv_solve_result* result,
                                           int* out);
FMV_API fmv_status fmv_solve_result_report_json(const fmv_solve_result* result,
                                                char** out_json);
FMV_API fmv_status fmv_solve_result_final_law(const fmv_solve_result* result,
                                              fmv_measure** out);
FMV_API fmv_status fmv_solve_result_n_iterates(const fmv_solve_result* result,
                                               int* out);
/* Endpoint states of iterate k; values == NULL queries the shape. */
FMV_API fmv_status fmv_solve_result_iterate_endpoints(
    const fmv_solve_result* result, int k, int* n_atoms, int* dim, double* values);

/* Evolve the coupled dynamics from `law` over `horizon` and report W_p drift
 * at the checkpoints. Reuses the solver configuration for the inner runs. */
FMV_API fmv_status fmv_stationarity_check(const fmv_model* model,
                                          const fmv_measure* law,
                                          const char* solver_json, double horizon,
                                          const double* checkpoints,
                                          int n_checkpoints, char** report_json);

/* ---- closed-form oracle validation -------------------------------------- */

/*
 * Long-horizon run of the speed_measure model compared against its
 * stationary density (the model is built internally from lambda1/sigma).
 * config_json: {"lambda1": 2.0, "sigma": 1.0, "p": 2.0,
 *               "sim": {...},           simulation settings as above
 *               "pool_start": 30.0,     endpoint pooling start time
 *               "pool_stride": 100,     steps between pooled snapshots
 *               "n_oracle_samples": 10000,
 *               "w1_tol": 0.05, "moment_rel_tol": 0.05}
 * A configuration whose stationary p-th moment is infinite fails with
 * FMV_ERR_DOMAIN; *pass reports whether both tolerances were met.
 */
FMV_API fmv_status fmv_validate_oracle(const char* config_json,
                                       char** report_json, int* pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FMV_H */
