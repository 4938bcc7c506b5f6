/*
 * Copyright 2026 The gqpe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the gqpe library. Every call returns a status code
 * (GQPE_OK or one of the error codes below); on failure the message is
 * available from gqpe_last_error_message() on the calling thread. Objects
 * are opaque handles released with their _destroy function. Strings returned
 * through char** belong to the caller and are released with gqpe_string_free.
 */
#ifndef GQPE_GQPE_H_
#define GQPE_GQPE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GQPE_API __declspec(dllexport)
#else
#define GQPE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  GQPE_OK = 0,
  GQPE_NON_HERMITIAN_INPUT = 10,
  GQPE_SPECTRUM_EXCEEDS_PI = 11,
  GQPE_DIMENSION_MISMATCH = 12,
  GQPE_PAULI_POLICY_ON_NON_POWER_OF_TWO = 13,
  GQPE_GIVEN_NORM_TOO_SMALL = 14,
  GQPE_INVALID_PARAMETER = 20,
  GQPE_UNSUPPORTED_N = 21,
  GQPE_NO_CLOSED_FORM = 22,
  GQPE_SINGULAR_POINT = 23,
  GQPE_SHAPE_COUNT_MISMATCH = 30,
  GQPE_ORDER_TOO_LARGE = 31,
  GQPE_NON_CAUSAL_INPUT = 32,
  GQPE_INVALID_SPEC = 40,
  GQPE_INDEX_OUT_OF_RANGE = 41,
  GQPE_WRONG_MODE = 42,
  GQPE_RESOURCE_LIMIT = 43,
  GQPE_ENERGY_SHIFT_OFF_GRID = 44,
  GQPE_NEGATIVE_TIME = 50,
  GQPE_INVALID_ACCURACY = 51,
  GQPE_NEGATIVE_LINESHAPE_WEIGHT = 52,
  GQPE_PARSE_ERROR = 60,
  GQPE_VALIDATION_ERROR = 61,
  GQPE_TOLERANCE_EXCEEDED = 62,
  GQPE_IO_ERROR = 63,
  GQPE_INTERNAL = 99
};

typedef struct gqpe_config gqpe_config;
typedef struct gqpe_system gqpe_system;
typedef struct gqpe_operator gqpe_operator;
typedef struct gqpe_state gqpe_state;
typedef struct gqpe_lineshape gqpe_lineshape;
typedef struct gqpe_grid gqpe_grid;

/* Complex matrices are row-major arrays of interleaved (re, im) doubles. */

GQPE_API const char* gqpe_last_error_message(void);
GQPE_API const char* gqpe_status_name(int status);
GQPE_API void gqpe_string_free(char* s);

/* ---- configuration and runs ---- */
GQPE_API int gqpe_config_from_file(const char* path, gqpe_config** out);
GQPE_API int gqpe_config_from_string(const char* text, const char* base_dir, gqpe_config** out);
GQPE_API void gqpe_config_destroy(gqpe_config* cfg);
GQPE_API int gqpe_config_set_seed(gqpe_config* cfg, uint64_t seed);
GQPE_API int gqpe_config_set_output(gqpe_config* cfg, const char* dir);
GQPE_API int gqpe_config_set_tolerance(gqpe_config* cfg, double tolerance);
/* mode: oracle, gqpe, complete-square, raman, single-ancilla, kk-check, compare */
GQPE_API int gqpe_config_set_mode(gqpe_config* cfg, const char* mode);
GQPE_API int gqpe_config_resolved_json(const gqpe_config* cfg, char** json);
GQPE_API int gqpe_config_hash(const gqpe_config* cfg, uint64_t* hash);

/* Runs the configured pipeline and writes its artifacts. exit_code receives
 * 0, 2 (validation), 3 (tolerance) or 4 (I/O); summary may be NULL. */
GQPE_API int gqpe_run(const gqpe_config* cfg, int* exit_code, char** summary);
GQPE_API int gqpe_plot(const char* csv_path, const char* image_path);

/* ---- numeric objects ---- */
/* tau <= 0 selects automatic scaling. */
GQPE_API int gqpe_system_create(const double* hamiltonian, size_t dim, double tau, gqpe_system** out);
GQPE_API void gqpe_system_destroy(gqpe_system* sys);
GQPE_API size_t gqpe_system_dim(const gqpe_system* sys);
GQPE_API double gqpe_system_scale(const gqpe_system* sys);
GQPE_API int gqpe_system_eigenvalues(const gqpe_system* sys, double* out);

enum { GQPE_NORM_SPECTRAL = 0, GQPE_NORM_PAULI = 1, GQPE_NORM_GIVEN = 2 };

/* matrix in the computational basis; given_norm only read for GQPE_NORM_GIVEN. */
GQPE_API int gqpe_operator_create(const gqpe_system* sys, const double* matrix, int norm_policy,
                                  double given_norm, gqpe_operator** out);
GQPE_API void gqpe_operator_destroy(gqpe_operator* op);
GQPE_API double gqpe_operator_one_norm(const gqpe_operator* op);

GQPE_API int gqpe_state_pure(size_t dim, size_t index, gqpe_state** out);
GQPE_API int gqpe_state_mixed(const double* weights, size_t dim, gqpe_state** out);
GQPE_API void gqpe_state_destroy(gqpe_state* st);

/* kind: rectangular (p0 = width), lorentzian (p0 = eta), gaussian (p0 = sigma),
 * kaiser (p0 = shape, p1 = length), causality. */
GQPE_API int gqpe_lineshape_create(const char* kind, double p0, double p1, size_t n, gqpe_lineshape** out);
/* Custom coefficients, interleaved (re, im), n entries. */
GQPE_API int gqpe_lineshape_custom(const double* coefficients, size_t n, gqpe_lineshape** out);
GQPE_API void gqpe_lineshape_destroy(gqpe_lineshape* ls);
GQPE_API int gqpe_lineshape_evaluate(const gqpe_lineshape* ls, double omega, double* re, double* im);

/* chain holds D+1 operators; shapes holds D lineshapes sharing one N. */
GQPE_API int gqpe_oracle_response(const gqpe_system* sys, const gqpe_state* st, const gqpe_operator* const* chain,
                                  size_t chain_len, const gqpe_lineshape* const* shapes, gqpe_grid** out);
GQPE_API int gqpe_circuit_response(const gqpe_system* sys, const gqpe_state* st, const gqpe_operator* const* chain,
                                   size_t chain_len, const gqpe_lineshape* const* shapes, gqpe_grid** out);
/* Real grid of outcome probabilities (im = 0); leaked_norm may be NULL. */
GQPE_API int gqpe_complete_square_probability(const gqpe_system* sys, const gqpe_state* st,
                                              const gqpe_operator* const* chain, size_t chain_len,
                                              const gqpe_lineshape* const* shapes, gqpe_grid** out,
                                              double* leaked_norm);
/* rounds = 0 uses the default round count for eps. */
GQPE_API int gqpe_single_ancilla(const gqpe_system* sys, const gqpe_state* st, const gqpe_operator* const* chain,
                                 size_t chain_len, const gqpe_lineshape* const* shapes, double eps, uint64_t seed,
                                 uint64_t rounds, gqpe_grid** out, uint64_t* rounds_used);
GQPE_API int gqpe_kk_residual(const gqpe_grid* grid, double axis_eta, double* residual);

GQPE_API void gqpe_grid_destroy(gqpe_grid* grid);
GQPE_API int gqpe_grid_order(const gqpe_grid* grid);
GQPE_API size_t gqpe_grid_size_per_axis(const gqpe_grid* grid);
GQPE_API size_t gqpe_grid_point_count(const gqpe_grid* grid);
GQPE_API double gqpe_grid_omega_product(const gqpe_grid* grid);
/* Flat index, axis 1 slowest. */
GQPE_API int gqpe_grid_value(const gqpe_grid* grid, size_t flat, double* re, double* im);
GQPE_API int gqpe_grid_max_abs_diff(const gqpe_grid* a, const gqpe_grid* b, double* out);

#ifdef __cplusplus
}
#endif

#endif /* GQPE_GQPE_H_ */
