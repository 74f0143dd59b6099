/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * whpulse - pulse design for Weyl-Heisenberg signaling over WSSUS channels
 * Copyright (C) 2026 The whpulse authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef WHP_H
#define WHP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WHP_API __declspec(dllexport)
#elif defined(__GNUC__)
#define WHP_API __attribute__((visibility("default")))
#else
#define WHP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every function returning whp_status leaves its outputs untouched on failure;
   whp_last_error() then describes the failure on the calling thread. */
typedef enum whp_status {
    WHP_OK = 0,
    WHP_ERR_INVALID_ARGUMENT = 1,
    WHP_ERR_GRID_MISMATCH = 2,
    WHP_ERR_GUARD_VIOLATION = 3,
    WHP_ERR_DOMAIN = 4,
    WHP_ERR_NUMERICAL = 5,
    WHP_ERR_IO = 6,
    WHP_ERR_INTERNAL = 7
} whp_status;

typedef enum whp_method {
    WHP_METHOD_GAUSSIAN_ANSATZ = 0,
    WHP_METHOD_LOCAL_EIGEN = 1,
    WHP_METHOD_EXACT_OSCILLATOR = 2,
    WHP_METHOD_ALTERNATING = 3
} whp_method;

typedef struct whp_grid whp_grid;
typedef struct whp_signal whp_signal;
typedef struct whp_scattering whp_scattering;
typedef struct whp_lattice whp_lattice;
typedef struct whp_design whp_design;

WHP_API const char *whp_version(void);
WHP_API const char *whp_last_error(void);
WHP_API const char *whp_status_name(whp_status status);
/* Releases strings handed out by the *_json functions. */
WHP_API void whp_string_free(char *s);

/* grid */
WHP_API whp_status whp_grid_create(size_t n_samples, double t_span, whp_grid **out);
WHP_API void whp_grid_destroy(whp_grid *grid);
WHP_API whp_status whp_grid_info(const whp_grid *grid, size_t *n_samples, double *t_span, double *dt);

/* signals */
WHP_API whp_status whp_signal_from_samples(const whp_grid *grid, const double *re, const double *im, size_t n,
                                           whp_signal **out);
WHP_API whp_status whp_signal_hermite(const whp_grid *grid, unsigned order, whp_signal **out);
WHP_API whp_status whp_signal_read_csv(const char *path, whp_signal **out);
WHP_API whp_status whp_signal_write_csv(const whp_signal *s, const char *path);
WHP_API whp_status whp_signal_tf_shift(const whp_signal *s, double tau, double nu, whp_signal **out);
WHP_API whp_status whp_signal_dilate(const whp_signal *s, double alpha, whp_signal **out);
WHP_API whp_status whp_signal_normalize(const whp_signal *s, whp_signal **out);
WHP_API whp_status whp_signal_size(const whp_signal *s, size_t *n);
WHP_API whp_status whp_signal_samples(const whp_signal *s, double *re, double *im, size_t n);
/* The signal's grid as a new handle. */
WHP_API whp_status whp_signal_grid(const whp_signal *s, whp_grid **out);
WHP_API whp_status whp_inner_product(const whp_signal *f, const whp_signal *g, double *re, double *im);
WHP_API void whp_signal_destroy(whp_signal *s);

/* scattering functions */
WHP_API whp_status whp_scattering_gaussian(double alpha, unsigned resolution, whp_scattering **out);
WHP_API whp_status whp_scattering_rectangular(double tau_max, double nu_max, unsigned resolution,
                                              whp_scattering **out);
WHP_API whp_status whp_scattering_point(double tau, double nu, whp_scattering **out);
WHP_API whp_status whp_scattering_from_nodes(const double *tau, const double *nu, const double *weight, size_t n,
                                             whp_scattering **out);
WHP_API whp_status whp_scattering_read_csv(const char *path, whp_scattering **out);
WHP_API whp_status whp_scattering_write_csv(const whp_scattering *c, const char *path);
WHP_API whp_status whp_scattering_size(const whp_scattering *c, size_t *n);
/* Largest |tau| and |nu| over the nodes. */
WHP_API whp_status whp_scattering_extent(const whp_scattering *c, double *max_abs_tau, double *max_abs_nu);
/* Fails with WHP_ERR_GUARD_VIOLATION when a node lies outside the grid's guard region. */
WHP_API whp_status whp_scattering_check_guard(const whp_scattering *c, const whp_grid *grid);
WHP_API whp_status whp_scattering_moments_json(const whp_scattering *c, char **json);
WHP_API void whp_scattering_destroy(whp_scattering *c);

/* Gabor lattice: all (m, n) with |m|, |n| <= radius, (0, 0) first. */
WHP_API whp_status whp_lattice_square(double T, double F, int radius, whp_lattice **out);
WHP_API whp_status whp_lattice_size(const whp_lattice *l, size_t *n);
WHP_API whp_status whp_lattice_validate(const whp_lattice *l, const whp_grid *grid);
WHP_API void whp_lattice_destroy(whp_lattice *l);

/* gain functionals */
WHP_API whp_status whp_fidelity(const whp_scattering *c, const whp_signal *g, const whp_signal *gamma, double *out);
WHP_API whp_status whp_lower_bound(const whp_scattering *c, const whp_signal *g, const whp_signal *gamma,
                                   double tau0, double nu0, double *out);
WHP_API whp_status whp_bessel_bound(const whp_signal *gamma, const whp_lattice *l, double *out);

/* pulse design */
WHP_API whp_status whp_method_from_name(const char *name, whp_method *out);
WHP_API const char *whp_method_name(whp_method method);
WHP_API whp_status whp_design_run(const whp_grid *grid, const whp_scattering *c, whp_method method, int max_iters,
                                  double tol, whp_design **out);
WHP_API whp_status whp_design_alternating(const whp_scattering *c, const whp_signal *init_gamma, int max_iters,
                                          double tol, whp_design **out);
WHP_API whp_status whp_design_gain(const whp_design *d, double *gain, double *lower_bound);
WHP_API whp_status whp_design_gamma(const whp_design *d, whp_signal **out);
WHP_API whp_status whp_design_g(const whp_design *d, whp_signal **out);
WHP_API whp_status whp_design_json(const whp_design *d, char **json);
WHP_API void whp_design_destroy(whp_design *d);

/* gain of the displaced d_{1/alpha} h0 pair per alpha; gains has n entries */
WHP_API whp_status whp_scaling_sweep(const whp_grid *grid, const whp_scattering *c, const double *alphas, size_t n,
                                     double *gains, size_t *argmax);

/* Monte-Carlo estimate of E_a, E_b and SINR. trace_csv may be NULL. */
WHP_API whp_status whp_simulate(const whp_scattering *c, const whp_signal *g, const whp_signal *gamma,
                                const whp_lattice *l, double sigma2, int n_realizations, uint64_t seed,
                                const char *trace_csv, char **report_json);

#ifdef __cplusplus
}
#endif

#endif
