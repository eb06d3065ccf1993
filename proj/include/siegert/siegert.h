/* SPDX-License-Identifier: Apache-2.0
 *
 * siegert — bound-state and resonance (Siegert) energies of the radial
 * Schroedinger equation for the potential V(r) = V0 r^2 exp(-r) + Z/r,
 * computed from root sequences of Hankel determinants built on the Taylor
 * coefficients of the regularized logarithmic derivative of the
 * wavefunction, refined by Newton continuation in the determinant
 * dimension, with an independent outward-integration verifier.
 *
 * All numeric values cross this boundary as decimal strings so that no
 * precision is lost to hardware floats; `digits` arguments give the
 * working precision in significant decimal figures.
 *
 * Every object returned through an out-pointer is owned by the caller and
 * released with the matching _free function. Functions returning
 * sgt_status set a thread-local message retrievable with sgt_last_error.
 */
#ifndef SIEGERT_H
#define SIEGERT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgt_status {
  SGT_OK = 0,
  SGT_ERR_USAGE = 1,
  SGT_ERR_PRECISION_EXHAUSTED = 2,
  SGT_ERR_SINGULAR = 3,
  SGT_ERR_NO_CONVERGENCE = 4,
  SGT_ERR_INSUFFICIENT_ORDER = 5,
  SGT_ERR_POLE = 6,
  SGT_ERR_TOO_SHORT = 7,
  SGT_ERR_BUFFER = 8,
  SGT_ERR_INTERNAL = 9
} sgt_status;

typedef struct sgt_potential sgt_potential;
typedef struct sgt_series sgt_series;
typedef struct sgt_run sgt_run;

const char* sgt_version(void);

/* Thread-local description of the last failure in this thread. */
const char* sgt_last_error(void);

/* ------------------------------------------------------------------ */
/* Potential V(r) = V0 r^2 exp(-r) + Z/r                               */

sgt_status sgt_potential_create(const char* v0, const char* z, sgt_potential** out);
void sgt_potential_free(sgt_potential* p);

/* Taylor coefficient v_j of the regular part, at `digits` precision. */
sgt_status sgt_potential_coefficient(const sgt_potential* p, unsigned j, int digits,
                                     char* buf, size_t len);

/* ------------------------------------------------------------------ */
/* Taylor coefficients f_j(E) of the regularized logarithmic derivative */

sgt_status sgt_series_eval(const sgt_potential* p, int l, const char* e_re,
                           const char* e_im, int order, int digits,
                           sgt_series** out);
void sgt_series_free(sgt_series* s);
int sgt_series_order(const sgt_series* s);
sgt_status sgt_series_f(const sgt_series* s, int j, char* re, char* im, size_t len);
sgt_status sgt_series_df(const sgt_series* s, int j, char* re, char* im, size_t len);

/* ------------------------------------------------------------------ */
/* Hankel determinant H_D^d(E) with entries f_{i+j+d-1}                */

/* Determinant value, its logarithmic energy-derivative, a loss-of-digits
 * estimate, and whether the determinant vanished exactly. dlog buffers
 * receive "nan" when the determinant is exactly zero. */
sgt_status sgt_hankel_eval(const sgt_series* s, int D, int d, char* value_re,
                           char* value_im, char* dlog_re, char* dlog_im,
                           size_t len, double* condition_estimate,
                           int* exact_zero);

/* Scale-free |H| normalized by the product of row max-norms. */
sgt_status sgt_hankel_residual(const sgt_series* s, int D, int d, double* out);

/* ------------------------------------------------------------------ */
/* Root refinement and the analytic oracle                             */

sgt_status sgt_newton_polish(const sgt_potential* p, int l, int d, int D,
                             const char* seed_re, const char* seed_im, double tol,
                             char* root_re, char* root_im, size_t len);

/* Coulomb level -1/(2 n^2); n must be at least l+1. */
sgt_status sgt_hydrogen_level(int l, int n, char* buf, size_t len);

/* ------------------------------------------------------------------ */
/* Independent verifier: outward integration of the logarithmic         */
/* derivative against the outgoing-wave asymptote                       */

sgt_status sgt_siegert_residual(const sgt_potential* p, int l, const char* e_re,
                                const char* e_im, double r0, double R, int steps,
                                double* residual);

/* ------------------------------------------------------------------ */
/* Batch run: seed scan + dimension continuation per partial wave       */

typedef struct sgt_run_config {
  const char* v0; /* decimal string, NULL for "7.5" */
  const char* z;  /* decimal string, NULL for "-1" */
  const int* waves; /* NULL for {0,1,2} */
  int n_waves;
  int d;
  int D_min;
  int D_max;
  int scan_dimension;
  double re_min, re_max, im_min, im_max;
  int grid_re, grid_im;
  double tol;
  int base_digits;
  int digits_per_dimension;
  int max_digits;
  int verify; /* 0/1 */
} sgt_run_config;

/* Fills the benchmark defaults (V0=7.5, Z=-1, waves 0..2, d=0,
 * D 6..40 anchored at 12, region [0,8]x[-4,0] on a 60x30 grid,
 * tol 1e-12, 40 base digits + 8 per dimension, verify on). */
void sgt_run_config_defaults(sgt_run_config* cfg);

sgt_status sgt_run_execute(const sgt_run_config* cfg, sgt_run** out);
void sgt_run_free(sgt_run* r);

int sgt_run_trace_count(const sgt_run* r);
int sgt_run_converged_count(const sgt_run* r);
int sgt_run_precision_exhausted(const sgt_run* r);

/* Trace fields; i indexes 0 .. trace_count-1. */
int sgt_run_trace_l(const sgt_run* r, int i);
int sgt_run_trace_d(const sgt_run* r, int i);
int sgt_run_trace_nu(const sgt_run* r, int i); /* -1 when not converged */
const char* sgt_run_trace_status(const sgt_run* r, int i);
int sgt_run_trace_digits(const sgt_run* r, int i);
/* -1 verifier not run, 0 failed, 1 passed */
int sgt_run_trace_verify_state(const sgt_run* r, int i);
double sgt_run_trace_uncertainty(const sgt_run* r, int i);
sgt_status sgt_run_trace_best(const sgt_run* r, int i, char* re, char* im,
                              size_t len);

/* Recorded dimension range and per-dimension roots. */
int sgt_run_trace_first_dimension(const sgt_run* r, int i);
int sgt_run_trace_last_dimension(const sgt_run* r, int i);
sgt_status sgt_run_trace_root(const sgt_run* r, int i, int D, char* re, char* im,
                              size_t len);

/* Convergence diagnostic rows L_D = log10 |alpha_D - alpha_{D+1}| for the
 * real and imaginary parts; a zero difference reports -infinity. Returns
 * the number of rows (<= cap) or a negative sgt_status. */
int sgt_run_trace_convergence(const sgt_run* r, int i, int* D, double* l_re,
                              double* l_im, int cap);

#ifdef __cplusplus
}
#endif

#endif /* SIEGERT_H */
