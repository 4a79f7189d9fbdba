/*
 * cpwx — change-point location estimation for mean shifts in dependent
 * time series: Wilcoxon rank scan and CUSUM scan, a seeded simulation
 * harness, and numerical diagnostics for the underlying U-statistic theory.
 *
 * C interface of the shared library. All functions return CPWX_OK (0) on
 * success or a nonzero error code; cpwx_last_error() describes the most
 * recent failure on the calling thread. Output buffers are caller-allocated
 * at the documented sizes. Opaque handles must be released with their
 * matching free function.
 */
#ifndef CPWX_H
#define CPWX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CPWX_API __declspec(dllexport)
#else
#define CPWX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes */
enum {
    CPWX_OK = 0,
    CPWX_ERR_INVALID = 1,  /* precondition or argument violation */
    CPWX_ERR_CONFIG = 2,   /* configuration document rejected */
    CPWX_ERR_IO = 3,       /* file read/write failure */
    CPWX_ERR_INTERNAL = 4  /* unexpected failure */
};

/* Estimator methods */
enum { CPWX_METHOD_WILCOXON = 0, CPWX_METHOD_CUSUM = 1 };

/* Innovation laws for the generator */
enum { CPWX_INNOVATION_NORMAL = 0, CPWX_INNOVATION_T1 = 1 };

/* Reference distributions for the theory diagnostics */
enum { CPWX_DIST_NORMAL = 0, CPWX_DIST_UNIFORM = 1 };

/* Summability verdicts */
enum { CPWX_SUM_CERTIFIED = 0, CPWX_SUM_DIVERGENT = 1, CPWX_SUM_UNKNOWN = 2 };

/* Message for the last failing call on this thread; empty string if none. */
CPWX_API const char* cpwx_last_error(void);

/* ------------------------------------------------------------------ */
/* Scans and estimation                                                */
/* ------------------------------------------------------------------ */

/* Doubled Wilcoxon scan values 2*W(k), k = 1..n-1, written to out[0..n-2].
 * Exact integers; |out[k-1]| <= k*(n-k). Requires n >= 2, finite input. */
CPWX_API int cpwx_wilcoxon_scan(const double* x, size_t n, int64_t* out);

/* CUSUM scan values D_k = sum_{j<=k} x_j - (k/n) sum_j x_j, k = 1..n-1. */
CPWX_API int cpwx_cusum_scan(const double* x, size_t n, double* out);

/* First-maximum change-point estimate for the chosen method. Any output
 * pointer may be NULL. theta_hat = k_hat / n; max_abs is the attained
 * maximum |statistic| (in W units for the Wilcoxon method). */
CPWX_API int cpwx_estimate(const double* x, size_t n, int method, size_t* k_hat,
                           double* theta_hat, double* max_abs);

/* ------------------------------------------------------------------ */
/* Simulation experiments                                              */
/* ------------------------------------------------------------------ */

typedef struct cpwx_experiment cpwx_experiment;

/* Runs a replicated experiment described by a JSON configuration document
 * (see the project README for the schema). workers = 0 uses the hardware
 * concurrency; the result is identical for every worker count. */
CPWX_API int cpwx_experiment_run_json(const char* config_json, int workers,
                                      cpwx_experiment** out);

/* Same, reading the configuration from a file. */
CPWX_API int cpwx_experiment_run_file(const char* config_path, int workers,
                                      cpwx_experiment** out);

CPWX_API void cpwx_experiment_free(cpwx_experiment* exp);

/* Writes summary.csv, histogram.csv and outcomes.csv into out_dir. */
CPWX_API int cpwx_experiment_write_outputs(const cpwx_experiment* exp, const char* out_dir);

CPWX_API int cpwx_experiment_replications(const cpwx_experiment* exp, size_t* out);
CPWX_API int cpwx_experiment_method_count(const cpwx_experiment* exp, size_t* out);
/* method identifier of the index-th configured method (0-based) */
CPWX_API int cpwx_experiment_method_at(const cpwx_experiment* exp, size_t index, int* out);

/* Sample mean and sd (denominator R-1) of theta_hat for one method. */
CPWX_API int cpwx_experiment_mean_sd(const cpwx_experiment* exp, int method, double* mean,
                                     double* sd);

/* Per-replication estimates for one method, in replication order.
 * theta_hat into thetas[0..R-1] and/or split indices into k_hats[0..R-1];
 * either pointer may be NULL. */
CPWX_API int cpwx_experiment_outcomes(const cpwx_experiment* exp, int method,
                                      double* thetas, size_t* k_hats);

CPWX_API int cpwx_experiment_histogram_bins(const cpwx_experiment* exp, size_t* out);
/* edges[0..bins] and counts[0..bins-1]; either pointer may be NULL. */
CPWX_API int cpwx_experiment_histogram(const cpwx_experiment* exp, int method, double* edges,
                                       uint64_t* counts);

/* ------------------------------------------------------------------ */
/* Theory diagnostics                                                  */
/* ------------------------------------------------------------------ */

/* Theta_Delta = integral of (F(y+delta) - F(y)) dF(y), delta >= 0. */
CPWX_API int cpwx_theta_delta(int dist, double delta, double* out);

/* First-order Hoeffding component h1(x) = 1/2 - F(x) of the kernel 1{x<=y}. */
CPWX_API int cpwx_hoeffding_h1(int dist, double x, double* out);

/* Shift-kernel component h1n(x) = F(x) - F(x-delta) - Theta_Delta. */
CPWX_API int cpwx_hoeffding_h1n(int dist, double x, double delta, double* out);

/* Degenerate remainders of the Hoeffding decompositions. */
CPWX_API int cpwx_degenerate_g(int dist, double x, double y, double* out);
CPWX_API int cpwx_degenerate_gn(int dist, double x, double y, double delta, double* out);

/* Near-epoch-dependence approximation constants a_0..a_k_max of a linear
 * process with coefficients psi[0..psi_len-1], optionally continued
 * geometrically with  |psi_{len-1+t}| = |psi_{len-1}| * tail_ratio^t  when
 * 0 <= tail_ratio < 1 (pass a negative tail_ratio for no continuation).
 * a_k = 2 * abs_mean_z * sum_{j>k} |psi_j|; out has k_max+1 entries. */
CPWX_API int cpwx_ned_constants(const double* psi, size_t psi_len, double tail_ratio,
                                double abs_mean_z, size_t k_max, double* out);

/* Partial sum over k = 1..len of k^2 (beta_k + sqrt(a_k)) with optional
 * geometric tail descriptors (negative ratio = none). verdict receives one
 * of the CPWX_SUM_* values; tail_bound is NaN unless certified. */
CPWX_API int cpwx_check_summability(const double* a, const double* beta, size_t len,
                                    double a_tail_ratio, double beta_tail_ratio,
                                    double* partial_sum, double* tail_bound, int* verdict);

/* Exact decomposition of the Wilcoxon scan on x = y + mu + delta*1{i>k_star}
 * into the latent-series scan plus shift-straddling pair counts:
 *   two_w[k-1] = two_u[k-1] + 2*shift[k-1]  for k = 1..n-1.
 * Output arrays have n-1 entries; any of them may be NULL. identity[k-1] is
 * 1 when the equality holds (it always should). delta >= 0. */
CPWX_API int cpwx_decompose(const double* y, size_t n, size_t k_star, double delta,
                            double mu, int64_t* two_w, int64_t* two_u, int64_t* shift,
                            int* identity);

#ifdef __cplusplus
}
#endif

#endif /* CPWX_H */
