#ifndef ZETAHYBRID_H
#define ZETAHYBRID_H
/*
 * C interface to the hybrid-model numerical laboratory: critical-line zeta
 * evaluation, zero tables, the partial Euler / partial Hadamard product
 * factorization, Dirichlet-polynomial coefficient tables, and moment
 * statistics over t-grids.
 *
 * Conventions
 *   - Every function returns ZH_OK (0) on success or a negative ZH_ERR_*
 *     code.  zh_last_error() describes the most recent failure in the
 *     calling thread; the string is valid until the next failing call in
 *     the same thread.
 *   - Out-parameters are written only on success.
 *   - Handles are opaque and owned by the caller: each *_new / *_find /
 *     *_load / *_build pairs with the matching *_free (free accepts NULL).
 *     A handle may be used from one thread at a time; distinct handles are
 *     independent.
 *   - Angles are radians, ordinates are the imaginary parts t of critical-
 *     line points 1/2 + it, and X is the prime cutoff of the partial Euler
 *     product throughout.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* ----------------------------------------------------------------- errors */

#define ZH_OK 0
#define ZH_ERR_INVALID (-1)    /* bad argument or violated precondition */
#define ZH_ERR_COVERAGE (-2)   /* zero table does not cover the request */
#define ZH_ERR_CAPACITY (-3)   /* enumeration exceeds a configured cap */
#define ZH_ERR_INFEASIBLE (-4) /* no valid configuration exists */
#define ZH_ERR_INCOMPLETE (-5) /* zero scan disagrees with the count */
#define ZH_ERR_IO (-6)         /* file could not be read or written */
#define ZH_ERR_NOMEM (-7)      /* allocation failure */
#define ZH_ERR_INTERNAL (-8)   /* unexpected internal failure */

/* Library version string, e.g. "0.1.0". */
const char* zh_version(void);

/* Message for the most recent failure in this thread; "" if none yet. */
const char* zh_last_error(void);

/* Worker threads used for grid evaluation.  n <= 0 restores the default
 * (environment variable ZETAHYBRID_WORKERS, else hardware concurrency). */
void zh_set_worker_count(int n);

/* ----------------------------------------------------------------- handles */

typedef struct zh_primes zh_primes; /* prime table from a sieve */
typedef struct zh_zeros zh_zeros;   /* table of critical-line zero ordinates */
typedef struct zh_coeffs zh_coeffs; /* Dirichlet-polynomial coefficients */

/* ------------------------------------------------------------------ primes */

/* Sieve of Eratosthenes up to `limit` inclusive (limit >= 2). */
int zh_primes_new(uint64_t limit, zh_primes** out);
void zh_primes_free(zh_primes* h);
int zh_primes_count(const zh_primes* h, uint64_t* out);
/* index-th prime in ascending order, 0-based. */
int zh_primes_get(const zh_primes* h, uint64_t index, uint64_t* out);

/* ------------------------------------------------------------------- zeros */

typedef struct zh_zeros_info {
    double t_lo;      /* certified coverage lower end */
    double t_cov;     /* certified coverage upper end */
    int64_t n_below;  /* zeros at or below t_lo */
    uint64_t count;   /* ordinates stored in (t_lo, t_cov] */
    double first;     /* smallest stored ordinate; NaN when empty */
    double last;      /* largest stored ordinate; NaN when empty */
} zh_zeros_info;

/* Locate every zero with ordinate in (t_min, t_max]. */
int zh_zeros_find(double t_min, double t_max, zh_zeros** out);
/* Read a one-ordinate-per-line file and re-verify each entry. */
int zh_zeros_load(const char* path, zh_zeros** out);
/* Write one ordinate per line, ascending, 9 decimal places. */
int zh_zeros_save(const zh_zeros* h, const char* path);
void zh_zeros_free(zh_zeros* h);
int zh_zeros_info_get(const zh_zeros* h, zh_zeros_info* out);
/* index-th stored ordinate, ascending, 0-based. */
int zh_zeros_get(const zh_zeros* h, uint64_t index, double* out);
/* N(t): zeros with ordinate <= t, including those below the table. */
int zh_zeros_count_to(const zh_zeros* h, double t, int64_t* out);
/* S(t) = N(t) - theta(t)/pi - 1 (left limit at zero ordinates). */
int zh_zeros_s_of_t(const zh_zeros* h, double t, double* out);

/* ------------------------------------------------------------------ hybrid */

typedef struct zh_hybrid_result {
    double zeta_re, zeta_im; /* zeta(1/2 + it) */
    double p_re, p_im;       /* partial Euler product P_X(1/2 + it) */
    double zq_re, zq_im;     /* quotient-path Z_X = zeta / P_X */
    double zd_re, zd_im;     /* zero-sum-path Z_X; NaN without zeros */
    double residual;         /* |zeta/(P_X Z_direct) - 1|; NaN without zeros */
    double tail_estimate;    /* reported zero-sum tail; NaN without zeros */
} zh_hybrid_result;

/* Evaluate the model at one point.  `zeros` may be NULL, in which case only
 * the quotient path is produced.  With a zero table, the direct path uses
 * zeros within `window` of t and the residual additionally requires t to
 * keep distance > 0.05 from every in-window ordinate.  strict_range != 0
 * confines X to [2, t^(1/3)] and fails otherwise. */
int zh_hybrid_eval(double t, double X, const zh_zeros* zeros, double window,
                   int strict_range, zh_hybrid_result* out);

/* ------------------------------------------------------------------ coeffs */

typedef struct zh_coeffs_info {
    double k;         /* exponent of the approximated power P_X^k */
    double X;         /* prime cutoff */
    uint64_t n_max;   /* physical support cap */
    int omega_cap;    /* truncation order of the exponential; -1 = none */
    uint64_t size;    /* stored (nonzero) entries */
    double tail_bound; /* bound on the squared mass beyond n_max */
} zh_coeffs_info;

/* Multiplicative coefficients of exp(k * truncated prime sum). */
int zh_coeffs_build_beta(double k, double X, uint64_t n_max, zh_coeffs** out);
/* Coefficients of the order-W0 truncated exponential; the truncation budget
 * is derived from the height scale T. */
int zh_coeffs_build_alpha(double k, double X, double T, uint64_t n_max,
                          zh_coeffs** out);
void zh_coeffs_free(zh_coeffs* h);
int zh_coeffs_info_get(const zh_coeffs* h, zh_coeffs_info* out);
/* Coefficient at n (0 for n outside the stored support). */
int zh_coeffs_entry(const zh_coeffs* h, uint64_t n, double* out);
/* D(t) = sum entry(n) n^{-1/2-it}. */
int zh_coeffs_eval(const zh_coeffs* h, double t, double* out_re,
                   double* out_im);
/* CSV with header "n,coefficient". */
int zh_coeffs_export_csv(const zh_coeffs* h, const char* path);

/* ----------------------------------------------------------------- moments */

/* Uniform midpoint grid over [t_start, t_end]: samples at
 * t_start + (i + 1/2) step for every midpoint below t_end. */
typedef struct zh_grid {
    double t_start;
    double t_end;
    double step;
} zh_grid;

#define ZH_MOMENT_ZETA 0     /* |zeta(1/2+it)| */
#define ZH_MOMENT_EULER 1    /* |P_X(1/2+it)| */
#define ZH_MOMENT_QUOTIENT 2 /* |zeta/P_X| */

typedef struct zh_moment_result {
    double value;      /* grid mean of |f|^{2k} */
    double std_error;  /* contiguous-block bootstrap error */
    double prediction; /* asymptotic prediction; NaN when none applies */
    uint64_t n_points;
    int coarse_warning; /* grid step under-resolves the integrand */
} zh_moment_result;

/* Mean of |f|^{two_k} over the grid for the selected integrand family.
 * X is ignored for ZH_MOMENT_ZETA.  The prediction is a(k)(e^g log X)^{k^2}
 * for the Euler family (k = two_k/2 > -1/2) and g(k)(log T/(e^g log X))^{k^2}
 * for the quotient family (integer k >= 0, T = t_end), NaN otherwise.
 * strict != 0 turns the coarse-grid warning into a failure. */
int zh_moment(int family, double two_k, double X, zh_grid grid, int strict,
              zh_moment_result* out);

typedef struct zh_split_result {
    double k, X;
    double m_pz, m_p, m_z;             /* joint and marginal 2k-th moments */
    double m_pz_err, m_p_err, m_z_err; /* bootstrap errors */
    double ratio;                      /* m_pz / (m_p * m_z) */
    double ratio_err;                  /* joint bootstrap error */
    double pred_p, pred_z;             /* predictions; pred_z NaN unless k
                                          is a nonnegative integer */
    double m_pz_direct; /* joint moment through the zero-sum Z; NaN
                           without zeros */
    uint64_t n_points;
    int coarse_warning;
} zh_split_result;

/* Splitting experiment: joint vs product of marginal moments on one grid.
 * `zeros` may be NULL (no direct-path cross-check).  k >= 0. */
int zh_split(double k, double X, zh_grid grid, const zh_zeros* zeros,
             double window, int strict, zh_split_result* out);

#define ZH_TAIL_REAL 0
#define ZH_TAIL_IMAG 1
#define ZH_TAIL_BOTH 2

typedef struct zh_tail_result {
    double fraction; /* grid fraction where the part exceeds V */
    uint64_t n_points;
} zh_tail_result;

/* Fraction of grid points where |Re|, |Im|, or either part of the prime
 * sum at cutoff X exceeds V. */
int zh_tail_measure(double V, double X, int part, zh_grid grid,
                    zh_tail_result* out);

typedef struct zh_st_result {
    double lhs_re, lhs_im; /* prime sum at t */
    double rhs_re, rhs_im; /* S(y)-convolution over [t-Y, t+Y] */
    double diff;           /* |lhs - rhs| */
    double error_budget;   /* displayed remainder with unit constants */
} zh_st_result;

/* Convolution identity for the prime sum against S(t); requires a zero
 * table covering [t - Y, t + Y] and 0 < Y <= t/2. */
int zh_st_identity(double t, double X, double Y, const zh_zeros* zeros,
                   zh_st_result* out);

typedef struct zh_psum_max_result {
    double empirical_max_re, empirical_max_im;
    double t_at_max_re, t_at_max_im;
    double rh_bound_re, rh_bound_im; /* conditional bounds at T = t_end */
    double unconditional;            /* 2 sqrt(X)/log X */
    int in_hypothesis;               /* X >= 2 (log T)^2 */
    uint64_t n_points;
} zh_psum_max_result;

/* Scan |Re| and |Im| maxima of the prime sum over the grid. */
int zh_prime_sum_max(zh_grid grid, double X, zh_psum_max_result* out);

typedef struct zh_second_moment_result {
    double product; /* exact local Euler product */
    double direct;  /* brute-force double sum; NaN when skipped */
} zh_second_moment_result;

/* The gcd double sum behind the second moment of the inverse coefficients,
 * as an Euler product and (optionally, quadratic cost) a direct sum over
 * the table up to n_max. */
int zh_second_moment_arith(double X, uint64_t n_max, int with_direct,
                           zh_second_moment_result* out);

typedef struct zh_fourth_moment_result {
    double numerator;   /* local products; 1 + o(1) in X */
    double denominator; /* prod (1-1/p)^4/(1-1/p^2) over p <= X */
    double combined;
} zh_fourth_moment_result;

int zh_fourth_moment_arith(double X, zh_fourth_moment_result* out);

/* ------------------------------------------------------------ verification */

typedef void (*zh_check_callback)(const char* name, int passed,
                                  const char* detail, void* user);

/* Run a named self-check suite ("arith", "special", "zeta", "coeffs",
 * "hybrid", "ladder", "moments", "all").  The callback, if non-NULL, is
 * invoked once per check; out_checks/out_failures, if non-NULL, receive the
 * totals.  Returns ZH_OK even when checks fail (inspect out_failures);
 * non-OK only for unknown suites or internal errors. */
int zh_verify(const char* suite, zh_check_callback cb, void* user,
              int* out_checks, int* out_failures);

#ifdef __cplusplus
}
#endif

#endif /* ZETAHYBRID_H */
