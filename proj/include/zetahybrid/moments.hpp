#pragma once
// Moment statistics on the critical line: midpoint-grid moment estimates
// with block-bootstrap errors, the predicted P- and Z-moment asymptotics,
// the splitting ratio, tail-exceedance fractions of the prime sum, moment
// bounds for short Dirichlet polynomials, mean-value diagonals, the
// arithmetic factors of the second and fourth moments, the S(t)-convolution
// identity for the prime sum, and prime-sum maximum scans.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zetahybrid/coeffs.hpp"
#include "zetahybrid/common.hpp"
#include "zetahybrid/zeta.hpp"

namespace zh {

// Midpoint-rule grid over [t_start, t_end] with step `step` and optional
// excluded closed intervals.  Sample points are the midpoints
// t_start + (i + 1/2) step that fall below t_end and inside no exclusion,
// so the sample mean approximates the window average of the integrand.
struct GridSpec {
    double t_start = 0.0;
    double t_end = 0.0;
    double step = 0.0;
    std::vector<std::pair<double, double>> exclusions;

    void validate() const;  // step > 0, t_end > t_start, ordered exclusions
    // A step above 0.25 / log(t_end) under-resolves the ~2pi/log t
    // oscillation of zeta-sized integrands; the factor 0.25 is the warn
    // threshold used by the moment drivers.
    bool too_coarse() const;
    std::vector<double> points() const;
};

// Mean of |f|^{2k} over the grid with a contiguous-block bootstrap
// standard error (50 blocks, 200 resamples, fixed seed).
struct MomentEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_points = 0;
    GridSpec grid;
    std::string integrand_id;
    bool coarse_warning = false;
};

// Block-bootstrap standard error of the sample mean.  Samples are split
// into 50 contiguous blocks (fewer when there are fewer samples); 200
// resamples with a fixed seed make the result deterministic.
double bootstrap_std_error(std::span<const double> samples);

// Averages |abs_f(t)|^{2k} over the grid.  abs_f must return the magnitude
// of the integrand.  A too-coarse grid sets coarse_warning, or throws
// std::invalid_argument when strict is set.
MomentEstimate integrate_moment(const std::function<double(double)>& abs_f,
                                double two_k, const GridSpec& grid,
                                const std::string& integrand_id,
                                bool strict = false);

// Predicted 2k-th moment of the partial Euler product,
// a(k) (e^gamma log X)^{k^2}; k > -1/2, X >= 2.
double prediction_p(double k, double X);

// Predicted 2k-th moment of the partial Hadamard product,
// g(k) (log T / (e^gamma log X))^{k^2}; integer k >= 0, X >= 2, T > e.
double prediction_z(int k, double X, double T);

// Empirical moments of zeta, P_X, and the quotient Z_X = zeta / P_X over one
// grid, and the ratio of the joint moment to the product of the separate
// moments.  The joint |P_X Z_X|^{2k} equals |zeta|^{2k} identically on the
// quotient path, so m_pz is exactly the zeta moment; when a zero table is
// supplied, m_pz_direct recomputes the joint moment through the zero-sum
// Z_X as a model-consistency cross-check.
struct SplittingReport {
    double k = 0.0;
    double X = 0.0;
    double m_pz = 0.0, m_p = 0.0, m_z = 0.0;
    double m_pz_err = 0.0, m_p_err = 0.0, m_z_err = 0.0;
    double ratio = 0.0;      // m_pz / (m_p * m_z)
    double ratio_err = 0.0;  // joint block-bootstrap error of the ratio
    double pred_p = 0.0;     // prediction_p(k, X)
    double pred_z = 0.0;     // prediction_z(round k, X, t_end) when k integer
    std::optional<double> m_pz_direct;
    std::size_t n_points = 0;
    bool coarse_warning = false;
    GridSpec grid;
};

SplittingReport splitting_report(double k, double X, const GridSpec& grid,
                                 const ZeroTable* zeros = nullptr,
                                 double window = 50.0, bool strict = false);

enum class TailPart { real, imag, both };

// Fraction of grid points where the chosen part of the prime sum at X
// exceeds V in absolute value (both: either part exceeds).
struct TailMeasureReport {
    double V = 0.0;
    TailPart part = TailPart::real;
    double fraction = 0.0;
    double X = 0.0;
    std::size_t n_points = 0;
    GridSpec grid;
};

TailMeasureReport tail_measure(double V, double X, TailPart part,
                               const GridSpec& grid);

// Empirical 2m-th moment of sum_{p <= X} p^{-1/2-it} against the diagonal
// bound m! (sum_{p <= X} 1/p)^m; integer 0 <= m <= 6.
struct ChebyshevMomentBound {
    int m = 0;
    double X = 0.0;
    double empirical = 0.0;
    double bound = 0.0;
    std::size_t n_points = 0;
};

ChebyshevMomentBound chebyshev_moment_bound(int m, double X,
                                            const GridSpec& grid);

// Diagonal mean value of a Dirichlet polynomial.  For a coefficient table
// whose polynomial is sum entry(n) n^{-1/2-it}, the diagonal is
// sum entry(n)^2 / n; the raw overload treats its input as the |a(n)| of
// sum a(n) n^{-it} and returns sum |a(n)|^2.
double mv_diagonal(const CoeffTable& table);
double mv_diagonal(std::span<const double> coefficients);

// The beta_{-1} gcd double sum  sum_{m,n X-smooth} b(m) b(n) gcd(m,n)/(mn),
// once as an exact local Euler product over p <= X and once as a brute-force
// double sum over the stored table up to n_max.  e^gamma log X * product
// tends to 1 as X grows.  The brute-force path is quadratic in the table
// size (~3e5 entries already at X = 1000, n_max = 1e6) and can be skipped;
// direct is NaN when skipped.
struct SecondMomentArith {
    double product = 0.0;
    double direct = 0.0;
    double X = 0.0;
    uint64_t n_max = 0;
};

SecondMomentArith second_moment_arith(double X, uint64_t n_max = 1000000,
                                      bool with_direct = true);

// Local products for the fourth-moment arithmetic factor: numerator
// prod_p sum_j c_p(j)^2 p^{-j} with c_p(j) = sum_{m+n=j} beta_{-2}(p^m) (n+1)
// (each local sum truncated at p^m <= 10^6 per factor), denominator
// prod_{p<=X} (1-1/p)^4 / (1-1/p^2).  The untruncated numerator is exactly 1;
// denominator * (e^gamma log X)^4 tends to zeta(2).
struct FourthMomentArith {
    double numerator = 0.0;
    double denominator = 0.0;
    double combined = 0.0;  // numerator * denominator
    double X = 0.0;
};

FourthMomentArith fourth_moment_arith(double X);

// Convolution kernel (1 - X^{-iv})/v with the removable singularity at
// v = 0 filled by its limit i log X; log_x = log X.
cplx st_kernel(double v, double log_x);

// Tests the identity  prime_sum(t, X) ~ int_{t-Y}^{t+Y} S(y) K(t-y) dy
// against its displayed remainder budget.  The integral is evaluated
// piecewise between consecutive zero ordinates (S is smooth there) by
// Gauss-Legendre.  Requires 0 < Y <= t/2 and a zero table covering
// [t - Y, t + Y].
struct StIdentityReport {
    double t = 0.0, X = 0.0, Y = 0.0;
    cplx lhs;              // prime_sum(t, X)
    cplx rhs;              // the S(y) convolution
    double diff = 0.0;     // |lhs - rhs|
    double error_budget = 0.0;
};

StIdentityReport st_identity_check(double t, double X, double Y,
                                   const ZeroTable& zeros);

// Maximum of |Re| and |Im| of the prime sum over the grid, against the
// conditional bound (1/2)(log(sqrt X / log T) + 4 log log X) log T/log log T
// (imaginary part: the same with 1/2 replaced by 1/pi, i.e. 2/pi times the
// real bound) and the unconditional bound 2 sqrt X / log X, with
// T = grid.t_end.  The conditional bound is stated for X >= 2 (log T)^2;
// in_hypothesis records whether the scan is in that range.
struct PrimeSumMaxScan {
    double X = 0.0;
    double empirical_max_re = 0.0;
    double empirical_max_im = 0.0;
    double t_at_max_re = 0.0;
    double t_at_max_im = 0.0;
    double rh_bound_re = 0.0;
    double rh_bound_im = 0.0;
    double unconditional = 0.0;
    bool in_hypothesis = false;
    std::size_t n_points = 0;
};

PrimeSumMaxScan prime_sum_max_scan(const GridSpec& grid, double X);

}  // namespace zh
