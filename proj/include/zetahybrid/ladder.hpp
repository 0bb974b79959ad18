#pragma once
// Multiscale block decomposition of prime Dirichlet polynomials.
//
// Primes up to T_J are split into geometric blocks (T_{i-1}, T_i] with
// T_j = T^{theta_j}, theta_j = e^j / (log log T)^2 and T_{-1} = A.  Each
// block carries a short prime sum
//
//     P_{i,j}(t) = sum_{T_{i-1} < p <= T_i} w_j(p) p^{-1/2-it},
//     w_j(p)     = p^{-1/log T_j} * log(T_j/p) / log T_j,
//
// short enough that its exponential can be replaced by the polynomial
//
//     N_{i,j}(t,k) = sum_{Omega(n) <= 10*l_i, p|n => p in block}
//                        k^Omega(n) w_j(n) g(n) / n^{1/2+it},
//
// where l_i = theta_i^{-3/4}, g(p^a) = 1/a!, and w_j extends completely
// multiplicatively.  By the multinomial theorem this polynomial is exactly
// the truncated exponential sum_{m <= 10*l_i} (k*P_{i,j}(t))^m / m!, which
// is how we evaluate it; the correspondence with the n-sum definition is
// pinned down by an enumeration oracle in the tests.
//
// Two companion objects close the system: the small-prime tail polynomial
//
//     M(t,k) = sum_{Omega(n) <= 10k(log log T)^2, p|n => p <= log T}
//                  (k/2)^Omega(n) g(n) / n^{1+2it}
//
// (again a truncated exponential, at argument 1+2it), and the majorant
//
//     Q_j(t) = (e|P_j|/(10 l_j))^{20 l_j} * sum_{r <= 10 l_j/k}
//                  (2e|P_j|/(r+1))^{2r}
//
// with P_j the unweighted block-j sum, which controls the region where
// |k P_j| exceeds the truncation budget l_j.  Q_j is evaluated in log
// space: its exponents overflow any fixed-precision format.
//
// The ladder itself lives in log space.  build_ladder_ll() accepts
// log log T directly, so parameter regimes whose T (or even log T) cannot
// be materialized in a double are still constructible; only theta_j, l_j
// and the level count matter there.  Numeric block evaluation ("desk mode")
// additionally needs T_i inside the sieve capacity.

#include <cstdint>
#include <optional>
#include <vector>

#include "zetahybrid/arith.hpp"
#include "zetahybrid/common.hpp"

namespace zh {

struct LadderLevel {
    double theta = 0;   // exponent: T_j = T^theta
    double ell = 0;     // truncation scale l_j = theta^{-3/4}
    double log_Tj = 0;  // theta * log T; +inf if log T overflows a double
    double Tj = 0;      // exp(log_Tj); +inf beyond double range
};

struct LadderParams {
    double log_T = 0;  // log T (+inf if only log log T was representable)
    double ll_T = 0;   // log log T
    double A = 1;      // lower cutoff T_{-1}
    double kappa = 0;  // cap on theta_J
    int J = -1;        // top level index; levels.size() == J+1
    std::vector<LadderLevel> levels;

    // Lower endpoint T_{i-1} of block i (A for i = 0).
    double level_lo(int i) const;
    double level_lo_log(int i) const;
};

// Builds the ladder for a given T.  Requires T >= 100, A >= 1, and
// kappa >= 1/(log log T)^2 so that at least level 0 exists; otherwise
// throws InfeasibleError carrying that minimal feasible kappa.  A must lie
// strictly below the first rung T_0 so the blocks partition (A, T_J].
LadderParams build_ladder(double T, double A, double kappa);

// Same, from log T (for T beyond double range).
LadderParams build_ladder_log(double log_T, double A, double kappa);

// Same, from log log T (for log T beyond double range; level T_j and even
// log T_j may then be +inf, and only log-space quantities are usable).
LadderParams build_ladder_ll(double ll_T, double A, double kappa);

// The block weight w_j(p) for p <= T_j; decreasing in p, 1 at p -> 1+,
// 0 at p = T_j.  Throws std::domain_error for p > T_j.
double weight_w(uint64_t p, int j, const LadderParams& params);

// sum_{m <= order} z^m / m!, accumulated in extended precision.  This is
// exp(z) up to a tail below e^{-9 Z} of |exp(z)| whenever |z| <= Z and
// order >= 10 Z; for |z| well beyond order/3 cancellation makes the value
// meaningful only in exact arithmetic.
cplx truncated_exp(cplx z, int order);

// Block prime sum over T_{i-1} < p <= T_i at s = 1/2 + it: weighted by
// w_j(p) when j is given (requires i <= j), weight 1 otherwise.  Sieves
// internally unless a table covering T_i is supplied; throws CapacityError
// if T_i exceeds the sieve cap and CoverageError if the supplied table is
// too short.
cplx block_prime_sum(double t, int i, std::optional<int> j,
                     const LadderParams& params,
                     const PrimeTable* primes = nullptr);

// Block polynomial N_{i,j}(t,k) (weighted) or N_i(t,k) (j absent,
// weight 1), evaluated as the truncated exponential of k * P_{i,j}(t)
// with order floor(10 * l_i).
cplx block_poly_n(double t, int i, std::optional<int> j, double k,
                  const LadderParams& params,
                  const PrimeTable* primes = nullptr);

// Small-prime tail polynomial M(t,k): truncated exponential of
// (k/2) * sum_{p <= log T} p^{-1-2it} with order floor(10 k (log log T)^2).
// Requires T >= 2; below T = e^2 there are no primes <= log T and the
// value is exactly 1.
cplx tail_poly_m(double t, double k, double T);

// The majorant Q_j(t) from |P_j(t)| = p_abs, truncation scale ell, and
// moment parameter k > 0 (throws std::domain_error otherwise).  Computed
// via log-sum-exp; returns 0 for p_abs = 0 and +inf past double range.
double majorant_q_value(double p_abs, double ell, double k);

// Q_j(t) with |P_j(t)| taken from the unweighted block-j prime sum.
double majorant_q(double t, int j, double k, const LadderParams& params,
                  const PrimeTable* primes = nullptr);

}  // namespace zh
