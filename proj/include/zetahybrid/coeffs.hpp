// Dirichlet-polynomial approximations of P_X^k: the multiplicative
// coefficients beta_k(n), their truncated-exponential counterparts
// alpha_k(n), the polynomial D(t,k), and Rankin-trick tail bounds.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "zetahybrid/common.hpp"

namespace zh {

enum class CoeffKind { alpha, beta, gamma_ladder };

// Sparse coefficient table over the X-smooth integers up to n_max, stored as
// aligned ascending-n / coefficient vectors.  Exact zeros are not stored;
// entry() returns 0 for absent n.
struct CoeffTable {
    CoeffKind kind = CoeffKind::beta;
    double k = 0;
    double X = 0;
    uint64_t n_max = 0;
    int omega_cap = -1;              // alpha truncation order W0; -1 = none
    std::vector<uint64_t> n;         // ascending support
    std::vector<double> coef;        // aligned with n
    std::vector<long double> logn;   // aligned log n, for phase accuracy
    // Rankin-trick upper bound on sum_{n > n_max, X-smooth} entry(n)^2 / n,
    // i.e. the weight of what the physical cap discarded.  Reported with the
    // table, never applied.
    double tail_bound = 0;

    double entry(uint64_t m) const;  // 0 when absent
    std::size_t size() const { return n.size(); }
};

// Exponential-truncation budget: V0 = log log T * log log log T, floored at
// v0_min (with the flag set) where T is too small for the iterated logs to
// mean anything, and W0 = 20 |k| V0.
struct TruncationBudget {
    double V0 = 0;
    double W0 = 0;
    bool floor_applied = false;
};
TruncationBudget truncation_budget(double T, double k, double v0_min = 2.0);

// Multiplicative beta_k: local factor at p <= X is
//   exp( k * sum_{m : p^m <= X} p^{-ms} / m ),
// i.e. -k log(1 - p^{-s}) with the p^m > X part of the log series removed,
// expanded as a power series in p^{-s} out to p^m <= n_max.
CoeffTable build_beta(double k, double X, uint64_t n_max = 10000000);

// alpha_k: coefficients of the truncated exponential
//   sum_{j <= W0} k^j/j! (sum_{p^m <= X} p^{-m s}/m)^j
// gathered per n.  Equals beta_k wherever Omega(n) <= W0.
CoeffTable build_alpha(double k, double X, const TruncationBudget& budget,
                       uint64_t n_max = 10000000);

// D(t) = sum entry(n) n^{-1/2-it}, summed in ascending n (deterministic).
cplx eval_dirichlet(const CoeffTable& table, double t);

// The single-prime series behind build_beta: beta_k(p^m) for m = 0..orders,
// i.e. the power-series coefficients of exp(k sum_{m: p^m <= X} y^m/m).
// For p > X every coefficient beyond m = 0 vanishes.
std::vector<double> beta_local(double k, uint64_t p, double X, int orders);

// r^{-W0} prod_{p <= X} sum_{m >= 0} d_{|k|}(p^m)^2 r^m p^{-m}: a rigorous
// upper bound on sum_{Omega(n) > W0, X-smooth} a(n)^2/n for any coefficients
// with |a(n)| <= d_{|k|}(n).  Requires 1 < r < 2.
double rankin_tail_bound(double k, double X, double W0, double r);

// CSV with header "n,coefficient".
void export_csv(const CoeffTable& table, std::ostream& out);

}  // namespace zh
