// The hybrid model: partial Euler product P_X, partial Hadamard product Z_X
// (quotient and zero-sum paths), and the residual between zeta and their
// product.
#pragma once

#include <optional>
#include <vector>

#include "zetahybrid/common.hpp"
#include "zetahybrid/special.hpp"
#include "zetahybrid/zeta.hpp"

namespace zh {

// Precomputed prime-power terms of the P_X exponent sum, reusable across
// many ordinates.  Each term is Lambda(n)/(n^{1/2} log n) = 1/(m p^{m/2})
// for n = p^m <= X, with the phase t*log(n) carried in long double.
class PrimeSumPlan {
  public:
    explicit PrimeSumPlan(double X);
    double X() const { return X_; }
    // sum_{n <= X} Lambda(n) / (n^{1/2+it} log n)
    cplx eval(double t) const;
    // value at t=0 (the absolute bound on |eval| over all t)
    double max_abs() const { return max_abs_; }

  private:
    double X_;
    double max_abs_;
    std::vector<double> coef_;
    std::vector<long double> logn_;
};

// One-shot convenience wrapper.
cplx prime_sum(double t, double X);

// Magnitude/phase representation of exp(k * prime_sum): immune to overflow
// for large k since only the log is stored.
struct LogComplex {
    double log_abs = 0;
    double arg = 0;
    cplx value() const;
};

// P_X(1/2+it)^k = exp(k * prime_sum(t, X)).
LogComplex euler_product_p(double t, double X, double k);
LogComplex euler_product_p(double t, const PrimeSumPlan& plan, double k);

// zeta(1/2+it) / P_X(1/2+it): the quotient path for Z_X.  Deliberately
// keeps the model's 1+O(1/log X) factor; hybrid_residual measures it.
cplx hadamard_z_quotient(double t, double X);
cplx hadamard_z_quotient(double t, const PrimeSumPlan& plan);

// Zero-sum path for Z_X: exp(-sum_rho U((s-rho) log X)) truncated to zeros
// with |gamma - t| <= window plus their reflections.  tail_estimate is the
// heuristic magnitude of the omitted tail's contribution to the exponent
// (the summand decays like 1/(|gamma-t| log X), the zero density grows
// like log(gamma)/2pi, so the tail scales like log(t/window)/log X); it is
// reported, never applied.
struct DirectZ {
    cplx value;
    double tail_estimate = 0;
};
DirectZ hadamard_z_direct(double t, double X, const ZeroTable& zeros,
                          double window);
DirectZ hadamard_z_direct(double t, const SmoothingKernel& kernel,
                          const ZeroTable& zeros, double window);

// |zeta / (P_X * Z_X-direct) - 1|.  Requires |t - gamma| > 0.05 for every
// in-window zero (both sides vanish at zeros; the ratio is noise).  With
// strict_range, X is confined to [2, t^{1/3}] — the model's stated validity
// range — and violations throw.
double hybrid_residual(double t, double X, const ZeroTable& zeros,
                       double window, bool strict_range = false);
double hybrid_residual(double t, const SmoothingKernel& kernel,
                       const ZeroTable& zeros, double window,
                       bool strict_range = false);

// Convenience bundle for one (t, X) sample.
struct HybridPoint {
    double t = 0;
    double X = 0;
    cplx p_value;
    cplx z_quotient;
    std::optional<cplx> z_direct;
    cplx zeta;
};
HybridPoint hybrid_point(double t, double X, const ZeroTable* zeros = nullptr,
                         double window = 50.0);

}  // namespace zh
