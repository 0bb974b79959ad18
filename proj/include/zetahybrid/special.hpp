#pragma once
// Special functions: the complex exponential integral E1 on the principal
// branch, the compact bump kernel u and its transform U, Barnes G at
// integers, the random-matrix constant g(k), and Riemann-Siegel theta.

#include "zetahybrid/common.hpp"

namespace zh {

// E1(z) = int_z^infty e^{-w}/w dw, principal branch (|arg z| < pi, z != 0).
// Power series for |z| <= 4, modified-Lentz continued fraction beyond.
cplx exp_integral_e1(cplx z);

// The unit-mass C^infty bump supported on [e^{1-1/X}, e]:
//   u(x) = C exp(-1/(1-y^2)),  y = 2X(log x - 1) + 1,
// with C fixed numerically so that int u = 1.  The object precomputes
// Gauss-Legendre nodes over the support (a coarse set for the small-|z|
// calls the Hadamard product makes, a dense set sized for |z| up to ~1e3)
// so that U(z) = int u(x) E1(z log x) dx is a weighted sum of E1 values.
class SmoothingKernel {
  public:
    explicit SmoothingKernel(double X);

    double X() const { return X_; }
    double norm_constant() const { return C_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }

    double operator()(double x) const;  // u(x); 0 outside the support
    double mass() const;                // re-quadrature of u on the coarse set

    // U(z); absolute error <= 1e-8 for |z| <= 1e3.  z = 0 is a domain error
    // (E1 diverges at 0).
    cplx big_u(cplx z) const;

  private:
    struct NodeSet {
        std::vector<double> x, wu, logx;  // abscissa, GL weight * u(x), log x
    };
    NodeSet make_nodes(int count) const;
    cplx apply(const NodeSet& ns, cplx z) const;

    double X_ = 0.0, C_ = 1.0, lo_ = 0.0, hi_ = 0.0;
    double z_split_ = 0.0;  // |z| above which the dense set is used
    NodeSet coarse_, dense_;
};

inline cplx big_u(cplx z, const SmoothingKernel& kernel) { return kernel.big_u(z); }

// Barnes G at positive integers: G(1) = G(2) = G(3) = 1, G(n) = prod_{j<=n-2} j!.
double barnes_g(int n);

// g(k) = G(k+1)^2 / G(2k+1), k >= 0 integer, computed as an exact factorial
// ratio while it fits 128-bit arithmetic (k <= 8), long double beyond.
double rmt_factor_g(int k);

// theta(t) ~ t/2 log(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3)
//            + 31/(80640 t^5);  t >= 1 required, abs error <= 1e-8 for t >= 10.
double riemann_siegel_theta(double t);

}  // namespace zh
