// Hybrid-model pieces.  P_X is evaluated through its exponent sum over prime
// powers (phases in long double so t up to 1e7 keeps full precision), Z_X
// either as zeta/P_X or as the truncated sum over zeros of U((s-rho) log X).
#include "zetahybrid/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zetahybrid/arith.hpp"

namespace zh {

PrimeSumPlan::PrimeSumPlan(double X) : X_(X) {
    if (!(X >= 2.0)) throw std::domain_error("PrimeSumPlan: X must be >= 2");
    if (X > 4.0e9) throw std::domain_error("PrimeSumPlan: X too large to sieve");
    const auto cap = static_cast<uint64_t>(std::floor(X));
    PrimeTable pt = sieve_primes(cap);
    pt.for_each_prime_power(cap, [&](uint64_t p, int m, uint64_t pm) {
        // Lambda(p^m)/(p^{m/2} log p^m) = 1/(m p^{m/2})
        coef_.push_back(1.0 / (m * std::sqrt(static_cast<double>(pm))));
        logn_.push_back(static_cast<long double>(m) *
                        std::log(static_cast<long double>(p)));
    });
    long double s = 0;
    for (double c : coef_) s += c;
    max_abs_ = static_cast<double>(s);
}

cplx PrimeSumPlan::eval(double t) const {
    const long double tl = t;
    long double re = 0, im = 0;
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        const long double ph = -tl * logn_[i];
        re += coef_[i] * std::cos(ph);
        im += coef_[i] * std::sin(ph);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

cplx prime_sum(double t, double X) { return PrimeSumPlan(X).eval(t); }

cplx LogComplex::value() const {
    return std::exp(log_abs) * cplx(std::cos(arg), std::sin(arg));
}

LogComplex euler_product_p(double t, const PrimeSumPlan& plan, double k) {
    const cplx s = plan.eval(t);
    return {k * s.real(), k * s.imag()};
}

LogComplex euler_product_p(double t, double X, double k) {
    return euler_product_p(t, PrimeSumPlan(X), k);
}

cplx hadamard_z_quotient(double t, const PrimeSumPlan& plan) {
    // |prime_sum| is bounded by its t=0 value (a few tens at most), so the
    // plain exp cannot overflow here.
    return zeta_critical(t) * std::exp(-plan.eval(t));
}

cplx hadamard_z_quotient(double t, double X) {
    return hadamard_z_quotient(t, PrimeSumPlan(X));
}

namespace {

// Contribution of one zero ordinate g to the exponent sum at height ta:
// U(i (ta - g) log X) plus the reflected zero's U(i (ta + g) log X).
// Exactly at a zero U diverges (+inf real part) and Z_X vanishes; a capped
// stand-in keeps exp(-sum) at a true-zero-like 1e-35 instead of NaN.
cplx zero_term(const SmoothingKernel& kernel, double ta, double g, double L) {
    cplx sum = 0;
    const double y1 = (ta - g) * L;
    if (std::abs(y1) < 1e-12) {
        sum += 80.0;
    } else {
        sum += kernel.big_u(cplx(0.0, y1));
    }
    // The reflection sits at distance ta + g.  Once |z| is large the
    // integral of the smooth bump against e^{-z log x} decays faster than
    // any power of |z| (compactly supported C^inf weight), so beyond 1e3 the
    // term is far below the quadrature floor and is dropped.
    const double y2 = (ta + g) * L;
    if (std::abs(y2) < 1e3) sum += kernel.big_u(cplx(0.0, y2));
    return sum;
}

}  // namespace

DirectZ hadamard_z_direct(double t, const SmoothingKernel& kernel,
                          const ZeroTable& zeros, double window) {
    if (!(window > 0)) throw std::domain_error("hadamard_z_direct: window <= 0");
    if (t < 0) {
        DirectZ r = hadamard_z_direct(-t, kernel, zeros, window);
        r.value = std::conj(r.value);
        return r;
    }
    const double lo = std::max(0.0, t - window);
    const double hi = t + window;
    if (zeros.t_lo > lo + 1e-12 || zeros.t_cov < hi - 1e-12) {
        throw CoverageError("hadamard_z_direct: zero table covers [" +
                            std::to_string(zeros.t_lo) + ", " +
                            std::to_string(zeros.t_cov) +
                            "] but [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "] is needed");
    }
    const double L = std::log(kernel.X());
    const auto& ord = zeros.ordinates;
    auto first = std::lower_bound(ord.begin(), ord.end(), lo);
    cplx usum = 0;
    for (auto it = first; it != ord.end() && *it <= hi; ++it)
        usum += zero_term(kernel, t, *it, L);
    DirectZ out;
    out.value = std::exp(-usum);
    // Omitted-tail heuristic: each omitted zero contributes O(1/(|t-g| L))
    // and the ordinate density is ~log(g)/2pi, so integrating 1/y from the
    // window edge out to height ~t gives (2/pi) log(t/window) / L.  Reported
    // for diagnostics only.
    out.tail_estimate =
        (2.0 / kPi) * std::log(std::max(t, 2.0 * window) / window) / L;
    return out;
}

DirectZ hadamard_z_direct(double t, double X, const ZeroTable& zeros,
                          double window) {
    return hadamard_z_direct(t, SmoothingKernel(X), zeros, window);
}

double hybrid_residual(double t, const SmoothingKernel& kernel,
                       const ZeroTable& zeros, double window,
                       bool strict_range) {
    const double ta = std::abs(t);
    const double X = kernel.X();
    if (strict_range && X > std::cbrt(ta) * (1 + 1e-12)) {
        throw std::domain_error("hybrid_residual: X=" + std::to_string(X) +
                                " outside [2, t^{1/3}] at t=" +
                                std::to_string(ta));
    }
    // Both zeta and Z_X vanish at zeros; the ratio there is pure noise.
    const auto& ord = zeros.ordinates;
    auto near = std::lower_bound(ord.begin(), ord.end(), ta - 0.05);
    if (near != ord.end() && *near <= ta + 0.05) {
        throw std::domain_error("hybrid_residual: t=" + std::to_string(ta) +
                                " is within 0.05 of the zero at " +
                                std::to_string(*near));
    }
    const PrimeSumPlan plan(X);
    const cplx s = plan.eval(ta);
    const DirectZ dz = hadamard_z_direct(ta, kernel, zeros, window);
    const cplx ratio = zeta_critical(ta) * std::exp(-s) / dz.value;
    return std::abs(ratio - 1.0);
}

double hybrid_residual(double t, double X, const ZeroTable& zeros,
                       double window, bool strict_range) {
    return hybrid_residual(t, SmoothingKernel(X), zeros, window, strict_range);
}

HybridPoint hybrid_point(double t, double X, const ZeroTable* zeros,
                         double window) {
    HybridPoint hp;
    hp.t = t;
    hp.X = X;
    const PrimeSumPlan plan(X);
    const cplx s = plan.eval(t);
    hp.zeta = zeta_critical(t);
    hp.p_value = std::exp(s);
    hp.z_quotient = hp.zeta * std::exp(-s);
    if (zeros != nullptr)
        hp.z_direct = hadamard_z_direct(t, X, *zeros, window).value;
    return hp;
}

}  // namespace zh
