#include "zetahybrid/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "zetahybrid/arith.hpp"
#include "zetahybrid/coeffs.hpp"
#include "zetahybrid/common.hpp"
#include "zetahybrid/hybrid.hpp"
#include "zetahybrid/ladder.hpp"
#include "zetahybrid/moments.hpp"
#include "zetahybrid/special.hpp"
#include "zetahybrid/zeta.hpp"

namespace zh {

int SuiteReport::failures() const {
    int n = 0;
    for (const auto& c : checks)
        if (!c.passed) ++n;
    return n;
}

namespace {

template <typename... A>
std::string fmt(const char* f, A... a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a...);
    return std::string(buf);
}

struct Suite {
    SuiteReport rep;
    explicit Suite(std::string name) { rep.suite = std::move(name); }

    void add(std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    }
    // |measured - expected| <= tol (tol = 0 demands exact equality).
    void close(std::string name, double measured, double expected, double tol) {
        add(std::move(name), std::abs(measured - expected) <= tol,
            fmt("measured %.12g, expected %.12g, tol %.3g", measured, expected,
                tol));
    }
    void truth(std::string name, bool ok, std::string detail = "") {
        add(std::move(name), ok, std::move(detail));
    }
    template <typename E, typename F>
    void throws(std::string name, F&& f) {
        bool threw = false;
        std::string what = "no exception thrown";
        try {
            f();
        } catch (const E& e) {
            threw = true;
            what = e.what();
        } catch (const std::exception& e) {
            what = fmt("wrong exception type: %s", e.what());
        }
        add(std::move(name), threw, std::move(what));
    }
};

void suite_arith(Suite& s) {
    const auto pt = sieve_primes(1000000);
    s.close("prime count up to 1e6", (double)pt.primes.size(), 78498.0, 0.0);
    s.truth("prime table lookup", pt.contains(999983) && !pt.contains(999984),
            "999983 prime, 999984 not");

    s.close("von Mangoldt at 8", von_mangoldt(8), std::log(2.0), 1e-15);
    s.close("von Mangoldt at 9", von_mangoldt(9), std::log(3.0), 1e-15);
    s.close("von Mangoldt vanishes off prime powers",
            von_mangoldt(1) + von_mangoldt(12) + von_mangoldt(30), 0.0, 0.0);

    // d_k(p^m) = binom(k+m-1, m); d_2 counts divisors, d_{-1} is Moebius-like.
    s.close("d_2 at 2^10", divisor_k(2, 1024), 11.0, 0.0);
    s.close("d_3 at 8", divisor_k(3, 8), 10.0, 1e-12);
    s.close("d_{-1} at p^2", divisor_k(-1, 49), 0.0, 0.0);
    s.close("d_k multiplicative on coprime parts",
            divisor_k(2.5, 12) - divisor_k(2.5, 4) * divisor_k(2.5, 3), 0.0,
            1e-12);

    // Brute-force 10-smooth census as the enumeration oracle.
    {
        std::size_t brute = 0;
        for (uint64_t n = 1; n <= 10000; ++n) {
            uint64_t m = n;
            for (uint64_t p : {2, 3, 5, 7})
                while (m % p == 0) m /= p;
            if (m == 1) ++brute;
        }
        const auto sm = enumerate_smooth(10, 10000);
        s.close("10-smooth census to 1e4", (double)sm.members.size(),
                (double)brute, 0.0);
    }

    const auto a1 = arithmetic_factor_a(1, 100000);
    s.close("arithmetic factor at k=1 is 1", a1.value, 1.0, 1e-12);
    const auto a2 = arithmetic_factor_a(2, 1000000);
    s.close("arithmetic factor at k=2 is 6/pi^2", a2.value,
            6.0 / (kPi * kPi), 1e-6);

    const auto mert = mertens_product(100000);
    s.close("Mertens product ratio near 1", mert.ratio, 1.0, 0.01);
}

void suite_special(Suite& s) {
    s.close("E1 at 1", exp_integral_e1(cplx(1.0, 0.0)).real(),
            0.21938393439552027, 1e-13);
    {  // e^{-z}/(z+1) < E1(z) < e^{-z}/z for real z > 0.
        const double v = exp_integral_e1(cplx(10.0, 0.0)).real();
        s.truth("E1 inside its elementary bracket at z=10",
                v > std::exp(-10.0) / 11.0 && v < std::exp(-10.0) / 10.0,
                fmt("measured %.12g", v));
    }
    {
        const cplx z(2.0, 3.0);
        const cplx d =
            exp_integral_e1(std::conj(z)) - std::conj(exp_integral_e1(z));
        s.close("E1 conjugate symmetry", std::abs(d), 0.0, 1e-12);
    }

    const SmoothingKernel ker(10.0);
    s.close("bump kernel unit mass", ker.mass(), 1.0, 1e-9);
    s.close("bump support lower edge", ker.support_lo(), std::exp(1.0 - 0.1),
            1e-12);
    s.close("bump support upper edge", ker.support_hi(), std::exp(1.0), 1e-12);
    s.truth("bump vanishes outside support, positive inside",
            ker(ker.support_lo() - 1e-9) == 0.0 &&
                ker(ker.support_hi() + 1e-9) == 0.0 &&
                ker(0.5 * (ker.support_lo() + ker.support_hi())) > 0.0);
    {
        const cplx z(3.0, -4.0);
        const cplx d = ker.big_u(std::conj(z)) - std::conj(ker.big_u(z));
        s.close("U conjugate symmetry", std::abs(d), 0.0, 1e-10);
    }

    s.close("Barnes G at 4", barnes_g(4), 2.0, 0.0);
    s.close("Barnes G at 6", barnes_g(6), 288.0, 0.0);
    s.close("g(1)", rmt_factor_g(1), 1.0, 0.0);
    s.close("g(2)", rmt_factor_g(2), 1.0 / 12.0, 0.0);
    s.close("g(3)", rmt_factor_g(3), 1.0 / 8640.0, 0.0);

    // First Gram point: theta vanishes there.
    s.close("theta at its first positive root",
            riemann_siegel_theta(17.8455995405), 0.0, 1e-6);
}

void suite_zeta(Suite& s) {
    s.close("zeta(2) = pi^2/6", std::abs(zeta_em(cplx(2.0, 0.0))),
            kPi * kPi / 6.0, 1e-12);
    s.close("zeta(1/2)", zeta_em(cplx(0.5, 0.0)).real(), -1.4603545088095868,
            1e-9);
    s.close("|Z| = |zeta| on the line",
            std::abs(hardy_z(1000.3)) - std::abs(zeta_critical(1000.3)), 0.0,
            1e-9);
    {  // Riemann-Siegel against the Euler-Maclaurin reference path.
        const double t = 60.0;
        const cplx rot = std::exp(cplx(0.0, theta_full(t)));
        const double z_em = (rot * zeta_em(cplx(0.5, t))).real();
        s.close("Riemann-Siegel Z vs reference at t=60", hardy_z_rs(t), z_em,
                3e-7);
    }

    const ZeroTable tab = find_zeros(0.0, 100.0);
    s.close("zero count in (0,100]", (double)tab.ordinates.size(), 29.0, 0.0);
    if (tab.ordinates.size() >= 3) {
        s.close("first ordinate", tab.ordinates[0], 14.134725141734695, 1e-6);
        s.close("second ordinate", tab.ordinates[1], 21.022039638771555, 1e-6);
        s.close("third ordinate", tab.ordinates[2], 25.010857580145688, 1e-6);
    }
    {
        const double g1 = tab.ordinates.at(0);
        const double jump = s_of_t(g1 + 1e-3, tab) - s_of_t(g1 - 1e-3, tab);
        s.close("S jumps by 1 at a zero", jump, 1.0, 0.05);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double t = 20.0 + 79.0 * (i + 0.5) / 50.0;
            worst = std::max(worst, std::abs(s_of_t(t, tab)));
        }
        s.truth("S stays small at desk heights", worst < 1.5,
                fmt("max |S| sampled = %.6g", worst));
    }
    {
        namespace fs = std::filesystem;
        const fs::path p = fs::temp_directory_path() / "zh_verify_zeros.txt";
        save_zeros(tab, p);
        const ZeroTable back = load_zeros(p);
        fs::remove(p);
        double worst = 1e300;
        if (back.ordinates.size() == tab.ordinates.size()) {
            worst = 0.0;
            for (std::size_t i = 0; i < tab.ordinates.size(); ++i)
                worst = std::max(worst, std::abs(back.ordinates[i] -
                                                 tab.ordinates[i]));
        }
        s.truth("zero table save/load round trip",
                back.ordinates.size() == tab.ordinates.size() &&
                    worst <= 2e-9 && back.n_below == 0,
                fmt("count %zu vs %zu, max drift %.3g", back.ordinates.size(),
                    tab.ordinates.size(), worst));
    }
}

void suite_coeffs(Suite& s) {
    {  // Exact low-order values of the single-prime series at p=2, X=10:
       // orders 0..3 all lie under X, order 4 loses its 1/4 term, order 5
       // additionally loses 1/5.
        const auto loc = beta_local(1, 2, 10, 5);
        const double want[] = {1.0, 1.0, 1.0, 1.0, 0.75, 0.55};
        double worst = 0.0;
        for (int i = 0; i <= 5; ++i)
            worst = std::max(worst, std::abs(loc[i] - want[i]));
        s.close("single-prime series exact low orders", worst, 0.0, 1e-12);
    }
    const CoeffTable beta = build_beta(1, 10, 1000);
    {  // Where every prime power dividing n stays <= X the coefficient is d_1.
        double worst = 0.0;
        for (std::size_t i = 0; i < beta.n.size(); ++i) {
            uint64_t n = beta.n[i];
            bool capped = true;
            for (uint64_t p : {2, 3, 5, 7}) {
                uint64_t pw = 1;
                while (n % p == 0) n /= p, pw *= p;
                if (pw > 10) capped = false;
            }
            if (capped)
                worst = std::max(worst, std::abs(beta.coef[i] - 1.0));
        }
        s.close("beta matches d_1 under the prime-power cap", worst, 0.0,
                1e-12);
    }
    {
        const auto budget = truncation_budget(1e8, 2);
        const CoeffTable alpha = build_alpha(2, 10, budget, 500);
        const CoeffTable b2 = build_beta(2, 10, 500);
        double worst = 0.0;
        for (std::size_t i = 0; i < alpha.n.size(); ++i)
            worst = std::max(
                worst, std::abs(alpha.coef[i] - b2.entry(alpha.n[i])));
        s.close("alpha equals beta below the truncation order", worst, 0.0,
                1e-12);

        double excess = 0.0;
        const CoeffTable am2 = build_alpha(-2, 30, budget, 2000);
        for (std::size_t i = 0; i < am2.n.size(); ++i)
            excess = std::max(excess, std::abs(am2.coef[i]) -
                                          divisor_k(2, am2.n[i]));
        s.truth("alpha bounded by the divisor function", excess <= 1e-10,
                fmt("max |alpha| - d_2 = %.3g", excess));
    }
    {  // The reported tail bound dominates the mass the cap discarded.
        const CoeffTable small = build_beta(1, 10, 10000);
        const CoeffTable big = build_beta(1, 10, 1000000);
        long double discarded = 0.0L;
        for (std::size_t i = 0; i < big.n.size(); ++i)
            if (big.n[i] > small.n_max)
                discarded += (long double)big.coef[i] * big.coef[i] /
                             (long double)big.n[i];
        s.truth("tail bound dominates discarded mass",
                small.tail_bound >= (double)discarded,
                fmt("bound %.6g vs discarded %.6g", small.tail_bound,
                    (double)discarded));
    }
    {
        const cplx d0 = eval_dirichlet(beta, 0.0);
        long double direct = 0.0L;
        for (std::size_t i = 0; i < beta.n.size(); ++i)
            direct += (long double)beta.coef[i] /
                      std::sqrt((long double)beta.n[i]);
        s.close("Dirichlet evaluation at t=0 is the plain sum",
                std::abs(d0 - cplx((double)direct, 0.0)), 0.0, 1e-12);
    }
    {
        const double loose = rankin_tail_bound(1, 10, 10, 1.5);
        const double tight = rankin_tail_bound(1, 10, 20, 1.5);
        s.truth("Rankin bound positive and decreasing in the cutoff",
                loose > 0.0 && tight < loose,
                fmt("W0=10: %.6g, W0=20: %.6g", loose, tight));
    }
}

void suite_hybrid(Suite& s) {
    const PrimeSumPlan plan(100.0);
    {
        const cplx at0 = plan.eval(0.0);
        s.close("prime sum at t=0 attains its max", at0.real(), plan.max_abs(),
                1e-12);
        s.close("prime sum real at t=0", at0.imag(), 0.0, 1e-15);
    }
    {
        const double t = 50.7;
        const LogComplex p1 = euler_product_p(t, plan, 1.0);
        const cplx direct = std::exp(plan.eval(t));
        s.close("P is exp of the prime sum", std::abs(p1.value() - direct),
                0.0, 1e-12);
        const LogComplex p2 = euler_product_p(t, plan, 2.0);
        s.close("squaring doubles log|P|", p2.log_abs, 2.0 * p1.log_abs,
                1e-12);
    }
    {
        const double t = 1000.3, X = 30.0;
        const cplx lhs =
            euler_product_p(t, X, 1.0).value() * hadamard_z_quotient(t, X);
        const cplx z = zeta_critical(t);
        s.close("P times quotient-Z reproduces zeta",
                std::abs(lhs - z) / std::abs(z), 0.0, 1e-9);
    }
    const ZeroTable zeros = find_zeros(940.0, 1060.0);
    {
        const double r = hybrid_residual(1000.3, 30.0, zeros, 50.0);
        s.truth("model residual small at a desk sample", r < 0.5,
                fmt("residual %.6g", r));
        const auto dz = hadamard_z_direct(1000.3, 30.0, zeros, 50.0);
        s.truth("direct Z finite with a reported tail",
                std::isfinite(std::abs(dz.value)) && dz.tail_estimate >= 0.0,
                fmt("|Z| = %.6g, tail %.3g", std::abs(dz.value),
                    dz.tail_estimate));
    }
    {
        const HybridPoint hp = hybrid_point(1000.3, 30.0, &zeros, 50.0);
        s.close("bundle: P x quotient-Z equals zeta",
                std::abs(hp.p_value * hp.z_quotient - hp.zeta), 0.0, 1e-9);
        s.truth("bundle carries the direct Z when zeros are supplied",
                hp.z_direct.has_value());
    }
    s.throws<std::domain_error>(
        "strict range rejects X beyond t^(1/3)",
        [&] { hybrid_residual(1000.3, 150.0, zeros, 50.0, true); });
}

void suite_ladder(Suite& s) {
    {
        const cplx z(1.3, -2.1);
        const cplx d = truncated_exp(z, 40) - std::exp(z);
        s.close("truncated exponential converged at order 40", std::abs(d),
                0.0, 1e-13);
    }
    const LadderParams lad = build_ladder(1e6, 2.0, 0.5);
    {
        bool mono = lad.J >= 0;
        for (int j = 0; j + 1 <= lad.J; ++j)
            mono = mono && lad.levels[j].theta < lad.levels[j + 1].theta;
        s.truth("ladder levels exist with increasing exponents", mono,
                fmt("J = %d", lad.J));
        s.close("bottom block starts at the lower cutoff", lad.level_lo(0),
                2.0, 0.0);
        double worst = 0.0;
        for (int j = 0; j <= lad.J; ++j)
            worst = std::max(worst,
                             std::abs(lad.levels[j].Tj -
                                      std::exp(lad.levels[j].theta *
                                               std::log(1e6))));
        s.close("rung values match their exponents", worst, 0.0, 1e-9);
    }
    {
        const int j = lad.J;
        const double w_small = weight_w(2, j, lad);
        const uint64_t near_top = (uint64_t)lad.levels[j].Tj;
        const double w_large = weight_w(near_top, j, lad);
        s.truth("block weight decays from ~1 to ~0", w_small > 0.5 &&
                    w_large < 0.2 && w_small <= 1.0 && w_large >= 0.0,
                fmt("w(2) = %.6g, w(near top) = %.6g", w_small, w_large));
    }
    {  // Unweighted block sum against an inline sieve oracle.
        const double t = 1.0;
        const cplx got = block_prime_sum(t, 0, std::nullopt, lad);
        const auto pt = sieve_primes((uint64_t)lad.levels[0].Tj + 1);
        cplx want = 0.0;
        for (uint64_t p : pt.primes) {
            if ((double)p <= lad.level_lo(0) || (double)p > lad.levels[0].Tj)
                continue;
            const double lp = std::log((double)p);
            want += std::exp(cplx(-0.5 * lp, -t * lp));
        }
        s.close("block prime sum matches the sieve oracle",
                std::abs(got - want), 0.0, 1e-12);
    }
    {
        const cplx n00 = block_poly_n(1.0, 0, std::nullopt, 1.0, lad);
        const cplx p0 = block_prime_sum(1.0, 0, std::nullopt, lad);
        // Short block: the truncation order is far past |P|, so N ~ exp(P).
        s.close("block polynomial is the truncated exponential",
                std::abs(n00 - std::exp(p0)), 0.0, 1e-10);
    }
    s.close("small-prime tail polynomial trivial below e^2",
            std::abs(tail_poly_m(1.0, 1.0, 5.0) - cplx(1.0, 0.0)), 0.0, 0.0);
    {
        const double q0 = majorant_q_value(0.0, 2.0, 1.0);
        const double q1 = majorant_q_value(1.0, 2.0, 1.0);
        const double q2 = majorant_q_value(2.0, 2.0, 1.0);
        s.truth("majorant vanishes at 0 and grows", q0 == 0.0 && q1 < q2,
                fmt("Q(0)=%.3g Q(1)=%.6g Q(2)=%.6g", q0, q1, q2));
    }
    {
        bool ok = false;
        double min_kappa = 0.0;
        try {
            build_ladder(100.0, 1.0, 1e-9);
        } catch (const InfeasibleError& e) {
            ok = true;
            min_kappa = e.min_feasible_kappa;
        }
        const double ll = std::log(std::log(100.0));
        s.truth("infeasible kappa rejected with the feasibility floor",
                ok && std::abs(min_kappa - 1.0 / (ll * ll)) < 1e-12,
                fmt("min feasible kappa %.12g", min_kappa));
    }
}

void suite_moments(Suite& s) {
    {
        GridSpec g{0.0, 1.0, 0.25, {}};
        const auto pts = g.points();
        s.truth("midpoint grid", pts.size() == 4 && pts[0] == 0.125,
                fmt("%zu points", pts.size()));
        g.exclusions.push_back({0.3, 0.7});
        s.close("exclusions drop interior points", (double)g.points().size(),
                2.0, 0.0);
    }
    {
        std::vector<double> xs(1000);
        for (std::size_t i = 0; i < xs.size(); ++i)
            xs[i] = std::sin(0.1 * (double)i);
        const double a = bootstrap_std_error(xs);
        const double b = bootstrap_std_error(xs);
        s.truth("bootstrap deterministic and positive", a == b && a > 0.0,
                fmt("std error %.6g", a));
    }
    {
        const GridSpec g{0.0, 1.0, 0.1, {}};
        const auto est = integrate_moment([](double) { return 2.5; }, 2.0, g,
                                          "constant");
        s.close("moment of a constant", est.value, 6.25, 1e-12);
    }
    {
        const GridSpec g{1000.0, 1002.0, 0.1, {}};
        const auto rep = splitting_report(0.0, 10.0, g);
        s.close("zeroth moment splits exactly", rep.ratio, 1.0, 0.0);
    }
    s.close("Euler-product moment prediction at k=1, X=10",
            prediction_p(1.0, 10.0), kExpGamma * std::log(10.0), 1e-9);
    s.close("Z-moment prediction algebraic identity",
            prediction_z(2, 37.0, 1e5) * 12.0 *
                std::pow(kExpGamma * std::log(37.0) / std::log(1e5), 4.0),
            1.0, 1e-12);
    {
        const GridSpec g{1000.0, 1010.0, 0.1, {}};
        const auto t0 = tail_measure(0.0, 10.0, TailPart::real, g);
        const auto t1 = tail_measure(1.0, 10.0, TailPart::real, g);
        const auto t9 = tail_measure(1e6, 10.0, TailPart::real, g);
        s.truth("tail fractions: 1 at V=0, nonincreasing, 0 past the max",
                t0.fraction == 1.0 && t1.fraction <= t0.fraction &&
                    t9.fraction == 0.0,
                fmt("%.4g >= %.4g >= %.4g", t0.fraction, t1.fraction,
                    t9.fraction));
        const GridSpec wide{1000.0, 1100.0, 0.05, {}};
        const auto cb = chebyshev_moment_bound(1, 10.0, wide);
        s.truth("short prime-sum second moment near its diagonal bound",
                cb.empirical <= 1.2 * cb.bound && cb.bound > 0.0,
                fmt("empirical %.6g vs bound %.6g", cb.empirical, cb.bound));
        const auto scan = prime_sum_max_scan(g, 10.0);
        s.truth("prime-sum maxima under the unconditional ceiling",
                !scan.in_hypothesis &&
                    scan.empirical_max_re <= scan.unconditional &&
                    scan.empirical_max_im <= scan.unconditional,
                fmt("max re %.4g, im %.4g, ceiling %.4g",
                    scan.empirical_max_re, scan.empirical_max_im,
                    scan.unconditional));
    }
    {
        const cplx k0 = st_kernel(0.0, std::log(10.0));
        s.close("convolution kernel limit at 0",
                std::abs(k0 - cplx(0.0, std::log(10.0))), 0.0, 0.0);
        const cplx kp = st_kernel(0.3, std::log(10.0));
        const cplx km = st_kernel(-0.3, std::log(10.0));
        s.close("kernel mirror symmetry", std::abs(km + std::conj(kp)), 0.0,
                1e-14);
    }
    {
        std::vector<double> raw = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(3.0)};
        s.close("diagonal of a two-term polynomial", mv_diagonal(raw),
                5.0 / 6.0, 1e-15);
    }
    {
        const auto sm = second_moment_arith(2.0, uint64_t(1) << 20, true);
        s.close("second-moment product vs direct sum at X=2",
                (sm.product - sm.direct) / sm.product, 0.0, 1e-9);
        const auto fm = fourth_moment_arith(10.0);
        s.truth("fourth-moment factor wiring",
                std::abs(fm.combined - fm.numerator * fm.denominator) <=
                        1e-12 * std::abs(fm.combined) &&
                    fm.numerator > 0.5 && fm.numerator < 1.5,
                fmt("numerator %.6g, denominator %.6g", fm.numerator,
                    fm.denominator));
    }
    {
        const ZeroTable tab = find_zeros(1950.0, 2050.0);
        const auto st = st_identity_check(2000.0, 100.0, 40.0, tab);
        s.truth("S(t)-convolution matches the prime sum within budget",
                st.diff <= 10.0 * st.error_budget,
                fmt("diff %.6g vs budget %.6g", st.diff, st.error_budget));
    }
}

using SuiteFn = void (*)(Suite&);

struct Entry {
    const char* name;
    SuiteFn fn;
};

constexpr Entry kSuites[] = {
    {"arith", suite_arith},     {"special", suite_special},
    {"zeta", suite_zeta},       {"coeffs", suite_coeffs},
    {"hybrid", suite_hybrid},   {"ladder", suite_ladder},
    {"moments", suite_moments},
};

void run_into(Suite& s, SuiteFn fn) {
    try {
        fn(s);
    } catch (const std::exception& e) {
        s.add("suite ran to completion", false,
              fmt("unexpected exception: %s", e.what()));
    }
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& e : kSuites) out.push_back(e.name);
    out.push_back("all");
    return out;
}

SuiteReport run_suite(const std::string& suite) {
    Suite s(suite);
    if (suite == "all") {
        for (const auto& e : kSuites) run_into(s, e.fn);
        return s.rep;
    }
    for (const auto& e : kSuites) {
        if (suite == e.name) {
            run_into(s, e.fn);
            return s.rep;
        }
    }
    std::string msg = "unknown suite '" + suite + "'; valid:";
    for (const auto& n : suite_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

}  // namespace zh
