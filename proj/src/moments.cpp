// Moment statistics on the critical line.  Everything grid-based samples at
// midpoints and reduces with pairwise sums so results are deterministic for
// a fixed grid; empirical uncertainties come from a contiguous-block
// bootstrap with a fixed seed.  The arithmetic factors of the second and
// fourth moments are evaluated both as exact local Euler products and (for
// the second) as a brute-force gcd double sum over the stored coefficient
// table, so the product identities are checked against an independent path.
#include "zetahybrid/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "zetahybrid/arith.hpp"
#include "zetahybrid/hybrid.hpp"
#include "zetahybrid/special.hpp"

namespace zh {

namespace {

constexpr int kBootstrapBlocks = 50;
constexpr int kBootstrapResamples = 200;
constexpr uint64_t kBootstrapSeed = 20260823ULL;
// Warn when the grid step exceeds this over log(t_end): zeta-sized
// integrands oscillate on the scale 2pi/log t and need a few samples per
// cycle.
constexpr double kCoarseFactor = 0.25;

// Means of contiguous blocks, sizes as equal as integer division allows.
std::vector<double> block_means(std::span<const double> xs, int nblocks) {
    const std::size_t n = xs.size();
    std::vector<double> mu((std::size_t)nblocks);
    for (int b = 0; b < nblocks; ++b) {
        const std::size_t lo = n * (std::size_t)b / (std::size_t)nblocks;
        const std::size_t hi = n * ((std::size_t)b + 1) / (std::size_t)nblocks;
        mu[(std::size_t)b] = pairwise_sum(xs.subspan(lo, hi - lo)) /
                             (double)(hi - lo);
    }
    return mu;
}

// Standard deviation of a statistic of per-column resampled block means.
// All columns share one resampled block index per draw, so statistics of
// several jointly sampled series (e.g. a ratio of means) are resampled
// consistently.
double joint_bootstrap_se(
    const std::vector<std::vector<double>>& col_block_means,
    const std::function<double(std::span<const double>)>& stat) {
    const std::size_t ncols = col_block_means.size();
    const int nb = (int)col_block_means[0].size();
    if (nb < 2) return 0.0;
    std::mt19937_64 rng(kBootstrapSeed);
    std::uniform_int_distribution<int> pick(0, nb - 1);
    std::vector<double> stats((std::size_t)kBootstrapResamples);
    std::vector<double> acc(ncols);
    for (int r = 0; r < kBootstrapResamples; ++r) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int b = 0; b < nb; ++b) {
            const std::size_t j = (std::size_t)pick(rng);
            for (std::size_t c = 0; c < ncols; ++c)
                acc[c] += col_block_means[c][j];
        }
        for (std::size_t c = 0; c < ncols; ++c) acc[c] /= (double)nb;
        stats[(std::size_t)r] = stat(acc);
    }
    const double mean = pairwise_sum(stats) / (double)stats.size();
    double ss = 0.0;
    for (double s : stats) ss += (s - mean) * (s - mean);
    return std::sqrt(ss / (double)(stats.size() - 1));
}

double mean_of(std::span<const double> xs) {
    return pairwise_sum(xs) / (double)xs.size();
}

int blocks_for(std::size_t n) {
    return (int)std::min<std::size_t>((std::size_t)kBootstrapBlocks, n);
}

std::vector<double> grid_points_nonempty(const GridSpec& grid,
                                         const char* who) {
    auto pts = grid.points();
    if (pts.empty())
        throw std::invalid_argument(std::string(who) +
                                    ": grid contains no sample points");
    return pts;
}

}  // namespace

void GridSpec::validate() const {
    if (!std::isfinite(t_start) || !std::isfinite(t_end) ||
        !std::isfinite(step))
        throw std::invalid_argument("GridSpec: non-finite bounds or step");
    if (!(step > 0.0))
        throw std::invalid_argument("GridSpec: step must be positive");
    if (!(t_end > t_start))
        throw std::invalid_argument("GridSpec: t_end must exceed t_start");
    for (const auto& [lo, hi] : exclusions)
        if (!(lo <= hi))
            throw std::invalid_argument("GridSpec: exclusion interval with lo > hi");
}

bool GridSpec::too_coarse() const {
    const double lt = std::log(std::max(t_end, 3.0));
    return step > kCoarseFactor / lt;
}

std::vector<double> GridSpec::points() const {
    validate();
    std::vector<double> pts;
    pts.reserve((std::size_t)((t_end - t_start) / step) + 1);
    for (std::size_t i = 0;; ++i) {
        const double t = t_start + ((double)i + 0.5) * step;
        if (!(t < t_end)) break;
        bool excluded = false;
        for (const auto& [lo, hi] : exclusions)
            if (t >= lo && t <= hi) {
                excluded = true;
                break;
            }
        if (!excluded) pts.push_back(t);
    }
    return pts;
}

double bootstrap_std_error(std::span<const double> samples) {
    if (samples.size() < 2) return 0.0;
    std::vector<std::vector<double>> cols;
    cols.push_back(block_means(samples, blocks_for(samples.size())));
    return joint_bootstrap_se(
        cols, [](std::span<const double> m) { return m[0]; });
}

MomentEstimate integrate_moment(const std::function<double(double)>& abs_f,
                                double two_k, const GridSpec& grid,
                                const std::string& integrand_id,
                                bool strict) {
    grid.validate();
    if (!std::isfinite(two_k))
        throw std::domain_error("integrate_moment: exponent must be finite");
    MomentEstimate est;
    est.grid = grid;
    est.integrand_id = integrand_id;
    est.coarse_warning = grid.too_coarse();
    if (est.coarse_warning && strict)
        throw std::invalid_argument(
            "integrate_moment: grid step exceeds 0.25/log(t_end) (strict)");
    const auto pts = grid_points_nonempty(grid, "integrate_moment");
    const std::size_t n = pts.size();
    std::vector<double> samples(n);
    parallel_for(n, [&](std::size_t i) {
        samples[i] = std::pow(abs_f(pts[i]), two_k);
    });
    est.n_points = n;
    est.value = mean_of(samples);
    est.std_error = bootstrap_std_error(samples);
    return est;
}

double prediction_p(double k, double X) {
    if (!(k > -0.5))
        throw std::domain_error("prediction_p: requires k > -1/2");
    if (!(X >= 2.0))
        throw std::domain_error("prediction_p: requires X >= 2");
    const double a = arithmetic_factor_a(k).value;
    return a * std::pow(kExpGamma * std::log(X), k * k);
}

double prediction_z(int k, double X, double T) {
    if (k < 0)
        throw std::domain_error("prediction_z: requires integer k >= 0");
    if (!(X >= 2.0))
        throw std::domain_error("prediction_z: requires X >= 2");
    if (!(std::log(T) > 1.0))
        throw std::domain_error("prediction_z: requires T > e");
    const double base = std::log(T) / (kExpGamma * std::log(X));
    return rmt_factor_g(k) * std::pow(base, (double)k * (double)k);
}

SplittingReport splitting_report(double k, double X, const GridSpec& grid,
                                 const ZeroTable* zeros, double window,
                                 bool strict) {
    grid.validate();
    if (!(k >= 0.0) || !std::isfinite(k))
        throw std::domain_error("splitting_report: requires k >= 0");
    PrimeSumPlan plan(X);
    SplittingReport rep;
    rep.k = k;
    rep.X = X;
    rep.grid = grid;
    rep.coarse_warning = grid.too_coarse();
    if (rep.coarse_warning && strict)
        throw std::invalid_argument(
            "splitting_report: grid step exceeds 0.25/log(t_end) (strict)");
    const auto pts = grid_points_nonempty(grid, "splitting_report");
    const std::size_t n = pts.size();
    std::vector<double> sz(n), sp(n), sq(n);
    std::vector<double> sd;
    std::optional<SmoothingKernel> kernel;
    if (zeros) {
        sd.resize(n);
        kernel.emplace(X);
    }
    const double tk = 2.0 * k;
    parallel_for(n, [&](std::size_t i) {
        const double t = pts[i];
        const double az = std::abs(hardy_z(t));      // |zeta(1/2+it)|
        const double lp = plan.eval(t).real();       // log |P_X(1/2+it)|
        const double ap = std::exp(lp);
        sz[i] = std::pow(az, tk);
        sp[i] = std::pow(ap, tk);
        sq[i] = std::pow(az / ap, tk);
        if (zeros) {
            const DirectZ dz = hadamard_z_direct(t, *kernel, *zeros, window);
            sd[i] = std::pow(ap * std::abs(dz.value), tk);
        }
    });
    rep.n_points = n;
    rep.m_pz = mean_of(sz);
    rep.m_p = mean_of(sp);
    rep.m_z = mean_of(sq);
    rep.m_pz_err = bootstrap_std_error(sz);
    rep.m_p_err = bootstrap_std_error(sp);
    rep.m_z_err = bootstrap_std_error(sq);
    rep.ratio = rep.m_pz / (rep.m_p * rep.m_z);
    const int nb = blocks_for(n);
    std::vector<std::vector<double>> cols;
    cols.push_back(block_means(sz, nb));
    cols.push_back(block_means(sp, nb));
    cols.push_back(block_means(sq, nb));
    rep.ratio_err = joint_bootstrap_se(cols, [](std::span<const double> m) {
        return m[0] / (m[1] * m[2]);
    });
    rep.pred_p = prediction_p(k, X);
    const double kr = std::round(k);
    // pred_z stays 0 when k is not a nonnegative integer or T <= e.
    if (std::abs(k - kr) < 1e-12 && std::log(grid.t_end) > 1.0)
        rep.pred_z = prediction_z((int)kr, X, grid.t_end);
    if (zeros) rep.m_pz_direct = mean_of(sd);
    return rep;
}

TailMeasureReport tail_measure(double V, double X, TailPart part,
                               const GridSpec& grid) {
    if (!(V >= 0.0))
        throw std::domain_error("tail_measure: requires V >= 0");
    grid.validate();
    PrimeSumPlan plan(X);
    const auto pts = grid_points_nonempty(grid, "tail_measure");
    const std::size_t n = pts.size();
    std::vector<double> hit(n);
    parallel_for(n, [&](std::size_t i) {
        const cplx s = plan.eval(pts[i]);
        bool over = false;
        switch (part) {
            case TailPart::real: over = std::abs(s.real()) > V; break;
            case TailPart::imag: over = std::abs(s.imag()) > V; break;
            case TailPart::both:
                over = std::abs(s.real()) > V || std::abs(s.imag()) > V;
                break;
        }
        hit[i] = over ? 1.0 : 0.0;
    });
    TailMeasureReport rep;
    rep.V = V;
    rep.part = part;
    rep.X = X;
    rep.grid = grid;
    rep.n_points = n;
    rep.fraction = mean_of(hit);
    return rep;
}

ChebyshevMomentBound chebyshev_moment_bound(int m, double X,
                                            const GridSpec& grid) {
    if (m < 0 || m > 6)
        throw std::domain_error(
            "chebyshev_moment_bound: requires integer 0 <= m <= 6");
    if (!(X >= 2.0))
        throw std::domain_error("chebyshev_moment_bound: requires X >= 2");
    grid.validate();
    const PrimeTable primes = sieve_primes((uint64_t)X);
    std::vector<double> amp, lp;
    double inv_sum = 0.0;
    for (uint64_t p : primes.primes) {
        amp.push_back(1.0 / std::sqrt((double)p));
        lp.push_back(std::log((double)p));
        inv_sum += 1.0 / (double)p;
    }
    const auto pts = grid_points_nonempty(grid, "chebyshev_moment_bound");
    const std::size_t n = pts.size();
    std::vector<double> samples(n);
    parallel_for(n, [&](std::size_t i) {
        const double t = pts[i];
        cplx acc = 0.0;
        for (std::size_t j = 0; j < amp.size(); ++j)
            acc += amp[j] * std::polar(1.0, -t * lp[j]);
        samples[i] = std::pow(std::norm(acc), (double)m);
    });
    ChebyshevMomentBound rep;
    rep.m = m;
    rep.X = X;
    rep.n_points = n;
    rep.empirical = mean_of(samples);
    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= (double)i;
    rep.bound = fact * std::pow(inv_sum, (double)m);
    return rep;
}

double mv_diagonal(const CoeffTable& table) {
    std::vector<double> terms(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        terms[i] = table.coef[i] * table.coef[i] / (double)table.n[i];
    return pairwise_sum(terms);
}

double mv_diagonal(std::span<const double> coefficients) {
    std::vector<double> terms(coefficients.size());
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        terms[i] = coefficients[i] * coefficients[i];
    return pairwise_sum(terms);
}

SecondMomentArith second_moment_arith(double X, uint64_t n_max,
                                      bool with_direct) {
    if (!(X >= 2.0))
        throw std::domain_error("second_moment_arith: requires X >= 2");
    if (n_max < 1)
        throw std::domain_error("second_moment_arith: requires n_max >= 1");
    SecondMomentArith out;
    out.X = X;
    out.n_max = n_max;

    // Exact local product: F_p = sum_{m,n} b(p^m) b(p^n) p^{-max(m,n)},
    // since gcd(p^m, p^n)/(p^m p^n) = p^{-max(m,n)}.  The series order is
    // chosen so p^{-order} is far below double precision.
    const PrimeTable primes = sieve_primes((uint64_t)X);
    long double product = 1.0L;
    for (uint64_t p : primes.primes) {
        const int orders =
            std::max(8, (int)std::ceil(64.0 / std::log2((double)p)));
        const std::vector<double> b = beta_local(-1.0, p, X, orders);
        long double fp = 0.0L;
        for (int mi = 0; mi <= orders; ++mi) {
            if (b[(std::size_t)mi] == 0.0) continue;
            for (int ni = 0; ni <= orders; ++ni) {
                const int mx = std::max(mi, ni);
                fp += (long double)b[(std::size_t)mi] *
                      (long double)b[(std::size_t)ni] *
                      std::pow((long double)p, (long double)(-mx));
            }
        }
        product *= fp;
    }
    out.product = (double)product;

    // Brute force over the stored table: sum b(m) b(n) gcd(m,n)/(mn).
    if (!with_direct) {
        out.direct = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const CoeffTable tab = build_beta(-1.0, X, n_max);
    const std::size_t N = tab.size();
    long double direct = 0.0L;
    for (std::size_t i = 0; i < N; ++i) {
        const long double ci = tab.coef[i];
        const uint64_t ni = tab.n[i];
        direct += ci * ci / (long double)ni;
        for (std::size_t j = i + 1; j < N; ++j) {
            const uint64_t nj = tab.n[j];
            const uint64_t g = std::gcd(ni, nj);
            direct += 2.0L * ci * (long double)tab.coef[j] *
                      ((long double)g / ((long double)ni * (long double)nj));
        }
    }
    out.direct = (double)direct;
    return out;
}

FourthMomentArith fourth_moment_arith(double X) {
    if (!(X >= 2.0))
        throw std::domain_error("fourth_moment_arith: requires X >= 2");
    // Per-factor truncation: powers p^m <= 10^6 inside each local sum.
    constexpr double kFactorCap = 1e6;
    const PrimeTable primes = sieve_primes((uint64_t)X);
    long double num = 1.0L, den = 1.0L;
    for (uint64_t p : primes.primes) {
        int mmax = 0;
        for (double pm = (double)p; pm <= kFactorCap; pm *= (double)p)
            ++mmax;
        const std::vector<double> b = beta_local(-2.0, p, X, mmax);
        // c(j) = sum_{m+n=j} beta_{-2}(p^m) d_2(p^n), d_2(p^n) = n + 1.
        std::vector<long double> c((std::size_t)(2 * mmax + 1), 0.0L);
        for (int mi = 0; mi <= mmax; ++mi)
            for (int ni = 0; ni <= mmax; ++ni)
                c[(std::size_t)(mi + ni)] +=
                    (long double)b[(std::size_t)mi] * (long double)(ni + 1);
        long double local = 0.0L;
        long double pj = 1.0L;
        for (int j = 0; j <= 2 * mmax; ++j) {
            local += c[(std::size_t)j] * c[(std::size_t)j] / pj;
            pj *= (long double)p;
        }
        num *= local;
        const long double r = 1.0L / (long double)p;
        const long double om = 1.0L - r;
        den *= om * om * om * om / (1.0L - r * r);
    }
    FourthMomentArith out;
    out.X = X;
    out.numerator = (double)num;
    out.denominator = (double)den;
    out.combined = (double)(num * den);
    return out;
}

cplx st_kernel(double v, double log_x) {
    if (!(log_x > 0.0))
        throw std::domain_error("st_kernel: requires log X > 0");
    const double a = v * log_x;
    if (std::abs(a) < 0.25) {
        // (1 - e^{-ia})/v = log X * [ (a/2 - a^3/24 + a^5/720 - a^7/40320)
        //                           + i (1 - a^2/6 + a^4/120 - a^6/5040) ]
        // with the next omitted terms below 5e-11 at |a| = 1/4.
        const double a2 = a * a;
        const double re =
            a * (0.5 - a2 * (1.0 / 24.0 -
                             a2 * (1.0 / 720.0 - a2 * (1.0 / 40320.0))));
        const double im =
            1.0 - a2 * (1.0 / 6.0 -
                        a2 * (1.0 / 120.0 - a2 * (1.0 / 5040.0)));
        return cplx(re * log_x, im * log_x);
    }
    return cplx(1.0 - std::cos(a), std::sin(a)) / v;
}

StIdentityReport st_identity_check(double t, double X, double Y,
                                   const ZeroTable& zeros) {
    if (!(t > 15.2))
        throw std::domain_error(
            "st_identity_check: requires t > e^e (the remainder display "
            "needs log log log t)");
    if (!(X >= 2.0))
        throw std::domain_error("st_identity_check: requires X >= 2");
    if (!(Y > 0.0) || !(Y <= t / 2.0))
        throw std::domain_error("st_identity_check: requires 0 < Y <= t/2");
    if (zeros.t_lo > t - Y || zeros.t_cov < t + Y)
        throw CoverageError(
            "st_identity_check: zero table does not cover [t-Y, t+Y]");

    const double lx = std::log(X);

    // Integration panels: split at every zero ordinate (S jumps there) and
    // at t itself, then subdivide so the kernel phase a = (t-y) log X moves
    // by at most ~1 per panel; 24-point Gauss-Legendre per panel.
    std::vector<double> bp;
    bp.push_back(t - Y);
    for (double g : zeros.ordinates)
        if (g > t - Y && g < t + Y) bp.push_back(g);
    bp.push_back(t);
    bp.push_back(t + Y);
    std::sort(bp.begin(), bp.end());
    const double max_len = std::min(1.0, 8.0 / lx);
    static const GaussLegendre gl = gauss_legendre(24);
    cplx acc = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double y0 = bp[i], y1 = bp[i + 1];
        if (!(y1 - y0 > 1e-12)) continue;
        const int nsub = (int)std::ceil((y1 - y0) / max_len);
        for (int s = 0; s < nsub; ++s) {
            const double a = y0 + (y1 - y0) * (double)s / (double)nsub;
            const double b = y0 + (y1 - y0) * (double)(s + 1) / (double)nsub;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                const double y = mid + half * gl.nodes[q];
                acc += half * gl.weights[q] * s_of_t(y, zeros) *
                       st_kernel(t - y, lx);
            }
        }
    }

    StIdentityReport rep;
    rep.t = t;
    rep.X = X;
    rep.Y = Y;
    rep.lhs = prime_sum(t, X);
    rep.rhs = acc;
    rep.diff = std::abs(rep.lhs - rep.rhs);
    // Remainder budget with all implied constants set to 1 and T = t:
    // sqrt(X)(log X + log_3 t / log X)/Y
    //   + (log t/log_2 t)(Y^{-1/2} + [X > log t] X^{1/log_2 t}/Y).
    const double l1 = std::log(t);
    const double l2 = std::log(l1);
    const double l3 = std::log(l2);
    rep.error_budget =
        std::sqrt(X) * (lx + l3 / lx) / Y +
        (l1 / l2) * (1.0 / std::sqrt(Y) +
                     (X > l1 ? std::pow(X, 1.0 / l2) / Y : 0.0));
    return rep;
}

PrimeSumMaxScan prime_sum_max_scan(const GridSpec& grid, double X) {
    grid.validate();
    if (!(std::log(grid.t_end) > 1.0))
        throw std::domain_error("prime_sum_max_scan: t_end must exceed e");
    PrimeSumPlan plan(X);
    const auto pts = grid_points_nonempty(grid, "prime_sum_max_scan");
    const std::size_t n = pts.size();
    std::vector<double> re(n), im(n);
    parallel_for(n, [&](std::size_t i) {
        const cplx s = plan.eval(pts[i]);
        re[i] = std::abs(s.real());
        im[i] = std::abs(s.imag());
    });
    PrimeSumMaxScan rep;
    rep.X = X;
    rep.n_points = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (re[i] > rep.empirical_max_re) {
            rep.empirical_max_re = re[i];
            rep.t_at_max_re = pts[i];
        }
        if (im[i] > rep.empirical_max_im) {
            rep.empirical_max_im = im[i];
            rep.t_at_max_im = pts[i];
        }
    }
    const double lt = std::log(grid.t_end);
    const double llt = std::log(lt);
    rep.rh_bound_re = 0.5 *
                      (std::log(std::sqrt(X) / lt) +
                       4.0 * std::log(std::log(X))) *
                      lt / llt;
    rep.rh_bound_im = (2.0 / kPi) * rep.rh_bound_re;
    rep.unconditional = 2.0 * std::sqrt(X) / std::log(X);
    rep.in_hypothesis = X >= 2.0 * lt * lt;
    return rep;
}

}  // namespace zh
