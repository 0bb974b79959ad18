// Block ladder: level construction, block prime sums, truncated-exponential
// block polynomials, the small-prime tail polynomial, and the large-deviation
// majorant.  Level geometry is pure arithmetic on logs; only block evaluation
// touches primes, and only when T_i fits inside the sieve capacity.

#include "zetahybrid/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

namespace zh {

namespace {

using lcplx = std::complex<long double>;

// Desk-mode blocks sieve their primes on demand; anything larger must stay
// in log space.
constexpr double kLadderSieveCap = 1e8;

// Truncation orders beyond this would loop forever; they only arise when a
// beyond-double-range ladder is mistakenly fed to a numeric evaluator.
constexpr double kMaxOrder = 1e7;

const PrimeTable& cached_primes(uint64_t need) {
    thread_local std::shared_ptr<PrimeTable> cache;
    if (!cache || cache->limit < need)
        cache = std::make_shared<PrimeTable>(sieve_primes(need));
    return *cache;
}

void check_level(const LadderParams& params, int i, const char* who) {
    if (i < 0 || i > params.J || i >= (int)params.levels.size())
        throw std::out_of_range(std::string(who) + ": level index out of range");
}

LadderParams build_from_ll(double ll_T, double log_T, double A, double kappa) {
    if (!(ll_T >= std::log(std::log(100.0))))
        throw std::invalid_argument("build_ladder: requires T >= 100");
    if (!(A >= 1.0))
        throw std::invalid_argument("build_ladder: requires A >= 1");
    if (!(kappa > 0) || !std::isfinite(kappa))
        throw std::invalid_argument("build_ladder: kappa must be positive");

    const double min_kappa = 1.0 / (ll_T * ll_T);
    // J is the largest integer with e^J <= kappa * (log log T)^2.
    const double target = std::log(kappa) + 2.0 * std::log(ll_T);
    if (target < -1e-9)
        throw InfeasibleError(
            "build_ladder: kappa below 1/(log log T)^2 leaves no level",
            min_kappa);
    const int J = std::max(0, (int)std::floor(target + 1e-9));

    LadderParams params;
    params.log_T = log_T;
    params.ll_T = ll_T;
    params.A = A;
    params.kappa = kappa;
    params.J = J;
    params.levels.resize(J + 1);
    for (int j = 0; j <= J; ++j) {
        LadderLevel& lv = params.levels[j];
        lv.theta = std::exp((double)j) / (ll_T * ll_T);
        lv.ell = std::pow(lv.theta, -0.75);
        lv.log_Tj = lv.theta * log_T;
        lv.Tj = lv.log_Tj > 709.0 ? HUGE_VAL : std::exp(lv.log_Tj);
    }
    if (std::isfinite(params.levels[0].Tj) && !(A < params.levels[0].Tj))
        throw std::invalid_argument(
            "build_ladder: A must lie below the first rung T_0");
    return params;
}

// Primes for block i, from the caller's table or a thread-local sieve.
const PrimeTable& block_table(const LadderParams& params, int i,
                              const PrimeTable* user) {
    const double hi = params.levels[i].Tj;
    if (!(hi <= kLadderSieveCap))
        throw CapacityError("block prime range exceeds sieve capacity");
    const uint64_t need = std::max<uint64_t>(2, (uint64_t)hi);
    if (user) {
        if (user->limit < need)
            throw CoverageError("supplied prime table does not reach T_i");
        return *user;
    }
    return cached_primes(need);
}

}  // namespace

double LadderParams::level_lo(int i) const {
    return i == 0 ? A : levels.at(i - 1).Tj;
}

double LadderParams::level_lo_log(int i) const {
    return i == 0 ? std::log(A) : levels.at(i - 1).log_Tj;
}

LadderParams build_ladder(double T, double A, double kappa) {
    if (!(T >= 100.0))
        throw std::invalid_argument("build_ladder: requires T >= 100");
    return build_from_ll(std::log(std::log(T)), std::log(T), A, kappa);
}

LadderParams build_ladder_log(double log_T, double A, double kappa) {
    if (!(log_T >= std::log(100.0)))
        throw std::invalid_argument("build_ladder: requires T >= 100");
    return build_from_ll(std::log(log_T), log_T, A, kappa);
}

LadderParams build_ladder_ll(double ll_T, double A, double kappa) {
    const double log_T = ll_T > 709.0 ? HUGE_VAL : std::exp(ll_T);
    return build_from_ll(ll_T, log_T, A, kappa);
}

double weight_w(uint64_t p, int j, const LadderParams& params) {
    check_level(params, j, "weight_w");
    if (p < 2) throw std::invalid_argument("weight_w: p must be >= 2");
    const double log_Tj = params.levels[j].log_Tj;
    const double lp = std::log((double)p);
    if (!std::isfinite(log_Tj)) return 1.0;  // T_j beyond double range
    if (lp > log_Tj + 1e-12 * std::max(1.0, log_Tj))
        throw std::domain_error("weight_w: p exceeds T_j");
    const double r = std::min(lp / log_Tj, 1.0);
    return std::exp(-r) * (1.0 - r);
}

cplx truncated_exp(cplx z, int order) {
    if (order < 0)
        throw std::invalid_argument("truncated_exp: order must be >= 0");
    const lcplx lz(z.real(), z.imag());
    const long double nz = std::abs(lz);
    lcplx term = 1, acc = 1;
    for (int m = 1; m <= order; ++m) {
        term *= lz / (long double)m;
        acc += term;
        // Once past the hump the tail is geometric with ratio < 1/2; stop
        // when it can no longer move the accumulated value.
        if ((long double)m > 2 * nz && std::abs(term) < 1e-30L * std::abs(acc))
            break;
    }
    return cplx((double)acc.real(), (double)acc.imag());
}

cplx block_prime_sum(double t, int i, std::optional<int> j,
                     const LadderParams& params, const PrimeTable* primes) {
    check_level(params, i, "block_prime_sum");
    if (j) {
        check_level(params, *j, "block_prime_sum");
        if (i > *j)
            throw std::domain_error(
                "block_prime_sum: weighted blocks require i <= j");
    }
    const PrimeTable& tab = block_table(params, i, primes);
    const double lo = params.level_lo(i);
    const double hi = params.levels[i].Tj;
    // p > lo for integer p is p > floor(lo).
    auto first = std::upper_bound(tab.primes.begin(), tab.primes.end(),
                                  (uint64_t)lo);
    const long double lt = t;
    lcplx acc = 0;
    for (auto it = first; it != tab.primes.end(); ++it) {
        const uint64_t p = *it;
        if ((double)p > hi) break;
        const long double lp = std::log((long double)p);
        long double amp = std::exp(-0.5L * lp);
        if (j) amp *= (long double)weight_w(p, *j, params);
        const long double ph = -lt * lp;
        acc += lcplx(amp * std::cos(ph), amp * std::sin(ph));
    }
    return cplx((double)acc.real(), (double)acc.imag());
}

cplx block_poly_n(double t, int i, std::optional<int> j, double k,
                  const LadderParams& params, const PrimeTable* primes) {
    check_level(params, i, "block_poly_n");
    const double cap = 10.0 * params.levels[i].ell;
    if (!(cap <= kMaxOrder))
        throw CapacityError("block_poly_n: truncation order too large");
    const int order = (int)std::floor(cap + 1e-9);
    const cplx p_sum = block_prime_sum(t, i, j, params, primes);
    return truncated_exp(k * p_sum, order);
}

cplx tail_poly_m(double t, double k, double T) {
    if (!(T >= 2.0)) throw std::domain_error("tail_poly_m: T must be >= 2");
    if (k < 0) throw std::domain_error("tail_poly_m: k must be >= 0");
    const double lT = std::log(T);
    lcplx z = 0;
    if (lT >= 2.0) {
        const PrimeTable& tab = cached_primes((uint64_t)lT);
        const long double lt = t;
        for (uint64_t p : tab.primes) {
            if ((double)p > lT) break;
            const long double lp = std::log((long double)p);
            const long double amp = std::exp(-lp);
            const long double ph = -2.0L * lt * lp;
            z += lcplx(amp * std::cos(ph), amp * std::sin(ph));
        }
    }
    const double ll = std::log(lT);
    const double cap = 10.0 * k * ll * ll;
    if (!(cap <= kMaxOrder))
        throw CapacityError("tail_poly_m: truncation order too large");
    const int order = cap > 0 ? (int)std::floor(cap + 1e-9) : 0;
    const cplx kz(0.5 * k * (double)z.real(), 0.5 * k * (double)z.imag());
    return truncated_exp(kz, order);
}

double majorant_q_value(double p_abs, double ell, double k) {
    if (!(k > 0)) throw std::domain_error("majorant_q: k must be positive");
    if (!(ell > 0))
        throw std::invalid_argument("majorant_q: ell must be positive");
    p_abs = std::fabs(p_abs);
    if (p_abs == 0) return 0.0;
    const double rcap = 10.0 * ell / k;
    if (!(rcap <= kMaxOrder))
        throw CapacityError("majorant_q: r-sum too long");
    const int rmax = (int)std::floor(rcap + 1e-9);
    const long double lp = std::log((long double)p_abs);
    const long double lead =
        20.0L * (long double)ell * (lp + 1.0L - std::log(10.0L * (long double)ell));
    // log-sum-exp over the r-sum; the r = 0 term fixes fmax >= 0.
    long double fmax = 0;
    std::vector<long double> fs((size_t)rmax + 1);
    for (int r = 0; r <= rmax; ++r) {
        fs[(size_t)r] = 2.0L * r *
                        (std::log(2.0L * (long double)p_abs) + 1.0L -
                         std::log((long double)(r + 1)));
        fmax = std::max(fmax, fs[(size_t)r]);
    }
    long double s = 0;
    for (int r = 0; r <= rmax; ++r) s += std::exp(fs[(size_t)r] - fmax);
    const long double total = lead + fmax + std::log(s);
    if (total > 11300.0L) return HUGE_VAL;
    return (double)std::exp(total);
}

double majorant_q(double t, int j, double k, const LadderParams& params,
                  const PrimeTable* primes) {
    check_level(params, j, "majorant_q");
    const double p_abs =
        std::abs(block_prime_sum(t, j, std::nullopt, params, primes));
    return majorant_q_value(p_abs, params.levels[j].ell, k);
}

}  // namespace zh
