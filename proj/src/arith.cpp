#include "zetahybrid/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zh {

PrimeTable sieve_primes(uint64_t limit) {
    if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
    std::vector<uint8_t> composite(limit + 1, 0);
    for (uint64_t p = 2; p * p <= limit; ++p) {
        if (composite[p]) continue;
        for (uint64_t q = p * p; q <= limit; q += p) composite[q] = 1;
    }
    PrimeTable t;
    t.limit = limit;
    for (uint64_t n = 2; n <= limit; ++n)
        if (!composite[n]) t.primes.push_back(n);
    return t;
}

bool PrimeTable::contains(uint64_t n) const {
    return std::binary_search(primes.begin(), primes.end(), n);
}

namespace {

// Smallest prime factor by trial division; n >= 2.
uint64_t smallest_factor(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return d;
    return n;
}

}  // namespace

double von_mangoldt(uint64_t n) {
    if (n == 0) throw std::domain_error("von_mangoldt: n must be >= 1");
    if (n == 1) return 0.0;
    uint64_t p = smallest_factor(n);
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

namespace {

// d_k on a prime power: prod_{i=0}^{m-1} (k+i)/(i+1).
double dk_prime_power(double k, int m) {
    double v = 1.0;
    for (int i = 0; i < m; ++i) v *= (k + i) / (i + 1);
    return v;
}

}  // namespace

double divisor_k(double k, uint64_t n) {
    if (n == 0) throw std::domain_error("divisor_k: n must be >= 1");
    double out = 1.0;
    while (n > 1) {
        uint64_t p = smallest_factor(n);
        int m = 0;
        while (n % p == 0) {
            n /= p;
            ++m;
        }
        out *= dk_prime_power(k, m);
    }
    return out;
}

namespace {

void smooth_dfs(const std::vector<uint64_t>& ps, std::size_t idx, uint64_t cur,
                int omega, uint64_t n_max, int omega_cap, SmoothSet& out) {
    out.members.push_back(cur);
    out.omega.push_back(static_cast<uint8_t>(omega));
    if (out.members.size() > 80'000'000)
        throw CapacityError("enumerate_smooth: set exceeds 8e7 members");
    for (std::size_t i = idx; i < ps.size(); ++i) {
        uint64_t p = ps[i];
        if (cur > n_max / p) break;  // ps ascending: later primes overflow too
        uint64_t next = cur * p;
        for (int m = 1; ; ++m) {
            if (omega_cap >= 0 && omega + m > omega_cap) break;
            smooth_dfs(ps, i + 1, next, omega + m, n_max, omega_cap, out);
            if (next > n_max / p) break;
            next *= p;
        }
    }
}

}  // namespace

SmoothSet enumerate_smooth(uint64_t X, uint64_t n_max, int omega_cap) {
    if (n_max < 1) throw std::domain_error("enumerate_smooth: n_max must be >= 1");
    SmoothSet s;
    s.X = X;
    s.n_max = n_max;
    s.omega_cap = omega_cap;
    std::vector<uint64_t> ps;
    if (X >= 2) {
        uint64_t lim = std::min(X, n_max);
        if (lim >= 2) ps = sieve_primes(lim).primes;
    }
    smooth_dfs(ps, 0, 1, 0, n_max, omega_cap, s);
    // DFS emits in tree order; reorder ascending with omega kept aligned.
    std::vector<std::size_t> perm(s.members.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return s.members[a] < s.members[b]; });
    SmoothSet sorted = s;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        sorted.members[i] = s.members[perm[i]];
        sorted.omega[i] = s.omega[perm[i]];
    }
    return sorted;
}

AFactorResult arithmetic_factor_a(double k, uint64_t prime_limit, double tol) {
    if (!(k > -0.5))
        throw std::domain_error("arithmetic_factor_a: requires k > -1/2");
    if (prime_limit < 2)
        throw std::domain_error("arithmetic_factor_a: prime_limit must be >= 2");
    PrimeTable pt = sieve_primes(prime_limit);
    // Everything below runs in long double: ~78k near-unit factors at the
    // default prime limit accumulate double rounding into the low 1e-12s,
    // which is exactly the precision the k = 1 collapse is held to.
    const long double k2 = static_cast<long double>(k) * k;
    long double product = 1.0L;
    long double last_dev = 0.0L;
    for (uint64_t p : pt.primes) {
        const long double invp = 1.0L / static_cast<long double>(p);
        // local = sum_m d_k(p^m)^2 p^{-m}, summed until the terms stop moving
        // the accumulator, then closed with a geometric tail estimate so the
        // truncation bias stays far below one ulp of the factor.
        long double d = 1.0L;      // d_k(p^m) by recurrence
        long double pw = 1.0L;     // p^{-m}
        long double local = 1.0L;  // m = 0 term
        int m = 0;
        while (m < 512) {
            ++m;
            d *= (k + (m - 1)) / m;
            pw *= invp;
            long double term = d * d * pw;
            local += term;
            if (term < 1e-20L * local) {
                if (d != 0.0L) {
                    long double dn = d * (k + m) / (m + 1);
                    long double tnext = dn * dn * pw * invp;
                    long double rr = (k + m + 1) / (m + 2);
                    long double r = rr * rr * invp;
                    if (r < 1.0L) local += tnext / (1.0L - r);
                }
                break;
            }
            if (d == 0.0L) break;  // integer k < 0: d_k dies at m = |k|+1
        }
        long double factor = std::pow(1.0L - invp, k2) * local;
        product *= factor;
        last_dev = std::abs(factor - 1.0L);
    }
    AFactorResult r;
    r.value = static_cast<double>(product);
    r.last_factor_dev = static_cast<double>(last_dev);
    r.tail_flag = r.last_factor_dev > tol;
    return r;
}

MertensResult mertens_product(uint64_t X) {
    if (X < 2) throw std::domain_error("mertens_product: X must be >= 2");
    PrimeTable pt = sieve_primes(X);
    double prod = 1.0;
    for (uint64_t p : pt.primes) prod *= 1.0 - 1.0 / static_cast<double>(p);
    MertensResult r;
    r.product = prod;
    r.ratio = prod * kExpGamma * std::log(static_cast<double>(X));
    return r;
}

}  // namespace zh
