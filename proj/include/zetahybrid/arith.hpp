#pragma once
// Multiplicative groundwork: prime sieve, von Mangoldt, the generalized
// divisor function d_k (k real), smooth-number enumeration, and the two
// classical products (the arithmetic factor a(k) and Mertens' product).
//
// d_k is the multiplicative function with d_k(p^m) = prod_{i<m}(k+i)/m!,
// i.e. the Dirichlet-series coefficients of zeta(s)^k.  Everything here is
// plain double arithmetic; n stays within uint64.

#include <cstdint>
#include <vector>

#include "zetahybrid/common.hpp"

namespace zh {

struct PrimeTable {
    uint64_t limit = 0;                // primes <= limit are listed
    std::vector<uint64_t> primes;      // ascending

    bool contains(uint64_t n) const;   // binary search

    // Calls fn(p, m, p^m) for every prime power p^m <= cap, p ascending and
    // m ascending within p.  cap must be <= limit (the sieve has to have seen
    // every prime that could divide a prime power below cap).
    template <typename F>
    void for_each_prime_power(uint64_t cap, F&& fn) const {
        for (uint64_t p : primes) {
            if (p > cap) break;
            uint64_t pm = p;
            for (int m = 1; pm <= cap; ++m) {
                fn(p, m, pm);
                if (pm > cap / p) break;  // next power would overflow/exceed
                pm *= p;
            }
        }
    }
};

// Sieve of Eratosthenes, inclusive of `limit`.  limit >= 2 required.
PrimeTable sieve_primes(uint64_t limit);

// log p if n = p^m, else 0.  n >= 1 required (n = 0 is a domain error).
double von_mangoldt(uint64_t n);

// d_k(n) for real k via factorization of n.  d_k(1) = 1.
double divisor_k(double k, uint64_t n);

struct SmoothSet {
    uint64_t X = 0;
    uint64_t n_max = 0;
    int omega_cap = -1;                // -1 means unbounded
    std::vector<uint64_t> members;     // ascending, always starts at 1
    std::vector<uint8_t> omega;        // Omega(n) (with multiplicity), aligned
};

// All X-smooth n <= n_max with Omega(n) <= omega_cap (omega_cap < 0 means no
// cap).  X >= 1; n_max >= 1.
SmoothSet enumerate_smooth(uint64_t X, uint64_t n_max, int omega_cap = -1);

struct AFactorResult {
    double value = 0.0;
    // |last local factor - 1| at the truncation prime; the flag trips when the
    // product was cut while factors still moved by more than tol.
    double last_factor_dev = 0.0;
    bool tail_flag = false;
};

// a(k) = prod_p (1-1/p)^{k^2} sum_m d_k(p^m)^2 p^{-m}, truncated at
// prime_limit.  k > -1/2.  Local sums are carried to machine precision with a
// geometric tail correction; tol only drives the tail flag.
AFactorResult arithmetic_factor_a(double k, uint64_t prime_limit = 1000000,
                                  double tol = 1e-12);

struct MertensResult {
    double product = 0.0;   // prod_{p<=X} (1 - 1/p)
    double ratio = 0.0;     // product / (e^{-gamma}/log X)
};

MertensResult mertens_product(uint64_t X);

}  // namespace zh
