#pragma once
// Shared bits: constants, error types, deterministic reductions, and the
// worker pool used for grid evaluations.  Everything downstream includes this.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zh {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
// exp(EulerGamma); appears in every Mertens-type normalization.
inline constexpr double kExpGamma = 1.78107241799019798523650410310717955;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

// A zero table (or other precomputed range) does not cover the requested t.
struct CoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration would exceed a configured size cap (smooth sets, block
// polynomials at paper-scale parameters, sieve limits).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No valid ladder level exists for the requested kappa; carries the smallest
// kappa that would admit J = 0.
struct InfeasibleError : std::runtime_error {
    double min_feasible_kappa;
    InfeasibleError(const std::string& what, double min_kappa)
        : std::runtime_error(what), min_feasible_kappa(min_kappa) {}
};

// Zero scan found a count inconsistent with the counting function.
struct IncompleteTableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Number of workers used by parallel_for.  Resolution order: explicit
// set_worker_count() > ZETAHYBRID_WORKERS env var > hardware concurrency.
int worker_count();
void set_worker_count(int n);  // n <= 0 restores the default resolution

// Runs fn(i) for i in [0, n).  Work is split into contiguous chunks, one per
// worker; fn must write only to per-index slots so results are deterministic
// regardless of worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Pairwise (cascade) summation: deterministic for a fixed input order and
// O(log n) error growth instead of O(n).
double pairwise_sum(std::span<const double> xs);

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

}  // namespace zh
