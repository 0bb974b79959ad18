// Coefficient tables for the Dirichlet-polynomial approximation of P_X^k.
// beta comes from multiplying out the per-prime local factors
// exp(k sum_{p^m<=X} p^{-ms}/m); alpha additionally truncates the global
// exponential at order W0, which couples the primes, so its build tracks a
// small polynomial in the order marker along the smooth-number recursion.
#include "zetahybrid/coeffs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "zetahybrid/arith.hpp"

namespace zh {

namespace {

constexpr std::size_t kMaxEntries = 30000000;
// Degree cap for the order-marker polynomial: Omega(n) <= 63 for any n that
// fits in uint64, so degrees beyond that never occur.
constexpr int kMaxDeg = 63;

// Coefficients of exp(k * sum_{i<=M} y^i / i) up to degree mm, from the
// logarithmic-derivative recurrence b_m = (k/m) sum_{i<=min(m,M)} b_{m-i}.
std::vector<double> local_series(double k, int M, int mm) {
    std::vector<double> b(mm + 1, 0.0);
    b[0] = 1.0;
    for (int m = 1; m <= mm; ++m) {
        double s = 0;
        for (int i = 1; i <= std::min(m, M); ++i) s += b[m - i];
        b[m] = k * s / m;
    }
    return b;
}

// Same series over the ring of polynomials in the order marker u, where each
// selected prime-power factor carries one power of u: b_m(u) has degree at
// most min(m, cap).  bu[m] is stored densely up to that degree.
std::vector<std::vector<double>> local_series_marked(double k, int M, int mm,
                                                     int cap) {
    std::vector<std::vector<double>> bu(mm + 1);
    bu[0] = {1.0};
    for (int m = 1; m <= mm; ++m) {
        int deg = std::min(m, cap);
        bu[m].assign(deg + 1, 0.0);
        for (int i = 1; i <= std::min(m, M); ++i)
            for (int d = 1; d <= deg && d - 1 < (int)bu[m - i].size(); ++d)
                bu[m][d] += bu[m - i][d - 1];
        for (double& c : bu[m]) c *= k / m;
    }
    return bu;
}

struct BuildCtx {
    uint64_t n_max;
    std::vector<uint64_t> primes;
    std::vector<std::pair<uint64_t, double>> out;

    void push(uint64_t n, double v) {
        if (v == 0.0) return;
        if (out.size() >= kMaxEntries)
            throw CapacityError("coefficient table would exceed " +
                                std::to_string(kMaxEntries) + " entries");
        out.push_back({n, v});
    }
};

// Scalar walk over the X-smooth numbers, multiplying local coefficients.
// bs[j][m] is the degree-m coefficient at primes[j].
void dfs_scalar(BuildCtx& ctx, const std::vector<std::vector<double>>& bs,
                std::size_t pi, uint64_t n, double val) {
    ctx.push(n, val);
    if (val == 0.0) return;  // multiplicative: the whole subtree vanishes
    for (std::size_t j = pi; j < ctx.primes.size(); ++j) {
        uint64_t p = ctx.primes[j];
        if (p > ctx.n_max / n) break;
        uint64_t nn = n;
        for (int m = 1; p <= ctx.n_max / nn; ++m) {
            nn *= p;
            double v = val * bs[j][m];
            if (v != 0.0) dfs_scalar(ctx, bs, j + 1, nn, v);
        }
    }
}

// Marked walk: carries the truncated polynomial in u; the table value at n is
// the sum of coefficients of u^j for j <= cap.
struct Marked {
    std::array<double, kMaxDeg + 1> c;
    int deg;
};

void dfs_marked(BuildCtx& ctx,
                const std::vector<std::vector<std::vector<double>>>& bs,
                int cap, std::size_t pi, uint64_t n, const Marked& cur) {
    double val = 0;
    for (int d = 0; d <= cur.deg; ++d) val += cur.c[d];
    ctx.push(n, val);
    for (std::size_t j = pi; j < ctx.primes.size(); ++j) {
        uint64_t p = ctx.primes[j];
        if (p > ctx.n_max / n) break;
        uint64_t nn = n;
        for (int m = 1; p <= ctx.n_max / nn; ++m) {
            nn *= p;
            const std::vector<double>& loc = bs[j][m];
            Marked next;
            next.deg = std::min(cur.deg + (int)loc.size() - 1, cap);
            next.c.fill(0.0);
            bool any = false;
            for (int a = 0; a <= cur.deg; ++a) {
                if (cur.c[a] == 0.0) continue;
                for (int b = 0; b < (int)loc.size() && a + b <= cap; ++b) {
                    next.c[a + b] += cur.c[a] * loc[b];
                    any = true;
                }
            }
            if (any) dfs_marked(ctx, bs, cap, j + 1, nn, next);
        }
    }
}

CoeffTable finish_table(CoeffKind kind, double k, double X, uint64_t n_max,
                        int omega_cap, BuildCtx&& ctx) {
    std::sort(ctx.out.begin(), ctx.out.end());
    CoeffTable t;
    t.kind = kind;
    t.k = k;
    t.X = X;
    t.n_max = n_max;
    t.omega_cap = omega_cap;
    t.n.reserve(ctx.out.size());
    t.coef.reserve(ctx.out.size());
    t.logn.reserve(ctx.out.size());
    for (auto& [n, c] : ctx.out) {
        t.n.push_back(n);
        t.coef.push_back(c);
        t.logn.push_back(std::log((long double)n));
    }
    // Rankin charge for the cut at n_max: any X-smooth n > n_max has
    // Omega(n) > log(n_max)/log(X), so the Omega-tail bound covers the
    // discarded weight.  Minimized over a small r grid.
    double w_eff = std::log((double)n_max) / std::log(X);
    double best = 1e308;
    for (double r = 1.1; r < 1.95; r += 0.1)
        best = std::min(best, rankin_tail_bound(k, X, w_eff, r));
    t.tail_bound = best;
    return t;
}

BuildCtx make_ctx(double k, double X, uint64_t n_max, const char* who) {
    if (!(X >= 2.0))
        throw std::domain_error(std::string(who) + ": X must be >= 2");
    if (X > 4.0e9)
        throw std::domain_error(std::string(who) + ": X too large to sieve");
    if (n_max < 1)
        throw std::domain_error(std::string(who) + ": n_max must be >= 1");
    (void)k;
    BuildCtx ctx;
    ctx.n_max = n_max;
    uint64_t cap = std::min<uint64_t>((uint64_t)X, n_max);
    if (cap >= 2) ctx.primes = sieve_primes(cap).primes;
    return ctx;
}

int max_power(uint64_t p, uint64_t n_max) {
    int m = 0;
    uint64_t pm = 1;
    while (p <= n_max / pm) {
        pm *= p;
        ++m;
    }
    return m;
}

}  // namespace

double CoeffTable::entry(uint64_t m) const {
    auto it = std::lower_bound(n.begin(), n.end(), m);
    if (it == n.end() || *it != m) return 0.0;
    return coef[it - n.begin()];
}

TruncationBudget truncation_budget(double T, double k, double v0_min) {
    if (!(v0_min > 0))
        throw std::domain_error("truncation_budget: v0_min must be positive");
    TruncationBudget b;
    double raw = std::numeric_limits<double>::quiet_NaN();
    if (T > std::exp(1.0)) {
        double l2 = std::log(std::log(T));
        if (l2 > 0) raw = l2 * std::log(l2);
    }
    if (raw >= v0_min) {
        b.V0 = raw;
    } else {
        b.V0 = v0_min;
        b.floor_applied = true;
    }
    b.W0 = 20.0 * std::abs(k) * b.V0;
    return b;
}

CoeffTable build_beta(double k, double X, uint64_t n_max) {
    BuildCtx ctx = make_ctx(k, X, n_max, "build_beta");
    std::vector<std::vector<double>> bs(ctx.primes.size());
    for (std::size_t j = 0; j < ctx.primes.size(); ++j) {
        uint64_t p = ctx.primes[j];
        int M = max_power(p, (uint64_t)X);
        bs[j] = local_series(k, M, max_power(p, n_max));
    }
    dfs_scalar(ctx, bs, 0, 1, 1.0);
    return finish_table(CoeffKind::beta, k, X, n_max, -1, std::move(ctx));
}

std::vector<double> beta_local(double k, uint64_t p, double X, int orders) {
    if (p < 2) throw std::domain_error("beta_local: p must be at least 2");
    if (!(X >= 2.0)) throw std::domain_error("beta_local: X must be >= 2");
    if (orders < 0) throw std::domain_error("beta_local: orders must be >= 0");
    return local_series(k, max_power(p, (uint64_t)X), orders);
}

CoeffTable build_alpha(double k, double X, const TruncationBudget& budget,
                       uint64_t n_max) {
    BuildCtx ctx = make_ctx(k, X, n_max, "build_alpha");
    if (!(budget.W0 >= 0))
        throw std::domain_error("build_alpha: W0 must be >= 0");
    int w0 = (int)std::floor(budget.W0 + 1e-9);
    // Omega(n) <= log2(n_max) for every table n; once W0 clears that, the
    // truncation never bites and alpha coincides with beta.
    int max_omega = max_power(2, n_max);
    if (w0 >= max_omega) {
        std::vector<std::vector<double>> bs(ctx.primes.size());
        for (std::size_t j = 0; j < ctx.primes.size(); ++j) {
            uint64_t p = ctx.primes[j];
            bs[j] = local_series(k, max_power(p, (uint64_t)X),
                                 max_power(p, n_max));
        }
        dfs_scalar(ctx, bs, 0, 1, 1.0);
        return finish_table(CoeffKind::alpha, k, X, n_max, w0,
                            std::move(ctx));
    }
    int cap = std::min(w0, kMaxDeg);
    std::vector<std::vector<std::vector<double>>> bs(ctx.primes.size());
    for (std::size_t j = 0; j < ctx.primes.size(); ++j) {
        uint64_t p = ctx.primes[j];
        bs[j] = local_series_marked(k, max_power(p, (uint64_t)X),
                                    max_power(p, n_max), cap);
    }
    Marked root;
    root.c.fill(0.0);
    root.c[0] = 1.0;
    root.deg = 0;
    dfs_marked(ctx, bs, cap, 0, 1, root);
    return finish_table(CoeffKind::alpha, k, X, n_max, w0, std::move(ctx));
}

cplx eval_dirichlet(const CoeffTable& table, double t) {
    const long double tl = t;
    long double re = 0, im = 0;
    for (std::size_t i = 0; i < table.n.size(); ++i) {
        const long double a =
            table.coef[i] / std::sqrt((long double)table.n[i]);
        const long double ph = -tl * table.logn[i];
        re += a * std::cos(ph);
        im += a * std::sin(ph);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

double rankin_tail_bound(double k, double X, double W0, double r) {
    if (!(r > 1.0 && r < 2.0))
        throw std::domain_error("rankin_tail_bound: r must lie in (1, 2)");
    if (!(X >= 2.0))
        throw std::domain_error("rankin_tail_bound: X must be >= 2");
    const double ka = std::abs(k);
    PrimeTable pt = sieve_primes((uint64_t)X);
    long double prod = 1;
    for (uint64_t p : pt.primes) {
        const long double q = (long double)r / p;
        long double dm = 1, qm = 1, s = 1;
        for (int m = 1; m < 500; ++m) {
            dm *= (ka + m - 1) / m;  // d_{|k|}(p^m) recurrence
            qm *= q;
            long double term = dm * dm * qm;
            s += term;
            if (term < 1e-18L * s) break;
        }
        prod *= s;
    }
    return (double)(std::pow((long double)r, (long double)-W0) * prod);
}

void export_csv(const CoeffTable& table, std::ostream& out) {
    out << "n,coefficient\n";
    char buf[64];
    for (std::size_t i = 0; i < table.n.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%llu,%.17g\n",
                      (unsigned long long)table.n[i], table.coef[i]);
        out << buf;
    }
}

}  // namespace zh
