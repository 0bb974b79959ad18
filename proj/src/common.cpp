#include "zetahybrid/common.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace zh {

namespace {
std::atomic<int> g_workers{0};  // 0 = unresolved, resolve lazily

int resolve_default() {
    if (const char* env = std::getenv("ZETAHYBRID_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}
}  // namespace

int worker_count() {
    int n = g_workers.load(std::memory_order_relaxed);
    return n > 0 ? n : resolve_default();
}

void set_worker_count(int n) { g_workers.store(n > 0 ? n : 0); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int nw = worker_count();
    if (nw <= 1 || n < 2048) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    // Contiguous chunks; each index is touched by exactly one worker, so the
    // caller's per-index writes land identically for any worker count.
    const std::size_t nchunks = static_cast<std::size_t>(nw);
    std::vector<std::thread> threads;
    threads.reserve(nchunks);
    for (std::size_t c = 0; c < nchunks; ++c) {
        std::size_t lo = n * c / nchunks;
        std::size_t hi = n * (c + 1) / nchunks;
        threads.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    return pairwise_sum(xs.first(n / 2)) + pairwise_sum(xs.subspan(n / 2));
}

GaussLegendre gauss_legendre(int n) {
    GaussLegendre g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n / 2 + n % 2; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        g.nodes[i] = -x;
        g.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        g.weights[i] = w;
        g.weights[n - 1 - i] = w;
    }
    return g;
}

}  // namespace zh
