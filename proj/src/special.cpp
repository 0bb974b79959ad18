#include "zetahybrid/special.hpp"

#include <cmath>

namespace zh {

namespace {

// Ascending series E1(z) = -gamma - log z + sum_{n>=1} (-1)^{n+1} z^n/(n n!).
// Cancellation grows like e^{|z|} * eps, so this is restricted to |z| <= 4
// where the absolute noise floor stays below ~1e-14.
cplx e1_series(cplx z) {
    cplx sum = 0.0;
    cplx u = 1.0;  // z^n / n!
    for (int n = 1; n <= 160; ++n) {
        u *= z / static_cast<double>(n);
        cplx term = u / static_cast<double>(n);
        sum += (n % 2 == 1) ? term : -term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -kEulerGamma - std::log(z) + sum;
}

// E1(z) = e^{-z} / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...))) by modified
// Lentz.  Valid on the principal branch; convergence slows near the cut but
// our callers stay near the imaginary axis.
cplx e1_contfrac(cplx z) {
    const double tiny = 1e-290;
    cplx f = z + 1.0;
    if (std::abs(f) < tiny) f = tiny;
    cplx C = f, D = 0.0;
    for (int j = 1; j <= 20000; ++j) {
        double a = -static_cast<double>(j) * j;
        cplx b = z + static_cast<double>(2 * j + 1);
        D = b + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = b + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        cplx delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-z) / f;
}

}  // namespace

cplx exp_integral_e1(cplx z) {
    if (z == 0.0)
        throw std::domain_error("exp_integral_e1: z = 0 is outside the domain");
    if (z.imag() == 0.0 && z.real() < 0.0)
        throw std::domain_error(
            "exp_integral_e1: negative real axis is the branch cut");
    return std::abs(z) <= 4.0 ? e1_series(z) : e1_contfrac(z);
}

// ---------------------------------------------------------------------------
// Smoothing kernel
// ---------------------------------------------------------------------------

SmoothingKernel::SmoothingKernel(double X) {
    if (!(X >= 2.0))
        throw std::domain_error("SmoothingKernel: X must be >= 2");
    X_ = X;
    lo_ = std::exp(1.0 - 1.0 / X);
    hi_ = std::exp(1.0);

    // Dense set: sized so integrands with up to ~1e3/(2 pi X) oscillations
    // across the support are resolved to 1e-8 (8+ nodes per oscillation).
    double worst_osc = 1000.0 / (2.0 * kPi * X);
    int dense_count = 64 + 8 * static_cast<int>(std::ceil(worst_osc));
    z_split_ = 2.0 * kPi * X * 6.0;  // coarse set handles <= ~6 oscillations

    C_ = 1.0;  // make_nodes needs a value; normalized right below
    dense_ = make_nodes(dense_count);
    double mass0 = 0.0;
    for (double w : dense_.wu) mass0 += w;
    C_ = 1.0 / mass0;
    for (double& w : dense_.wu) w *= C_;
    coarse_ = make_nodes(160);
}

SmoothingKernel::NodeSet SmoothingKernel::make_nodes(int count) const {
    // Integrate in the y variable: x = exp(1 + (y-1)/(2X)), dx = x dy/(2X).
    const int per_panel = 32;
    int panels = (count + per_panel - 1) / per_panel;
    static thread_local GaussLegendre gl = gauss_legendre(32);
    NodeSet ns;
    ns.x.reserve(panels * per_panel);
    ns.wu.reserve(panels * per_panel);
    ns.logx.reserve(panels * per_panel);
    for (int pnl = 0; pnl < panels; ++pnl) {
        double a = -1.0 + 2.0 * pnl / panels;
        double b = -1.0 + 2.0 * (pnl + 1) / panels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < per_panel; ++i) {
            double y = mid + half * gl.nodes[i];
            double om = 1.0 - y * y;
            if (om <= 0.0) continue;
            double logx = 1.0 + (y - 1.0) / (2.0 * X_);
            double x = std::exp(logx);
            double u = C_ * std::exp(-1.0 / om);
            ns.x.push_back(x);
            ns.logx.push_back(logx);
            ns.wu.push_back(gl.weights[i] * half * u * x / (2.0 * X_));
        }
    }
    return ns;
}

double SmoothingKernel::operator()(double x) const {
    if (!(x > lo_ && x < hi_)) return 0.0;
    double y = 2.0 * X_ * (std::log(x) - 1.0) + 1.0;
    double om = 1.0 - y * y;
    if (om <= 0.0) return 0.0;
    return C_ * std::exp(-1.0 / om);
}

double SmoothingKernel::mass() const {
    double s = 0.0;
    for (double w : coarse_.wu) s += w;
    return s;
}

cplx SmoothingKernel::apply(const NodeSet& ns, cplx z) const {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < ns.x.size(); ++i)
        acc += ns.wu[i] * exp_integral_e1(z * ns.logx[i]);
    return acc;
}

cplx SmoothingKernel::big_u(cplx z) const {
    if (z == 0.0)
        throw std::domain_error("big_u: z = 0 (E1 diverges at the origin)");
    return apply(std::abs(z) <= z_split_ ? coarse_ : dense_, z);
}

// ---------------------------------------------------------------------------
// Barnes G, g(k), theta
// ---------------------------------------------------------------------------

double barnes_g(int n) {
    if (n < 1) throw std::domain_error("barnes_g: n must be >= 1");
    long double result = 1.0L, fact = 1.0L;
    for (int j = 1; j <= n - 2; ++j) {
        fact *= j;
        result *= fact;
    }
    return static_cast<double>(result);
}

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Multiply acc by f, reducing against the partner side first; returns false on
// overflow.
bool mul_reduced(u128& acc, u128 f, u128& other) {
    u128 g = gcd128(f, other);
    f /= g;
    other /= g;
    if (f != 0 && acc > ~u128{0} / f) return false;
    acc *= f;
    return true;
}

}  // namespace

double rmt_factor_g(int k) {
    if (k < 0) throw std::domain_error("rmt_factor_g: k must be >= 0");
    // g(k) = prod_{j=1}^{k-1} j! / prod_{j=k}^{2k-1} j!, exact in 128 bits
    // for the k this laboratory ever uses.
    u128 num = 1, den = 1;
    bool exact = true;
    u128 fact = 1;
    for (int j = 1; j <= 2 * k - 1 && exact; ++j) {
        if (fact > ~u128{0} / static_cast<unsigned>(j)) {
            exact = false;
            break;
        }
        fact *= static_cast<unsigned>(j);
        if (j <= k - 1)
            exact = mul_reduced(num, fact, den);
        else
            exact = mul_reduced(den, fact, num);
    }
    if (exact) {
        u128 g = gcd128(num, den);
        num /= g;
        den /= g;
        return static_cast<double>(static_cast<long double>(num) /
                                   static_cast<long double>(den));
    }
    // Large k: log-space fallback (no exactness promised out here).
    long double s = 0.0L;
    for (int j = 1; j <= k - 1; ++j) s += lgammal(j + 1.0L);
    for (int j = k; j <= 2 * k - 1; ++j) s -= lgammal(j + 1.0L);
    return static_cast<double>(expl(s));
}

double riemann_siegel_theta(double t) {
    if (!(t >= 1.0))
        throw std::domain_error("riemann_siegel_theta: t must be >= 1");
    double lt = std::log(t / (2.0 * kPi));
    double t2 = t * t;
    return 0.5 * t * lt - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t2) + 31.0 / (80640.0 * t * t2 * t2);
}

}  // namespace zh
