#include "zetahybrid.h"

#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include "zetahybrid/arith.hpp"
#include "zetahybrid/coeffs.hpp"
#include "zetahybrid/common.hpp"
#include "zetahybrid/hybrid.hpp"
#include "zetahybrid/moments.hpp"
#include "zetahybrid/verify.hpp"
#include "zetahybrid/zeta.hpp"

struct zh_primes {
    zh::PrimeTable table;
};
struct zh_zeros {
    zh::ZeroTable table;
};
struct zh_coeffs {
    zh::CoeffTable table;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

int invalid(const std::string& msg) { return fail(ZH_ERR_INVALID, msg); }

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs `f`, translating C++ exceptions into error codes.  Plain
// std::runtime_error (not one of the library's typed errors) maps to
// `runtime_fallback`, which IO paths set to ZH_ERR_IO.
template <typename F>
int guarded(F&& f, int runtime_fallback = ZH_ERR_INTERNAL) noexcept {
    try {
        f();
        return ZH_OK;
    } catch (const zh::CoverageError& e) {
        return fail(ZH_ERR_COVERAGE, e.what());
    } catch (const zh::CapacityError& e) {
        return fail(ZH_ERR_CAPACITY, e.what());
    } catch (const zh::InfeasibleError& e) {
        return fail(ZH_ERR_INFEASIBLE, e.what());
    } catch (const zh::IncompleteTableError& e) {
        return fail(ZH_ERR_INCOMPLETE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(ZH_ERR_INVALID, e.what());
    } catch (const std::domain_error& e) {
        return fail(ZH_ERR_INVALID, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ZH_ERR_NOMEM, "allocation failure");
    } catch (const std::runtime_error& e) {
        return fail(runtime_fallback, e.what());
    } catch (const std::exception& e) {
        return fail(ZH_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ZH_ERR_INTERNAL, "unknown exception");
    }
}

zh::GridSpec to_grid(zh_grid g) {
    zh::GridSpec out;
    out.t_start = g.t_start;
    out.t_end = g.t_end;
    out.step = g.step;
    return out;
}

}  // namespace

extern "C" {

const char* zh_version(void) { return "0.1.0"; }

const char* zh_last_error(void) { return g_last_error.c_str(); }

void zh_set_worker_count(int n) { zh::set_worker_count(n); }

/* ------------------------------------------------------------------ primes */

int zh_primes_new(uint64_t limit, zh_primes** out) {
    if (!out) return invalid("zh_primes_new: out is NULL");
    return guarded([&] {
        auto h = std::make_unique<zh_primes>();
        h->table = zh::sieve_primes(limit);
        *out = h.release();
    });
}

void zh_primes_free(zh_primes* h) { delete h; }

int zh_primes_count(const zh_primes* h, uint64_t* out) {
    if (!h || !out) return invalid("zh_primes_count: NULL argument");
    *out = h->table.primes.size();
    return ZH_OK;
}

int zh_primes_get(const zh_primes* h, uint64_t index, uint64_t* out) {
    if (!h || !out) return invalid("zh_primes_get: NULL argument");
    if (index >= h->table.primes.size())
        return invalid("zh_primes_get: index out of range");
    *out = h->table.primes[index];
    return ZH_OK;
}

/* ------------------------------------------------------------------- zeros */

int zh_zeros_find(double t_min, double t_max, zh_zeros** out) {
    if (!out) return invalid("zh_zeros_find: out is NULL");
    return guarded([&] {
        auto h = std::make_unique<zh_zeros>();
        h->table = zh::find_zeros(t_min, t_max);
        *out = h.release();
    });
}

int zh_zeros_load(const char* path, zh_zeros** out) {
    if (!path || !out) return invalid("zh_zeros_load: NULL argument");
    if (!std::ifstream(path).good())
        return fail(ZH_ERR_IO,
                    std::string("zh_zeros_load: cannot open ") + path);
    return guarded(
        [&] {
            auto h = std::make_unique<zh_zeros>();
            h->table = zh::load_zeros(path);
            *out = h.release();
        },
        ZH_ERR_IO);
}

int zh_zeros_save(const zh_zeros* h, const char* path) {
    if (!h || !path) return invalid("zh_zeros_save: NULL argument");
    return guarded([&] { zh::save_zeros(h->table, path); }, ZH_ERR_IO);
}

void zh_zeros_free(zh_zeros* h) { delete h; }

int zh_zeros_info_get(const zh_zeros* h, zh_zeros_info* out) {
    if (!h || !out) return invalid("zh_zeros_info_get: NULL argument");
    const auto& t = h->table;
    out->t_lo = t.t_lo;
    out->t_cov = t.t_cov;
    out->n_below = t.n_below;
    out->count = t.ordinates.size();
    out->first = t.ordinates.empty() ? kNaN : t.ordinates.front();
    out->last = t.ordinates.empty() ? kNaN : t.ordinates.back();
    return ZH_OK;
}

int zh_zeros_get(const zh_zeros* h, uint64_t index, double* out) {
    if (!h || !out) return invalid("zh_zeros_get: NULL argument");
    if (index >= h->table.ordinates.size())
        return invalid("zh_zeros_get: index out of range");
    *out = h->table.ordinates[index];
    return ZH_OK;
}

int zh_zeros_count_to(const zh_zeros* h, double t, int64_t* out) {
    if (!h || !out) return invalid("zh_zeros_count_to: NULL argument");
    return guarded([&] { *out = h->table.count_to(t); });
}

int zh_zeros_s_of_t(const zh_zeros* h, double t, double* out) {
    if (!h || !out) return invalid("zh_zeros_s_of_t: NULL argument");
    return guarded([&] { *out = zh::s_of_t(t, h->table); });
}

/* ------------------------------------------------------------------ hybrid */

int zh_hybrid_eval(double t, double X, const zh_zeros* zeros, double window,
                   int strict_range, zh_hybrid_result* out) {
    if (!out) return invalid("zh_hybrid_eval: out is NULL");
    return guarded([&] {
        const zh::ZeroTable* zp = zeros ? &zeros->table : nullptr;
        if (strict_range && !zp) {
            // Mirror the residual's validity range when there is no zero
            // table (and hence no residual call to enforce it).
            if (!(X >= 2.0 && X <= std::cbrt(t)))
                throw std::domain_error(
                    "zh_hybrid_eval: strict range requires 2 <= X <= t^(1/3)");
        }
        const zh::HybridPoint hp = zh::hybrid_point(t, X, zp, window);
        zh_hybrid_result r;
        r.zeta_re = hp.zeta.real();
        r.zeta_im = hp.zeta.imag();
        r.p_re = hp.p_value.real();
        r.p_im = hp.p_value.imag();
        r.zq_re = hp.z_quotient.real();
        r.zq_im = hp.z_quotient.imag();
        r.zd_re = r.zd_im = r.residual = r.tail_estimate = kNaN;
        if (zp) {
            const zh::DirectZ dz =
                zh::hadamard_z_direct(t, X, *zp, window);
            r.zd_re = dz.value.real();
            r.zd_im = dz.value.imag();
            r.tail_estimate = dz.tail_estimate;
            r.residual =
                zh::hybrid_residual(t, X, *zp, window, strict_range != 0);
        }
        *out = r;
    });
}

/* ------------------------------------------------------------------ coeffs */

int zh_coeffs_build_beta(double k, double X, uint64_t n_max, zh_coeffs** out) {
    if (!out) return invalid("zh_coeffs_build_beta: out is NULL");
    return guarded([&] {
        auto h = std::make_unique<zh_coeffs>();
        h->table = zh::build_beta(k, X, n_max);
        *out = h.release();
    });
}

int zh_coeffs_build_alpha(double k, double X, double T, uint64_t n_max,
                          zh_coeffs** out) {
    if (!out) return invalid("zh_coeffs_build_alpha: out is NULL");
    return guarded([&] {
        auto h = std::make_unique<zh_coeffs>();
        h->table = zh::build_alpha(k, X, zh::truncation_budget(T, k), n_max);
        *out = h.release();
    });
}

void zh_coeffs_free(zh_coeffs* h) { delete h; }

int zh_coeffs_info_get(const zh_coeffs* h, zh_coeffs_info* out) {
    if (!h || !out) return invalid("zh_coeffs_info_get: NULL argument");
    const auto& t = h->table;
    out->k = t.k;
    out->X = t.X;
    out->n_max = t.n_max;
    out->omega_cap = t.omega_cap;
    out->size = t.size();
    out->tail_bound = t.tail_bound;
    return ZH_OK;
}

int zh_coeffs_entry(const zh_coeffs* h, uint64_t n, double* out) {
    if (!h || !out) return invalid("zh_coeffs_entry: NULL argument");
    return guarded([&] { *out = h->table.entry(n); });
}

int zh_coeffs_eval(const zh_coeffs* h, double t, double* out_re,
                   double* out_im) {
    if (!h || !out_re || !out_im)
        return invalid("zh_coeffs_eval: NULL argument");
    return guarded([&] {
        const zh::cplx v = zh::eval_dirichlet(h->table, t);
        *out_re = v.real();
        *out_im = v.imag();
    });
}

int zh_coeffs_export_csv(const zh_coeffs* h, const char* path) {
    if (!h || !path) return invalid("zh_coeffs_export_csv: NULL argument");
    std::ofstream out(path);
    if (!out)
        return fail(ZH_ERR_IO,
                    std::string("zh_coeffs_export_csv: cannot open ") + path);
    return guarded(
        [&] {
            zh::export_csv(h->table, out);
            out.flush();
            if (!out)
                throw std::runtime_error(
                    "zh_coeffs_export_csv: write failure");
        },
        ZH_ERR_IO);
}

/* ----------------------------------------------------------------- moments */

int zh_moment(int family, double two_k, double X, zh_grid grid, int strict,
              zh_moment_result* out) {
    if (!out) return invalid("zh_moment: out is NULL");
    return guarded([&] {
        const zh::GridSpec g = to_grid(grid);
        zh::MomentEstimate est;
        double pred = kNaN;
        const double k = 0.5 * two_k;
        switch (family) {
            case ZH_MOMENT_ZETA:
                est = zh::integrate_moment(
                    [](double t) { return std::abs(zh::hardy_z(t)); }, two_k,
                    g, "zeta", strict != 0);
                break;
            case ZH_MOMENT_EULER: {
                const zh::PrimeSumPlan plan(X);
                est = zh::integrate_moment(
                    [&plan](double t) {
                        return std::exp(plan.eval(t).real());
                    },
                    two_k, g, "euler_product", strict != 0);
                if (k > -0.5) pred = zh::prediction_p(k, X);
                break;
            }
            case ZH_MOMENT_QUOTIENT: {
                const zh::PrimeSumPlan plan(X);
                est = zh::integrate_moment(
                    [&plan](double t) {
                        return std::abs(zh::hadamard_z_quotient(t, plan));
                    },
                    two_k, g, "quotient_z", strict != 0);
                const double kr = std::round(k);
                if (std::abs(k - kr) < 1e-9 && kr >= 0.0 &&
                    g.t_end > std::exp(1.0))
                    pred = zh::prediction_z((int)kr, X, g.t_end);
                break;
            }
            default:
                throw std::invalid_argument(
                    "zh_moment: family must be ZH_MOMENT_{ZETA,EULER,"
                    "QUOTIENT}");
        }
        out->value = est.value;
        out->std_error = est.std_error;
        out->prediction = pred;
        out->n_points = est.n_points;
        out->coarse_warning = est.coarse_warning ? 1 : 0;
    });
}

int zh_split(double k, double X, zh_grid grid, const zh_zeros* zeros,
             double window, int strict, zh_split_result* out) {
    if (!out) return invalid("zh_split: out is NULL");
    return guarded([&] {
        const zh::SplittingReport rep = zh::splitting_report(
            k, X, to_grid(grid), zeros ? &zeros->table : nullptr, window,
            strict != 0);
        out->k = rep.k;
        out->X = rep.X;
        out->m_pz = rep.m_pz;
        out->m_p = rep.m_p;
        out->m_z = rep.m_z;
        out->m_pz_err = rep.m_pz_err;
        out->m_p_err = rep.m_p_err;
        out->m_z_err = rep.m_z_err;
        out->ratio = rep.ratio;
        out->ratio_err = rep.ratio_err;
        out->pred_p = rep.pred_p;
        // The library reports 0 when no integer-k prediction applies; the C
        // surface uses NaN for "not applicable" throughout.
        out->pred_z = rep.pred_z == 0.0 ? kNaN : rep.pred_z;
        out->m_pz_direct =
            rep.m_pz_direct.has_value() ? *rep.m_pz_direct : kNaN;
        out->n_points = rep.n_points;
        out->coarse_warning = rep.coarse_warning ? 1 : 0;
    });
}

int zh_tail_measure(double V, double X, int part, zh_grid grid,
                    zh_tail_result* out) {
    if (!out) return invalid("zh_tail_measure: out is NULL");
    return guarded([&] {
        zh::TailPart p;
        switch (part) {
            case ZH_TAIL_REAL: p = zh::TailPart::real; break;
            case ZH_TAIL_IMAG: p = zh::TailPart::imag; break;
            case ZH_TAIL_BOTH: p = zh::TailPart::both; break;
            default:
                throw std::invalid_argument(
                    "zh_tail_measure: part must be ZH_TAIL_{REAL,IMAG,BOTH}");
        }
        const zh::TailMeasureReport rep =
            zh::tail_measure(V, X, p, to_grid(grid));
        out->fraction = rep.fraction;
        out->n_points = rep.n_points;
    });
}

int zh_st_identity(double t, double X, double Y, const zh_zeros* zeros,
                   zh_st_result* out) {
    if (!zeros || !out) return invalid("zh_st_identity: NULL argument");
    return guarded([&] {
        const zh::StIdentityReport rep =
            zh::st_identity_check(t, X, Y, zeros->table);
        out->lhs_re = rep.lhs.real();
        out->lhs_im = rep.lhs.imag();
        out->rhs_re = rep.rhs.real();
        out->rhs_im = rep.rhs.imag();
        out->diff = rep.diff;
        out->error_budget = rep.error_budget;
    });
}

int zh_prime_sum_max(zh_grid grid, double X, zh_psum_max_result* out) {
    if (!out) return invalid("zh_prime_sum_max: out is NULL");
    return guarded([&] {
        const zh::PrimeSumMaxScan scan =
            zh::prime_sum_max_scan(to_grid(grid), X);
        out->empirical_max_re = scan.empirical_max_re;
        out->empirical_max_im = scan.empirical_max_im;
        out->t_at_max_re = scan.t_at_max_re;
        out->t_at_max_im = scan.t_at_max_im;
        out->rh_bound_re = scan.rh_bound_re;
        out->rh_bound_im = scan.rh_bound_im;
        out->unconditional = scan.unconditional;
        out->in_hypothesis = scan.in_hypothesis ? 1 : 0;
        out->n_points = scan.n_points;
    });
}

int zh_second_moment_arith(double X, uint64_t n_max, int with_direct,
                           zh_second_moment_result* out) {
    if (!out) return invalid("zh_second_moment_arith: out is NULL");
    return guarded([&] {
        const zh::SecondMomentArith rep =
            zh::second_moment_arith(X, n_max, with_direct != 0);
        out->product = rep.product;
        out->direct = rep.direct;
    });
}

int zh_fourth_moment_arith(double X, zh_fourth_moment_result* out) {
    if (!out) return invalid("zh_fourth_moment_arith: out is NULL");
    return guarded([&] {
        const zh::FourthMomentArith rep = zh::fourth_moment_arith(X);
        out->numerator = rep.numerator;
        out->denominator = rep.denominator;
        out->combined = rep.combined;
    });
}

/* ------------------------------------------------------------ verification */

int zh_verify(const char* suite, zh_check_callback cb, void* user,
              int* out_checks, int* out_failures) {
    if (!suite) return invalid("zh_verify: suite is NULL");
    return guarded([&] {
        const zh::SuiteReport rep = zh::run_suite(suite);
        if (cb)
            for (const auto& c : rep.checks)
                cb(c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), user);
        if (out_checks) *out_checks = (int)rep.checks.size();
        if (out_failures) *out_failures = rep.failures();
    });
}

}  // extern "C"
