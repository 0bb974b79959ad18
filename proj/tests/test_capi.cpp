// Tests for the C interface: lifecycle, value plumbing, error-code mapping,
// and the NaN conventions for "not applicable" fields.  Everything here goes
// through the shared library surface only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <zetahybrid.h>

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const char* name) { return fs::temp_directory_path() / name; }

struct CheckTally {
    int seen = 0;
    int failed = 0;
    std::vector<std::string> names;
};

void tally_cb(const char* name, int passed, const char*, void* user) {
    auto* t = static_cast<CheckTally*>(user);
    ++t->seen;
    if (!passed) ++t->failed;
    t->names.emplace_back(name);
}

}  // namespace

TEST_CASE("version and error-string basics") {
    REQUIRE(zh_version() != nullptr);
    CHECK(std::strcmp(zh_version(), "0.1.0") == 0);
    REQUIRE(zh_last_error() != nullptr);

    // A failing call leaves a nonempty message.
    CHECK(zh_primes_new(0, nullptr) == ZH_ERR_INVALID);
    CHECK(std::strlen(zh_last_error()) > 0);
}

TEST_CASE("prime table lifecycle and bounds") {
    zh_primes* pt = nullptr;
    REQUIRE(zh_primes_new(100, &pt) == ZH_OK);
    REQUIRE(pt != nullptr);

    uint64_t n = 0;
    CHECK(zh_primes_count(pt, &n) == ZH_OK);
    CHECK(n == 25);

    uint64_t p = 0;
    CHECK(zh_primes_get(pt, 0, &p) == ZH_OK);
    CHECK(p == 2);
    CHECK(zh_primes_get(pt, 24, &p) == ZH_OK);
    CHECK(p == 97);
    CHECK(zh_primes_get(pt, 25, &p) == ZH_ERR_INVALID);

    CHECK(zh_primes_count(nullptr, &n) == ZH_ERR_INVALID);
    zh_primes_free(pt);
    zh_primes_free(nullptr);  // free tolerates NULL

    // Sieve precondition violations surface as ZH_ERR_INVALID.
    zh_primes* bad = nullptr;
    CHECK(zh_primes_new(1, &bad) == ZH_ERR_INVALID);
    CHECK(bad == nullptr);
}

TEST_CASE("zero tables: find, query, save, load") {
    zh_zeros* z = nullptr;
    REQUIRE(zh_zeros_find(10.0, 30.0, &z) == ZH_OK);

    zh_zeros_info info;
    REQUIRE(zh_zeros_info_get(z, &info) == ZH_OK);
    CHECK(info.count == 3);
    CHECK(info.t_lo == doctest::Approx(10.0));
    CHECK(info.t_cov == doctest::Approx(30.0));
    CHECK(info.n_below == 0);
    CHECK(info.first == doctest::Approx(14.134725141734695).epsilon(1e-9));
    CHECK(info.last == doctest::Approx(25.010857580145688).epsilon(1e-9));

    double g = 0.0;
    REQUIRE(zh_zeros_get(z, 1, &g) == ZH_OK);
    CHECK(g == doctest::Approx(21.022039638771555).epsilon(1e-9));
    CHECK(zh_zeros_get(z, 3, &g) == ZH_ERR_INVALID);

    int64_t cnt = 0;
    CHECK(zh_zeros_count_to(z, 22.0, &cnt) == ZH_OK);
    CHECK(cnt == 2);
    CHECK(zh_zeros_count_to(z, 99.0, &cnt) == ZH_ERR_COVERAGE);

    double s = 0.0;
    CHECK(zh_zeros_s_of_t(z, 20.0, &s) == ZH_OK);
    CHECK(std::abs(s) < 1.5);

    const fs::path p = temp_file("zh_capi_zeros.txt");
    REQUIRE(zh_zeros_save(z, p.string().c_str()) == ZH_OK);
    zh_zeros* back = nullptr;
    REQUIRE(zh_zeros_load(p.string().c_str(), &back) == ZH_OK);
    zh_zeros_info binfo;
    REQUIRE(zh_zeros_info_get(back, &binfo) == ZH_OK);
    CHECK(binfo.count == info.count);
    double gb = 0.0;
    REQUIRE(zh_zeros_get(back, 0, &gb) == ZH_OK);
    CHECK(gb == doctest::Approx(info.first).epsilon(1e-9));
    zh_zeros_free(back);
    fs::remove(p);

    zh_zeros* missing = nullptr;
    CHECK(zh_zeros_load("/nonexistent/zh_no_such_file.txt", &missing) ==
          ZH_ERR_IO);
    CHECK(missing == nullptr);

    zh_zeros_free(z);

    zh_zeros* bad = nullptr;
    CHECK(zh_zeros_find(30.0, 10.0, &bad) == ZH_ERR_INVALID);
}

TEST_CASE("hybrid evaluation with and without a zero table") {
    zh_hybrid_result r;
    REQUIRE(zh_hybrid_eval(2000.6, 30.0, nullptr, 40.0, 0, &r) == ZH_OK);

    // Quotient identity: P * Z_quotient = zeta, from the returned parts.
    const double lhs_re = r.p_re * r.zq_re - r.p_im * r.zq_im;
    const double lhs_im = r.p_re * r.zq_im + r.p_im * r.zq_re;
    CHECK(lhs_re == doctest::Approx(r.zeta_re).epsilon(1e-9));
    CHECK(lhs_im == doctest::Approx(r.zeta_im).epsilon(1e-9));

    // Without zeros the direct-path fields are NaN.
    CHECK(std::isnan(r.zd_re));
    CHECK(std::isnan(r.residual));
    CHECK(std::isnan(r.tail_estimate));

    zh_zeros* z = nullptr;
    REQUIRE(zh_zeros_find(1950.0, 2050.0, &z) == ZH_OK);

    zh_hybrid_result rz;
    REQUIRE(zh_hybrid_eval(2000.6, 30.0, z, 40.0, 0, &rz) == ZH_OK);
    CHECK_FALSE(std::isnan(rz.zd_re));
    CHECK_FALSE(std::isnan(rz.residual));
    CHECK(rz.residual < 0.5);
    CHECK(rz.tail_estimate >= 0.0);

    // Stale window: table does not cover [t - window, t + window].
    zh_hybrid_result rc;
    CHECK(zh_hybrid_eval(2000.6, 30.0, z, 60.0, 0, &rc) == ZH_ERR_COVERAGE);

    // Strict range: X above t^(1/3), with and without zeros.
    CHECK(zh_hybrid_eval(2000.6, 30.0, nullptr, 40.0, 1, &rc) ==
          ZH_ERR_INVALID);
    CHECK(zh_hybrid_eval(2000.6, 30.0, z, 40.0, 1, &rc) == ZH_ERR_INVALID);

    zh_zeros_free(z);
}

TEST_CASE("coefficient tables through the C surface") {
    zh_coeffs* c = nullptr;
    REQUIRE(zh_coeffs_build_beta(1.0, 10.0, 1000, &c) == ZH_OK);

    zh_coeffs_info info;
    REQUIRE(zh_coeffs_info_get(c, &info) == ZH_OK);
    CHECK(info.k == 1.0);
    CHECK(info.X == 10.0);
    CHECK(info.n_max == 1000);
    CHECK(info.omega_cap == -1);
    CHECK(info.size > 10);
    CHECK(info.tail_bound > 0.0);

    double v = 0.0;
    CHECK(zh_coeffs_entry(c, 8, &v) == ZH_OK);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(zh_coeffs_entry(c, 16, &v) == ZH_OK);
    CHECK(v == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(zh_coeffs_entry(c, 11, &v) == ZH_OK);
    CHECK(v == 0.0);

    // D(-t) = conj(D(t)).
    double re1, im1, re2, im2;
    REQUIRE(zh_coeffs_eval(c, 7.3, &re1, &im1) == ZH_OK);
    REQUIRE(zh_coeffs_eval(c, -7.3, &re2, &im2) == ZH_OK);
    CHECK(re2 == doctest::Approx(re1).epsilon(1e-12));
    CHECK(im2 == doctest::Approx(-im1).epsilon(1e-12));

    const fs::path p = temp_file("zh_capi_coeffs.csv");
    REQUIRE(zh_coeffs_export_csv(c, p.string().c_str()) == ZH_OK);
    std::ifstream in(p);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "n,coefficient");
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == info.size);
    in.close();
    fs::remove(p);

    zh_coeffs* a = nullptr;
    REQUIRE(zh_coeffs_build_alpha(1.0, 10.0, 1e8, 1000, &a) == ZH_OK);
    zh_coeffs_info ainfo;
    REQUIRE(zh_coeffs_info_get(a, &ainfo) == ZH_OK);
    CHECK(ainfo.omega_cap > 0);
    double av = 0.0;
    CHECK(zh_coeffs_entry(a, 12, &av) == ZH_OK);
    CHECK(zh_coeffs_entry(c, 12, &v) == ZH_OK);
    CHECK(av == doctest::Approx(v).epsilon(1e-12));
    zh_coeffs_free(a);
    zh_coeffs_free(c);

    zh_coeffs* bad = nullptr;
    CHECK(zh_coeffs_build_beta(1.0, 1.0, 1000, &bad) == ZH_ERR_INVALID);
}

TEST_CASE("moment estimation families and predictions") {
    const zh_grid g{1000.0, 1010.0, 0.025};

    zh_moment_result em;
    REQUIRE(zh_moment(ZH_MOMENT_EULER, 2.0, 10.0, g, 0, &em) == ZH_OK);
    CHECK(em.n_points == 400);
    CHECK(em.value > 0.0);
    CHECK(em.std_error >= 0.0);
    CHECK(em.prediction == doctest::Approx(4.10107).epsilon(1e-4));
    CHECK(em.coarse_warning == 0);

    zh_moment_result zm;
    REQUIRE(zh_moment(ZH_MOMENT_ZETA, 2.0, 0.0, g, 0, &zm) == ZH_OK);
    CHECK(std::isnan(zm.prediction));
    CHECK(zm.value > 0.0);

    zh_moment_result qm;
    REQUIRE(zh_moment(ZH_MOMENT_QUOTIENT, 2.0, 10.0, g, 0, &qm) == ZH_OK);
    CHECK_FALSE(std::isnan(qm.prediction));
    CHECK(qm.prediction > 0.0);

    // Fractional k has no quotient prediction.
    REQUIRE(zh_moment(ZH_MOMENT_QUOTIENT, 1.0, 10.0, g, 0, &qm) == ZH_OK);
    CHECK(std::isnan(qm.prediction));

    // Coarse grid: warning by default, failure in strict mode.
    const zh_grid coarse{100000.0, 100100.0, 1.0};
    REQUIRE(zh_moment(ZH_MOMENT_EULER, 2.0, 10.0, coarse, 0, &em) == ZH_OK);
    CHECK(em.coarse_warning == 1);
    CHECK(zh_moment(ZH_MOMENT_EULER, 2.0, 10.0, coarse, 1, &em) ==
          ZH_ERR_INVALID);

    CHECK(zh_moment(99, 2.0, 10.0, g, 0, &em) == ZH_ERR_INVALID);
    const zh_grid degenerate{10.0, 5.0, 0.1};
    CHECK(zh_moment(ZH_MOMENT_ZETA, 2.0, 0.0, degenerate, 0, &em) ==
          ZH_ERR_INVALID);
}

TEST_CASE("splitting report plumbing") {
    const zh_grid g{1000.0, 1002.0, 0.1};

    zh_split_result s0;
    REQUIRE(zh_split(0.0, 10.0, g, nullptr, 50.0, 0, &s0) == ZH_OK);
    CHECK(s0.ratio == 1.0);
    CHECK(s0.m_pz == 1.0);
    CHECK(std::isnan(s0.m_pz_direct));
    CHECK(s0.n_points == 20);

    zh_split_result s1;
    REQUIRE(zh_split(1.0, 10.0, g, nullptr, 50.0, 0, &s1) == ZH_OK);
    CHECK(s1.ratio > 0.0);
    CHECK(s1.m_pz > 0.0);
    CHECK(s1.pred_p == doctest::Approx(4.10107).epsilon(1e-4));
    CHECK_FALSE(std::isnan(s1.pred_z));

    zh_split_result sf;
    REQUIRE(zh_split(0.5, 10.0, g, nullptr, 50.0, 0, &sf) == ZH_OK);
    CHECK(std::isnan(sf.pred_z));  // fractional k: no Z prediction

    CHECK(zh_split(-1.0, 10.0, g, nullptr, 50.0, 0, &sf) == ZH_ERR_INVALID);
}

TEST_CASE("tail fractions and the prime-sum maximum scan") {
    const zh_grid g{1000.0, 1010.0, 0.1};

    zh_tail_result t0;
    REQUIRE(zh_tail_measure(0.0, 10.0, ZH_TAIL_REAL, g, &t0) == ZH_OK);
    CHECK(t0.fraction == 1.0);
    CHECK(t0.n_points == 100);

    zh_tail_result tb;
    REQUIRE(zh_tail_measure(1.0, 10.0, ZH_TAIL_BOTH, g, &tb) == ZH_OK);
    CHECK(tb.fraction <= 1.0);
    CHECK(zh_tail_measure(1.0, 10.0, 7, g, &tb) == ZH_ERR_INVALID);

    zh_psum_max_result scan;
    REQUIRE(zh_prime_sum_max(g, 10.0, &scan) == ZH_OK);
    CHECK(scan.in_hypothesis == 0);
    CHECK(scan.empirical_max_re <= scan.unconditional);
    CHECK(scan.empirical_max_im <= scan.unconditional);
    CHECK(scan.rh_bound_im ==
          doctest::Approx((2.0 / 3.14159265358979324) * scan.rh_bound_re)
              .epsilon(1e-12));
    CHECK(scan.t_at_max_re >= 1000.0);
    CHECK(scan.t_at_max_re <= 1010.0);
}

TEST_CASE("convolution identity through the C surface") {
    zh_zeros* z = nullptr;
    REQUIRE(zh_zeros_find(1950.0, 2050.0, &z) == ZH_OK);

    zh_st_result st;
    REQUIRE(zh_st_identity(2000.0, 100.0, 40.0, z, &st) == ZH_OK);
    CHECK(st.diff <= 10.0 * st.error_budget);
    const double lhs = std::hypot(st.lhs_re - st.rhs_re, st.lhs_im - st.rhs_im);
    CHECK(st.diff == doctest::Approx(lhs).epsilon(1e-12));

    CHECK(zh_st_identity(2000.0, 100.0, 70.0, z, &st) == ZH_ERR_COVERAGE);
    CHECK(zh_st_identity(2000.0, 100.0, 1500.0, z, &st) == ZH_ERR_INVALID);
    CHECK(zh_st_identity(2000.0, 100.0, 40.0, nullptr, &st) ==
          ZH_ERR_INVALID);

    zh_zeros_free(z);
}

TEST_CASE("arithmetic factors through the C surface") {
    zh_second_moment_result sm;
    REQUIRE(zh_second_moment_arith(2.0, uint64_t(1) << 20, 1, &sm) == ZH_OK);
    CHECK(sm.product == doctest::Approx(sm.direct).epsilon(1e-9));

    zh_second_moment_result sm_skip;
    REQUIRE(zh_second_moment_arith(100.0, 1000000, 0, &sm_skip) == ZH_OK);
    CHECK(std::isnan(sm_skip.direct));
    CHECK(sm_skip.product > 0.0);

    zh_fourth_moment_result fm;
    REQUIRE(zh_fourth_moment_arith(10.0, &fm) == ZH_OK);
    CHECK(fm.combined ==
          doctest::Approx(fm.numerator * fm.denominator).epsilon(1e-12));

    CHECK(zh_second_moment_arith(1.0, 1000, 1, &sm) == ZH_ERR_INVALID);
    CHECK(zh_fourth_moment_arith(1.5, &fm) == ZH_ERR_INVALID);
}

TEST_CASE("self-check suites over the callback interface") {
    CheckTally tally;
    int checks = 0, failures = 0;
    REQUIRE(zh_verify("special", tally_cb, &tally, &checks, &failures) ==
            ZH_OK);
    CHECK(checks == tally.seen);
    CHECK(failures == tally.failed);
    CHECK(failures == 0);
    CHECK(checks >= 5);

    // Null callback and counters are all allowed.
    REQUIRE(zh_verify("arith", nullptr, nullptr, nullptr, nullptr) == ZH_OK);

    CHECK(zh_verify("no-such-suite", nullptr, nullptr, &checks, &failures) ==
          ZH_ERR_INVALID);
    CHECK(std::strlen(zh_last_error()) > 0);
}

TEST_CASE("worker count plumbing") {
    zh_set_worker_count(2);
    const zh_grid g{1000.0, 1001.0, 0.1};
    zh_moment_result two_workers;
    REQUIRE(zh_moment(ZH_MOMENT_EULER, 2.0, 10.0, g, 0, &two_workers) == ZH_OK);
    zh_set_worker_count(0);
    zh_moment_result default_workers;
    REQUIRE(zh_moment(ZH_MOMENT_EULER, 2.0, 10.0, g, 0, &default_workers) ==
            ZH_OK);
    // Deterministic reduction: worker count must not change the value.
    CHECK(two_workers.value == default_workers.value);
}
