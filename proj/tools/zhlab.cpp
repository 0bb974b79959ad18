// zhlab: command-line front end for the hybrid-model laboratory.
//
// One command per process.  Every data command emits a single JSON record
//   {operation, params, value, std_error, timestamp, git-describe}
// to stdout (or --json PATH), with all floats serialized at 17 significant
// digits and NaN mapped to null.  For a fixed configuration and a fixed
// zero table the record is bit-identical up to the timestamp, and
// `zhlab replay record.json` re-runs the configuration and verifies that.
//
// Links only the public C interface of the library.

#include <CLI11.hpp>
#include <json.hpp>
#include <zetahybrid.h>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

using ojson = nlohmann::ordered_json;

#ifndef ZH_GIT_DESCRIBE
#define ZH_GIT_DESCRIBE "untracked"
#endif

namespace {

// Failure that has already been described; carries the process exit code
// (1 = compute error, 2 = configuration error).
struct CliError {
    int exit_code;
    std::string message;
};

[[noreturn]] void config_error(const std::string& what) {
    throw CliError{2, "invalid configuration: " + what};
}

const char* code_name(int rc) {
    switch (rc) {
        case ZH_ERR_INVALID: return "invalid argument";
        case ZH_ERR_COVERAGE: return "coverage";
        case ZH_ERR_CAPACITY: return "capacity";
        case ZH_ERR_INFEASIBLE: return "infeasible";
        case ZH_ERR_INCOMPLETE: return "incomplete table";
        case ZH_ERR_IO: return "io";
        case ZH_ERR_NOMEM: return "out of memory";
        default: return "internal";
    }
}

// Library failure -> CliError with the module's message attached.
[[noreturn]] void lib_error(const char* op, int rc) {
    throw CliError{rc == ZH_ERR_INVALID ? 2 : 1,
                   std::string(op) + ": " + code_name(rc) + ": " +
                       zh_last_error()};
}

void require_ok(const char* op, int rc) {
    if (rc != ZH_OK) lib_error(op, rc);
}

/* ------------------------------------------------------------- JSON output */

void format_double(double v, std::string& out) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

// Serializer with fixed float formatting (17 significant digits) and
// insertion-ordered keys, so records are reproducible byte-for-byte.
void dump17(const ojson& j, std::string& out, int indent) {
    const std::string pad(indent, ' ');
    const std::string pad_in(indent + 2, ' ');
    switch (j.type()) {
        case ojson::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += nlohmann::json(it.key()).dump();
                out += ": ";
                dump17(it.value(), out, indent + 2);
            }
            out += "\n" + pad + "}";
            return;
        }
        case ojson::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump17(el, out, indent + 2);
            }
            out += "\n" + pad + "]";
            return;
        }
        case ojson::value_t::number_float:
            format_double(j.get<double>(), out);
            return;
        default:
            out += j.dump();  // strings (escaped), integers, bool, null
            return;
    }
}

std::string dump17(const ojson& j) {
    std::string out;
    dump17(j, out, 0);
    out += "\n";
    return out;
}

std::string iso_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

ojson make_record(const std::string& operation, ojson params, ojson value,
                  ojson std_error) {
    ojson rec;
    rec["operation"] = operation;
    rec["params"] = std::move(params);
    rec["value"] = std::move(value);
    rec["std_error"] = std::move(std_error);
    rec["timestamp"] = iso_utc_now();
    rec["git-describe"] = ZH_GIT_DESCRIBE;
    return rec;
}

/* -------------------------------------------------------------- utilities */

// Default grid step: 0.25 / log(t_end), the warn threshold of the moment
// drivers (integrands vary on scale 1/log t).
double default_step(double t_end) {
    return 0.25 / std::log(std::max(t_end, 3.0));
}

// The model's stated X-range for 2k-th moments is X <= (log T)^{theta_k}
// with theta_k = 2 sqrt(1 + 1/(2|k|)).  Configurations beyond
// (log T)^(theta_k - 0.05) are flagged (never rejected).
bool x_range_flagged(double X, double T, double k, double* bound_out) {
    if (!(T > 3.0) || !(std::abs(k) > 0.0) || !(X >= 2.0)) return false;
    const double theta = 2.0 * std::sqrt(1.0 + 0.5 / std::abs(k));
    const double bound = std::pow(std::log(T), theta - 0.05);
    if (bound_out) *bound_out = bound;
    return X > bound;
}

void warn_x_range(double X, double T, double k) {
    double bound = 0.0;
    if (x_range_flagged(X, T, k, &bound))
        std::fprintf(stderr,
                     "zhlab: flagged: X = %g exceeds the model range "
                     "(log T)^(theta_k - 0.05) = %.6g at T = %g, k = %g "
                     "(run continues)\n",
                     X, bound, T, k);
}

struct ZerosHandle {
    zh_zeros* h = nullptr;
    ~ZerosHandle() { zh_zeros_free(h); }
};

// Zero table from a file when `path` is nonempty, otherwise freshly located
// over [lo, hi].
void obtain_zeros(const std::string& path, double lo, double hi,
                  ZerosHandle& out) {
    if (!path.empty())
        require_ok("zeros load", zh_zeros_load(path.c_str(), &out.h));
    else
        require_ok("zeros find", zh_zeros_find(lo, hi, &out.h));
}

uint64_t get_u64(const ojson& p, const char* key) {
    return p.at(key).get<uint64_t>();
}
double get_d(const ojson& p, const char* key) {
    return p.at(key).is_null() ? std::nan("")
                               : p.at(key).get<double>();
}
std::string get_s(const ojson& p, const char* key) {
    return p.at(key).is_null() ? std::string() : p.at(key).get<std::string>();
}
bool get_b(const ojson& p, const char* key) { return p.at(key).get<bool>(); }

/* ---------------------------------------------------- compute per command */
// Each command's compute step takes the params object (exactly what the
// emitted record carries) and returns the full record, so `replay` can
// re-dispatch from a parsed record.  `side_effects` gates auxiliary file
// outputs (ordinate lists, CSV exports) so replay can skip them.

ojson compute_sieve(const ojson& p, bool side_effects) {
    const uint64_t limit = get_u64(p, "limit");
    zh_primes* h = nullptr;
    require_ok("sieve", zh_primes_new(limit, &h));
    std::unique_ptr<zh_primes, void (*)(zh_primes*)> guard(h, zh_primes_free);

    uint64_t count = 0;
    require_ok("sieve", zh_primes_count(h, &count));
    uint64_t largest = 0;
    if (count) require_ok("sieve", zh_primes_get(h, count - 1, &largest));

    const std::string list_out = get_s(p, "list_out");
    if (side_effects && !list_out.empty()) {
        std::ofstream f(list_out);
        if (!f) config_error("sieve: cannot open " + list_out);
        for (uint64_t i = 0; i < count; ++i) {
            uint64_t v = 0;
            require_ok("sieve", zh_primes_get(h, i, &v));
            f << v << '\n';
        }
        if (!f.flush()) config_error("sieve: write failure on " + list_out);
    }

    ojson value;
    value["count"] = count;
    value["largest"] = largest;
    return make_record("sieve", p, value, nullptr);
}

ojson compute_zeros(const ojson& p, bool side_effects) {
    ZerosHandle z;
    const std::string load = get_s(p, "load");
    if (!load.empty())
        require_ok("zeros load", zh_zeros_load(load.c_str(), &z.h));
    else
        require_ok("zeros find",
                   zh_zeros_find(get_d(p, "from"), get_d(p, "to"), &z.h));

    zh_zeros_info info;
    require_ok("zeros", zh_zeros_info_get(z.h, &info));

    const std::string out_path = get_s(p, "out");
    if (side_effects && !out_path.empty())
        require_ok("zeros save", zh_zeros_save(z.h, out_path.c_str()));

    ojson value;
    value["count"] = info.count;
    value["t_lo"] = info.t_lo;
    value["t_cov"] = info.t_cov;
    value["n_below"] = info.n_below;
    value["first"] = info.first;
    value["last"] = info.last;
    value["n_to_cov"] = (double)info.n_below + (double)info.count;
    return make_record("zeros", p, value, nullptr);
}

ojson compute_hybrid(const ojson& p, bool) {
    const double t = get_d(p, "t"), X = get_d(p, "x");
    const double window = get_d(p, "window");
    const std::string zpath = get_s(p, "zeros");

    ZerosHandle z;
    const bool with_zeros = get_b(p, "with_zeros");
    if (with_zeros) obtain_zeros(zpath, t - window - 5.0, t + window + 5.0, z);

    zh_hybrid_result r;
    require_ok("hybrid", zh_hybrid_eval(t, X, z.h, window,
                                        get_b(p, "strict_range") ? 1 : 0, &r));

    ojson value;
    value["zeta_re"] = r.zeta_re;
    value["zeta_im"] = r.zeta_im;
    value["p_re"] = r.p_re;
    value["p_im"] = r.p_im;
    value["z_quotient_re"] = r.zq_re;
    value["z_quotient_im"] = r.zq_im;
    value["z_direct_re"] = r.zd_re;
    value["z_direct_im"] = r.zd_im;
    value["residual"] = r.residual;
    value["tail_estimate"] = r.tail_estimate;
    return make_record("hybrid", p, value, nullptr);
}

ojson compute_coeffs(const ojson& p, bool side_effects) {
    const std::string kind = get_s(p, "kind");
    zh_coeffs* h = nullptr;
    if (kind == "beta")
        require_ok("coeffs", zh_coeffs_build_beta(get_d(p, "k"), get_d(p, "x"),
                                                  get_u64(p, "n_max"), &h));
    else if (kind == "alpha")
        require_ok("coeffs",
                   zh_coeffs_build_alpha(get_d(p, "k"), get_d(p, "x"),
                                         get_d(p, "t_scale"),
                                         get_u64(p, "n_max"), &h));
    else
        config_error("coeffs: kind must be beta or alpha");
    std::unique_ptr<zh_coeffs, void (*)(zh_coeffs*)> guard(h, zh_coeffs_free);

    zh_coeffs_info info;
    require_ok("coeffs", zh_coeffs_info_get(h, &info));

    const std::string csv = get_s(p, "csv");
    if (side_effects && !csv.empty())
        require_ok("coeffs csv", zh_coeffs_export_csv(h, csv.c_str()));

    double d0_re = 0.0, d0_im = 0.0;
    require_ok("coeffs", zh_coeffs_eval(h, 0.0, &d0_re, &d0_im));

    ojson value;
    value["size"] = info.size;
    value["omega_cap"] = info.omega_cap;
    value["tail_bound"] = info.tail_bound;
    value["dirichlet_at_0"] = d0_re;
    return make_record("coeffs", p, value, nullptr);
}

ojson compute_moment(const ojson& p, bool) {
    const std::string family = get_s(p, "family");
    int fam = -1;
    if (family == "zeta")
        fam = ZH_MOMENT_ZETA;
    else if (family == "euler")
        fam = ZH_MOMENT_EULER;
    else if (family == "quotient")
        fam = ZH_MOMENT_QUOTIENT;
    else
        config_error("moment: family must be zeta, euler, or quotient");

    const zh_grid grid{get_d(p, "t_start"), get_d(p, "t_end"),
                       get_d(p, "step")};
    if (fam != ZH_MOMENT_ZETA)
        warn_x_range(get_d(p, "x"), grid.t_end, 0.5 * get_d(p, "two_k"));

    zh_moment_result r;
    require_ok("moment",
               zh_moment(fam, get_d(p, "two_k"), get_d(p, "x"), grid,
                         get_b(p, "strict") ? 1 : 0, &r));

    ojson value;
    value["value"] = r.value;
    value["std_error"] = r.std_error;
    value["prediction"] = r.prediction;
    value["n_points"] = r.n_points;
    value["coarse_warning"] = r.coarse_warning != 0;
    return make_record("moment", p, value, r.std_error);
}

ojson compute_split(const ojson& p, bool) {
    const double k = get_d(p, "k"), X = get_d(p, "x");
    const zh_grid grid{get_d(p, "t_start"), get_d(p, "t_end"),
                       get_d(p, "step")};
    warn_x_range(X, grid.t_end, k);

    ZerosHandle z;
    if (get_b(p, "with_zeros"))
        obtain_zeros(get_s(p, "zeros"), grid.t_start - 60.0, grid.t_end + 60.0,
                     z);

    zh_split_result r;
    require_ok("split", zh_split(k, X, grid, z.h, get_d(p, "window"),
                                 get_b(p, "strict") ? 1 : 0, &r));

    ojson value;
    value["m_pz"] = r.m_pz;
    value["m_p"] = r.m_p;
    value["m_z"] = r.m_z;
    value["m_pz_err"] = r.m_pz_err;
    value["m_p_err"] = r.m_p_err;
    value["m_z_err"] = r.m_z_err;
    value["ratio"] = r.ratio;
    value["ratio_err"] = r.ratio_err;
    value["pred_p"] = r.pred_p;
    value["pred_z"] = r.pred_z;
    value["m_pz_direct"] = r.m_pz_direct;
    value["n_points"] = r.n_points;
    value["coarse_warning"] = r.coarse_warning != 0;
    return make_record("split", p, value, r.ratio_err);
}

ojson compute_tails(const ojson& p, bool) {
    const std::string part = get_s(p, "part");
    int pc = -1;
    if (part == "real")
        pc = ZH_TAIL_REAL;
    else if (part == "imag")
        pc = ZH_TAIL_IMAG;
    else if (part == "both")
        pc = ZH_TAIL_BOTH;
    else
        config_error("tails: part must be real, imag, or both");

    const zh_grid grid{get_d(p, "t_start"), get_d(p, "t_end"),
                       get_d(p, "step")};
    zh_tail_result r;
    require_ok("tails",
               zh_tail_measure(get_d(p, "v"), get_d(p, "x"), pc, grid, &r));

    ojson value;
    value["fraction"] = r.fraction;
    value["n_points"] = r.n_points;
    return make_record("tails", p, value, nullptr);
}

ojson compute_st_check(const ojson& p, bool) {
    const double t = get_d(p, "t"), Y = get_d(p, "y");
    ZerosHandle z;
    obtain_zeros(get_s(p, "zeros"), t - Y - 5.0, t + Y + 5.0, z);

    zh_st_result r;
    require_ok("st-check",
               zh_st_identity(t, get_d(p, "x"), Y, z.h, &r));

    ojson value;
    value["lhs_re"] = r.lhs_re;
    value["lhs_im"] = r.lhs_im;
    value["rhs_re"] = r.rhs_re;
    value["rhs_im"] = r.rhs_im;
    value["diff"] = r.diff;
    value["error_budget"] = r.error_budget;
    value["within_budget"] = r.diff <= 10.0 * r.error_budget;
    return make_record("st-check", p, value, nullptr);
}

ojson compute_psum_max(const ojson& p, bool) {
    const zh_grid grid{get_d(p, "t_start"), get_d(p, "t_end"),
                       get_d(p, "step")};
    zh_psum_max_result r;
    require_ok("psum-max", zh_prime_sum_max(grid, get_d(p, "x"), &r));

    ojson value;
    value["empirical_max_re"] = r.empirical_max_re;
    value["empirical_max_im"] = r.empirical_max_im;
    value["t_at_max_re"] = r.t_at_max_re;
    value["t_at_max_im"] = r.t_at_max_im;
    value["rh_bound_re"] = r.rh_bound_re;
    value["rh_bound_im"] = r.rh_bound_im;
    value["unconditional"] = r.unconditional;
    value["in_hypothesis"] = r.in_hypothesis != 0;
    value["n_points"] = r.n_points;
    return make_record("psum-max", p, value, nullptr);
}

ojson compute_arith4(const ojson& p, bool) {
    zh_second_moment_result sm;
    require_ok("arith4",
               zh_second_moment_arith(get_d(p, "x"), get_u64(p, "n_max"),
                                      get_b(p, "with_direct") ? 1 : 0, &sm));
    zh_fourth_moment_result fm;
    require_ok("arith4", zh_fourth_moment_arith(get_d(p, "x"), &fm));

    ojson value;
    value["second_product"] = sm.product;
    value["second_direct"] = sm.direct;
    value["fourth_numerator"] = fm.numerator;
    value["fourth_denominator"] = fm.denominator;
    value["fourth_combined"] = fm.combined;
    return make_record("arith4", p, value, nullptr);
}

ojson compute_verify(const ojson& p, bool side_effects) {
    struct Tally {
        int checks = 0, failures = 0;
        bool print = false;
    } tally;
    tally.print = side_effects;

    const std::string suite = get_s(p, "suite");
    const int rc = zh_verify(
        suite.c_str(),
        [](const char* name, int passed, const char* detail, void* user) {
            auto* t = static_cast<Tally*>(user);
            ++t->checks;
            if (!passed) ++t->failures;
            if (t->print)
                std::printf("%-4s %s%s%s%s\n", passed ? "ok" : "FAIL", name,
                            *detail ? "  [" : "", detail, *detail ? "]" : "");
        },
        &tally, nullptr, nullptr);
    require_ok("verify", rc);
    if (side_effects)
        std::printf("suite %s: %d checks, %d failures\n", suite.c_str(),
                    tally.checks, tally.failures);

    ojson value;
    value["checks"] = tally.checks;
    value["failures"] = tally.failures;
    return make_record("verify", p, value, nullptr);
}

ojson compute_sweep(const ojson& p, bool side_effects) {
    const auto t_list = p.at("t_list").get<std::vector<double>>();
    const auto x_list = p.at("x_list").get<std::vector<double>>();
    const auto k_list = p.at("k_list").get<std::vector<double>>();
    const double step_opt = get_d(p, "step");

    static constexpr const char* kCols[] = {
        "T",     "X",         "k",      "m_pz",   "m_p",      "m_z",
        "ratio", "ratio_err", "pred_p", "pred_z", "n_points"};

    ojson rows = ojson::array();
    for (double T : t_list)
        for (double X : x_list)
            for (double k : k_list) {
                warn_x_range(X, 2.0 * T, k);
                const double step =
                    std::isnan(step_opt) ? default_step(2.0 * T) : step_opt;
                const zh_grid grid{T, 2.0 * T, step};
                zh_split_result r;
                require_ok("sweep",
                           zh_split(k, X, grid, nullptr, 50.0, 0, &r));
                rows.push_back(ojson::array(
                    {T, X, k, r.m_pz, r.m_p, r.m_z, r.ratio, r.ratio_err,
                     r.pred_p, r.pred_z, (double)r.n_points}));
            }

    const std::string out = get_s(p, "out");
    if (side_effects && !out.empty()) {
        std::ofstream csv(out);
        if (!csv) config_error("sweep: cannot open " + out);
        for (std::size_t c = 0; c < std::size(kCols); ++c)
            csv << (c ? "," : "") << kCols[c];
        csv << '\n';
        for (const auto& row : rows) {
            std::string line;
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) line += ',';
                format_double(row[c].get<double>(), line);
            }
            csv << line << '\n';
        }
        if (!csv.flush()) config_error("sweep: write failure on " + out);

        // Companion plot script: splitting ratio against T, one series per
        // (X, k) combination.
        std::ofstream gp(out + ".gp");
        if (gp) {
            gp << "# gnuplot script for " << out << "\n"
               << "set datafile separator comma\n"
               << "set logscale x\n"
               << "set xlabel 'T'\n"
               << "set ylabel 'moment ratio'\n"
               << "set key outside\n"
               << "plot '" << out
               << "' every ::1 using 1:7 with linespoints title 'ratio', "
                  "1 with lines dashtype 2 title 'split limit'\n";
        }
    }

    ojson value;
    value["rows"] = rows;
    value["columns"] = ojson::array();
    for (const char* c : kCols) value["columns"].push_back(c);
    return make_record("sweep", p, value, nullptr);
}

ojson compute(const std::string& op, const ojson& params, bool side_effects) {
    if (op == "sieve") return compute_sieve(params, side_effects);
    if (op == "zeros") return compute_zeros(params, side_effects);
    if (op == "hybrid") return compute_hybrid(params, side_effects);
    if (op == "coeffs") return compute_coeffs(params, side_effects);
    if (op == "moment") return compute_moment(params, side_effects);
    if (op == "split") return compute_split(params, side_effects);
    if (op == "tails") return compute_tails(params, side_effects);
    if (op == "st-check") return compute_st_check(params, side_effects);
    if (op == "psum-max") return compute_psum_max(params, side_effects);
    if (op == "arith4") return compute_arith4(params, side_effects);
    if (op == "verify") return compute_verify(params, side_effects);
    if (op == "sweep") return compute_sweep(params, side_effects);
    config_error("unknown operation '" + op + "'");
}

/* ------------------------------------------------------------------ output */

void emit(const ojson& record, const std::string& json_path) {
    const std::string text = dump17(record);
    if (json_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(json_path);
    if (!f) config_error("cannot open " + json_path);
    f << text;
    if (!f.flush()) config_error("write failure on " + json_path);
}

int run_replay(const std::string& path, const std::string& json_path) {
    std::ifstream f(path);
    if (!f) config_error("replay: cannot open " + path);
    ojson record;
    try {
        record = ojson::parse(f);
    } catch (const std::exception& e) {
        config_error(std::string("replay: malformed record: ") + e.what());
    }
    if (!record.contains("operation") || !record.contains("params") ||
        !record.contains("value"))
        config_error("replay: record lacks operation/params/value");

    const std::string op = record["operation"].get<std::string>();
    ojson params = record["params"];
    const ojson fresh = compute(op, params, /*side_effects=*/false);

    std::string got, want;
    dump17(fresh["value"], got, 0);
    dump17(record["value"], want, 0);
    std::string got_se, want_se;
    dump17(fresh["std_error"], got_se, 0);
    dump17(record["std_error"], want_se, 0);

    const bool match = got == want && got_se == want_se;
    if (!json_path.empty() || !match) emit(fresh, json_path);
    if (match) {
        std::fprintf(stderr, "replay: %s record reproduced exactly\n",
                     op.c_str());
        return 0;
    }
    std::fprintf(stderr, "replay: MISMATCH for %s (fresh record above)\n",
                 op.c_str());
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the hybrid "
                 "Euler-product/Hadamard-product model of zeta"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string json_path;
    int workers = 0;
    bool strict = false;
    app.add_option("--json", json_path,
                   "write the JSON record here instead of stdout");
    app.add_option("--workers", workers,
                   "worker threads for grid evaluation (0 = default)");
    app.add_flag("--strict", strict,
                 "turn grid coarseness warnings into failures");

    // ---- sieve ----
    auto* sc_sieve = app.add_subcommand("sieve", "prime table statistics");
    uint64_t sieve_limit = 0;
    std::string sieve_list;
    sc_sieve->add_option("--limit", sieve_limit, "sieve primes up to here")
        ->required();
    sc_sieve->add_option("--list-out", sieve_list,
                         "also write one prime per line to this file");

    // ---- zeros ----
    auto* sc_zeros =
        app.add_subcommand("zeros", "locate, load, or export zero ordinates");
    double zeros_from = 0.0, zeros_to = 0.0;
    std::string zeros_load, zeros_out;
    sc_zeros->add_option("--from", zeros_from, "lower end (default 0)");
    auto* zeros_to_opt =
        sc_zeros->add_option("--to", zeros_to, "upper end of the scan");
    sc_zeros->add_option("--load", zeros_load,
                         "load and re-verify this ordinate file instead of "
                         "scanning");
    sc_zeros->add_option("--out", zeros_out,
                         "write ordinates here, one per line");

    // ---- hybrid ----
    auto* sc_hybrid = app.add_subcommand(
        "hybrid", "evaluate zeta, the partial Euler product, and both "
                  "Hadamard-product paths at one point");
    double hy_t = 0.0, hy_x = 0.0, hy_window = 50.0;
    std::string hy_zeros;
    bool hy_no_zeros = false, hy_strict_range = false;
    sc_hybrid->add_option("--t", hy_t, "ordinate t")->required();
    sc_hybrid->add_option("--x,--X", hy_x, "prime cutoff X")->required();
    sc_hybrid->add_option("--zeros", hy_zeros,
                          "ordinate file for the zero-sum path (default: "
                          "locate on demand)");
    sc_hybrid->add_option("--window", hy_window,
                          "zero-sum window around t (default 50)");
    sc_hybrid->add_flag("--no-zeros", hy_no_zeros,
                        "skip the zero-sum path entirely");
    sc_hybrid->add_flag("--strict-range", hy_strict_range,
                        "fail when X leaves [2, t^(1/3)]");

    // ---- coeffs ----
    auto* sc_coeffs = app.add_subcommand(
        "coeffs", "Dirichlet-polynomial coefficient tables");
    std::string co_kind = "beta", co_csv;
    double co_k = 1.0, co_x = 0.0, co_t = 1e8;
    uint64_t co_nmax = 100000;
    sc_coeffs->add_option("--kind", co_kind, "beta or alpha (default beta)");
    sc_coeffs->add_option("--k", co_k, "exponent k (default 1)");
    sc_coeffs->add_option("--x,--X", co_x, "prime cutoff X")->required();
    sc_coeffs->add_option("--T", co_t,
                          "height scale driving the alpha truncation order "
                          "(default 1e8)");
    sc_coeffs->add_option("--n-max", co_nmax,
                          "support cap (default 1e5)");
    sc_coeffs->add_option("--csv", co_csv, "export the table as CSV here");

    // ---- moment ----
    auto* sc_moment = app.add_subcommand(
        "moment", "grid moment of one integrand family with bootstrap error");
    std::string mo_family = "zeta";
    double mo_two_k = 2.0, mo_x = 10.0, mo_t0 = 0.0, mo_t1 = 0.0,
           mo_step = 0.0;
    sc_moment->add_option("--family", mo_family,
                          "zeta, euler, or quotient (default zeta)");
    sc_moment->add_option("--two-k", mo_two_k, "moment exponent 2k "
                                               "(default 2)");
    sc_moment->add_option("--x,--X", mo_x,
                          "prime cutoff X (euler/quotient; default 10)");
    sc_moment->add_option("--t-start", mo_t0, "grid start")->required();
    sc_moment->add_option("--t-end", mo_t1, "grid end")->required();
    sc_moment->add_option("--step", mo_step,
                          "grid step (default 0.25/log t_end)");

    // ---- split ----
    auto* sc_split = app.add_subcommand(
        "split", "joint vs product-of-marginals moment ratio on one grid");
    double sp_k = 1.0, sp_x = 10.0, sp_t0 = 0.0, sp_t1 = 0.0, sp_step = 0.0,
           sp_window = 50.0;
    std::string sp_zeros;
    bool sp_direct = false;
    sc_split->add_option("--k", sp_k, "moment parameter k (default 1)");
    sc_split->add_option("--x,--X", sp_x, "prime cutoff X (default 10)");
    sc_split->add_option("--t-start", sp_t0, "grid start")->required();
    sc_split->add_option("--t-end", sp_t1, "grid end")->required();
    sc_split->add_option("--step", sp_step,
                         "grid step (default 0.25/log t_end)");
    sc_split->add_flag("--direct", sp_direct,
                       "also compute the joint moment through the zero-sum "
                       "path (needs zeros)");
    sc_split->add_option("--zeros", sp_zeros,
                         "ordinate file for --direct (default: locate on "
                         "demand)");
    sc_split->add_option("--window", sp_window,
                         "zero-sum window (default 50)");

    // ---- tails ----
    auto* sc_tails = app.add_subcommand(
        "tails", "exceedance fraction of the prime sum over a grid");
    double ta_v = 1.0, ta_x = 10.0, ta_t0 = 0.0, ta_t1 = 0.0, ta_step = 0.0;
    std::string ta_part = "real";
    sc_tails->add_option("--v", ta_v, "threshold V (default 1)");
    sc_tails->add_option("--x,--X", ta_x, "prime cutoff X (default 10)");
    sc_tails->add_option("--part", ta_part,
                         "real, imag, or both (default real)");
    sc_tails->add_option("--t-start", ta_t0, "grid start")->required();
    sc_tails->add_option("--t-end", ta_t1, "grid end")->required();
    sc_tails->add_option("--step", ta_step,
                         "grid step (default 0.25/log t_end)");

    // ---- st-check ----
    auto* sc_st = app.add_subcommand(
        "st-check", "prime sum against its S(t)-convolution identity");
    double st_t = 0.0, st_x = 0.0, st_y = 50.0;
    std::string st_zeros;
    sc_st->add_option("--t", st_t, "center ordinate t")->required();
    sc_st->add_option("--x,--X", st_x, "prime cutoff X")->required();
    sc_st->add_option("--y", st_y, "convolution half-width Y (default 50)");
    sc_st->add_option("--zeros", st_zeros,
                      "ordinate file covering [t-Y, t+Y] (default: locate "
                      "on demand)");

    // ---- psum-max ----
    auto* sc_psum = app.add_subcommand(
        "psum-max", "maximum |Re| and |Im| of the prime sum over a grid");
    double pm_x = 0.0, pm_t0 = 0.0, pm_t1 = 0.0, pm_step = 0.0;
    sc_psum->add_option("--x,--X", pm_x, "prime cutoff X")->required();
    sc_psum->add_option("--t-start", pm_t0, "grid start")->required();
    sc_psum->add_option("--t-end", pm_t1, "grid end")->required();
    sc_psum->add_option("--step", pm_step,
                        "grid step (default 0.25/log t_end)");

    // ---- arith4 ----
    auto* sc_arith = app.add_subcommand(
        "arith4", "arithmetic factors of the second and fourth moments");
    double ar_x = 0.0;
    uint64_t ar_nmax = 1000000;
    bool ar_skip_direct = false;
    sc_arith->add_option("--x,--X", ar_x, "prime cutoff X")->required();
    sc_arith->add_option("--n-max", ar_nmax,
                         "direct double-sum support cap (default 1e6)");
    sc_arith->add_flag("--skip-direct", ar_skip_direct,
                       "skip the quadratic direct sum (large X)");

    // ---- verify ----
    auto* sc_verify =
        app.add_subcommand("verify", "run a self-check suite");
    std::string ve_suite = "all";
    sc_verify->add_option("--suite", ve_suite,
                          "arith, special, zeta, coeffs, hybrid, ladder, "
                          "moments, or all (default all)");

    // ---- sweep ----
    auto* sc_sweep = app.add_subcommand(
        "sweep", "splitting ratio over a (T, X, k) parameter grid, one CSV");
    std::vector<double> sw_t, sw_x, sw_k;
    double sw_step = 0.0;
    std::string sw_out;
    sc_sweep->add_option("--t-list", sw_t,
                         "T values; each spans the window [T, 2T]")
        ->required()
        ->delimiter(',');
    sc_sweep->add_option("--x-list", sw_x, "X values")
        ->required()
        ->delimiter(',');
    sc_sweep->add_option("--k-list", sw_k, "k values")
        ->required()
        ->delimiter(',');
    sc_sweep->add_option("--step", sw_step,
                         "grid step (default 0.25/log(2T) per window)");
    sc_sweep->add_option("--out", sw_out, "CSV output path (a gnuplot "
                                          "script lands beside it)")
        ->required();

    // ---- replay ----
    auto* sc_replay = app.add_subcommand(
        "replay", "re-run a JSON record and verify it reproduces");
    std::string rp_path;
    sc_replay->add_option("record", rp_path, "record file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (workers != 0) zh_set_worker_count(workers);

        ojson p;
        std::string op;
        if (app.got_subcommand(sc_sieve)) {
            op = "sieve";
            if (sieve_limit < 2)
                config_error("sieve: requires --limit >= 2");
            p["limit"] = sieve_limit;
            p["list_out"] = sieve_list.empty() ? ojson(nullptr)
                                               : ojson(sieve_list);
        } else if (app.got_subcommand(sc_zeros)) {
            op = "zeros";
            if (zeros_load.empty() && zeros_to_opt->count() == 0)
                config_error("zeros: requires --to (scan) or --load (file)");
            if (zeros_load.empty() && !(zeros_to > zeros_from))
                config_error("zeros: requires --to > --from");
            p["from"] = zeros_from;
            p["to"] = zeros_to;
            p["load"] =
                zeros_load.empty() ? ojson(nullptr) : ojson(zeros_load);
            p["out"] = zeros_out.empty() ? ojson(nullptr) : ojson(zeros_out);
        } else if (app.got_subcommand(sc_hybrid)) {
            op = "hybrid";
            if (!(hy_x >= 2.0))
                config_error("hybrid: requires X >= 2 (prime cutoff)");
            if (!(hy_window > 0.0))
                config_error("hybrid: requires --window > 0");
            p["t"] = hy_t;
            p["x"] = hy_x;
            p["window"] = hy_window;
            p["with_zeros"] = !hy_no_zeros;
            p["zeros"] = hy_zeros.empty() ? ojson(nullptr) : ojson(hy_zeros);
            p["strict_range"] = hy_strict_range;
        } else if (app.got_subcommand(sc_coeffs)) {
            op = "coeffs";
            if (co_kind != "beta" && co_kind != "alpha")
                config_error("coeffs: --kind must be beta or alpha");
            if (!(co_x >= 2.0))
                config_error("coeffs: requires X >= 2 (prime cutoff)");
            if (co_nmax < 1) config_error("coeffs: requires --n-max >= 1");
            p["kind"] = co_kind;
            p["k"] = co_k;
            p["x"] = co_x;
            p["t_scale"] = co_t;
            p["n_max"] = co_nmax;
            p["csv"] = co_csv.empty() ? ojson(nullptr) : ojson(co_csv);
        } else if (app.got_subcommand(sc_moment)) {
            op = "moment";
            if (!(mo_t1 > mo_t0))
                config_error("moment: requires --t-end > --t-start");
            if (mo_family != "zeta" && !(mo_x >= 2.0))
                config_error("moment: requires X >= 2 (prime cutoff)");
            if (mo_step < 0.0) config_error("moment: requires --step > 0");
            p["family"] = mo_family;
            p["two_k"] = mo_two_k;
            p["x"] = mo_x;
            p["t_start"] = mo_t0;
            p["t_end"] = mo_t1;
            p["step"] = mo_step > 0.0 ? mo_step : default_step(mo_t1);
            p["strict"] = strict;
        } else if (app.got_subcommand(sc_split)) {
            op = "split";
            if (!(sp_t1 > sp_t0))
                config_error("split: requires --t-end > --t-start");
            if (!(sp_x >= 2.0))
                config_error("split: requires X >= 2 (prime cutoff)");
            if (!(sp_k >= 0.0)) config_error("split: requires --k >= 0");
            p["k"] = sp_k;
            p["x"] = sp_x;
            p["t_start"] = sp_t0;
            p["t_end"] = sp_t1;
            p["step"] = sp_step > 0.0 ? sp_step : default_step(sp_t1);
            p["with_zeros"] = sp_direct;
            p["zeros"] = sp_zeros.empty() ? ojson(nullptr) : ojson(sp_zeros);
            p["window"] = sp_window;
            p["strict"] = strict;
        } else if (app.got_subcommand(sc_tails)) {
            op = "tails";
            if (!(ta_t1 > ta_t0))
                config_error("tails: requires --t-end > --t-start");
            if (!(ta_x >= 2.0))
                config_error("tails: requires X >= 2 (prime cutoff)");
            if (!(ta_v >= 0.0)) config_error("tails: requires --v >= 0");
            p["v"] = ta_v;
            p["x"] = ta_x;
            p["part"] = ta_part;
            p["t_start"] = ta_t0;
            p["t_end"] = ta_t1;
            p["step"] = ta_step > 0.0 ? ta_step : default_step(ta_t1);
        } else if (app.got_subcommand(sc_st)) {
            op = "st-check";
            if (!(st_x >= 2.0))
                config_error("st-check: requires X >= 2 (prime cutoff)");
            if (!(st_y > 0.0 && st_y <= st_t / 2.0))
                config_error("st-check: requires 0 < Y <= t/2");
            p["t"] = st_t;
            p["x"] = st_x;
            p["y"] = st_y;
            p["zeros"] = st_zeros.empty() ? ojson(nullptr) : ojson(st_zeros);
        } else if (app.got_subcommand(sc_psum)) {
            op = "psum-max";
            if (!(pm_t1 > pm_t0))
                config_error("psum-max: requires --t-end > --t-start");
            if (!(pm_x >= 2.0))
                config_error("psum-max: requires X >= 2 (prime cutoff)");
            p["x"] = pm_x;
            p["t_start"] = pm_t0;
            p["t_end"] = pm_t1;
            p["step"] = pm_step > 0.0 ? pm_step : default_step(pm_t1);
        } else if (app.got_subcommand(sc_arith)) {
            op = "arith4";
            if (!(ar_x >= 2.0))
                config_error("arith4: requires X >= 2 (prime cutoff)");
            p["x"] = ar_x;
            p["n_max"] = ar_nmax;
            p["with_direct"] = !ar_skip_direct;
        } else if (app.got_subcommand(sc_verify)) {
            op = "verify";
            p["suite"] = ve_suite;
        } else if (app.got_subcommand(sc_sweep)) {
            op = "sweep";
            for (double t : sw_t)
                if (!(t > 0.0)) config_error("sweep: T values must be > 0");
            for (double x : sw_x)
                if (!(x >= 2.0))
                    config_error("sweep: X values must be >= 2");
            for (double k : sw_k)
                if (!(k >= 0.0)) config_error("sweep: k values must be >= 0");
            p["t_list"] = sw_t;
            p["x_list"] = sw_x;
            p["k_list"] = sw_k;
            p["step"] = sw_step > 0.0 ? ojson(sw_step) : ojson(nullptr);
            p["out"] = sw_out;
        } else if (app.got_subcommand(sc_replay)) {
            return run_replay(rp_path, json_path);
        }

        const ojson record = compute(op, p, /*side_effects=*/true);
        if (op == "verify") {
            // Console lines already printed; the record only on request.
            if (!json_path.empty()) emit(record, json_path);
            return record["value"]["failures"].get<int>() == 0 ? 0 : 1;
        }
        emit(record, json_path);
        return 0;
    } catch (const CliError& e) {
        std::fprintf(stderr, "zhlab: %s\n", e.message.c_str());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "zhlab: internal error: %s\n", e.what());
        return 1;
    }
}
