// Critical-line zeta machinery: evaluation, Hardy Z, zero location, S(t).
#pragma once

#include <filesystem>
#include <vector>

#include "zetahybrid/common.hpp"

namespace zh {

// Table of positive ordinates gamma of critical-line zeros, certified
// complete over [t_lo, t_cov].  n_below counts zeros at or below t_lo
// (0 when t_lo = 0); counting queries add it back so windows high up the
// line work without tabulating everything beneath them.
struct ZeroTable {
    std::vector<double> ordinates;  // strictly ascending, in (t_lo, t_cov]
    double t_lo = 0.0;
    double t_cov = 0.0;
    long n_below = 0;
    enum class Source { computed, imported };
    Source source = Source::computed;

    // N(t): number of zeros with ordinate <= t.  Throws CoverageError
    // outside [t_lo, t_cov].
    long count_to(double t) const;
    // Number of zeros strictly below t (left limit at a zero ordinate).
    long count_before(double t) const;
};

// zeta(s) by Euler-Maclaurin.  Valid for 0 < Re s <= 2, |Im s| <= 1e7,
// s != 1; absolute error ~1e-13 at desk heights.  Serves as the slow,
// high-accuracy reference path.
cplx zeta_em(cplx s);

// Hardy Z(t) by the Riemann-Siegel formula: main sum plus correction terms
// through fourth order.  Intended for t >= 50 where its absolute error is
// below 3e-7 (decaying like t^{-11/4}).
double hardy_z_rs(double t);

// zeta(1/2+it) for |t| <= 1e7.  Euler-Maclaurin below t = 50, Riemann-
// Siegel above; negative t by conjugation.  Absolute error <= 1e-6
// throughout, <=1e-13 on the Euler-Maclaurin side.
cplx zeta_critical(double t);

// Z(t) = e^{i theta(t)} zeta(1/2+it), real-valued; same backend split as
// zeta_critical.
double hardy_z(double t);

// theta(t) valid down to t = 0 (Stirling with argument shift below t = 5,
// asymptotic series above).
double theta_full(double t);

// Smooth part of the zero-counting function, theta(t)/pi + 1.
double counting_main_term(double t);

// Locate all zeros with ordinates in (t_min, t_max]: scan Hardy Z at step
// 0.05, bisect sign changes to width 1e-9, then re-scan at finer steps
// while the count disagrees with the counting function.  Throws
// IncompleteTableError if a deficit > 3 persists.
ZeroTable find_zeros(double t_min, double t_max);

// S(t) = N(t) - theta(t)/pi - 1 with N from the table (left limit at zero
// ordinates).  Throws CoverageError outside the table's certified range.
double s_of_t(double t, const ZeroTable& zeros);

// One ordinate per line, ascending, 9 decimal places.
void save_zeros(const ZeroTable& tab, const std::filesystem::path& path);

// Read a one-ordinate-per-line file, re-verify each entry brackets a sign
// change of Hardy Z, and rebuild the coverage metadata.  Throws
// std::runtime_error on malformed input, IncompleteTableError if the
// verification fails.
ZeroTable load_zeros(const std::filesystem::path& path);

}  // namespace zh
