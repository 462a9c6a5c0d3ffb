#pragma once

#include <cstdint>
#include <vector>

namespace mltc {

/// 2x2 co-occurrence counts within one stratum:
///   a = both conditions, b = A only, c = B only, d = neither.
struct ContingencyTable {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;

    std::int64_t n() const { return a + b + c + d; }
};

enum class TestKind { fisher, chi_squared };

struct OddsRatioCi {
    double odds_ratio = 1.0;
    double ci_low = 1.0;
    double ci_high = 1.0;
    bool haldane_corrected = false;  // +0.5 applied to all cells (some cell was 0)
};

/// Two-sided Fisher exact p: the sum of hypergeometric point probabilities,
/// over all tables sharing the observed margins, that are <= the observed
/// table's point probability (with 1e-12 relative slack on the comparison).
/// Evaluated in log space; never overflows. Result in (0, 1].
double fisher_exact_two_sided(const ContingencyTable& t);

/// Pearson chi-squared statistic, 1 df, no continuity correction.
/// Throws std::invalid_argument on a zero row/column margin.
double chi_squared_statistic(const ContingencyTable& t);

/// Upper-tail p of the chi-squared statistic (1 df).
double chi_squared_p(const ContingencyTable& t);

struct TestResult {
    double p = 1.0;
    TestKind used = TestKind::fisher;
};

/// Fisher when any expected cell count is below 5, chi-squared otherwise.
TestResult select_test(const ContingencyTable& t);

/// OR = ad/bc with the Woolf log-method CI at the given level (default 95%).
/// A zero anywhere triggers the Haldane-Anscombe +0.5 correction for both the
/// point estimate and the interval; the result is flagged.
OddsRatioCi odds_ratio_ci(const ContingencyTable& t, double level = 0.95);

/// Cramer's V for a 2x2 table: |ad - bc| / sqrt of the margin product.
/// Defined as 0 when any margin is empty.
double cramers_v(const ContingencyTable& t);

/// Benjamini-Hochberg step-up adjustment. Input order is preserved in the
/// output. Throws ValidationError on any value outside (0, 1].
std::vector<double> bh_fdr(const std::vector<double>& p_values);

}  // namespace mltc
