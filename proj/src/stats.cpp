#include "mltc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "mltc/common.hpp"

namespace mltc {

namespace {

// Shared log-factorial table. Grows on demand; reads after the resize are
// index-stable because the vector is only ever extended under the lock.
std::vector<double>& log_factorials(std::int64_t upto) {
    static std::vector<double> table{0.0, 0.0};  // lf(0), lf(1)
    static std::mutex m;
    std::lock_guard lock(m);
    while (static_cast<std::int64_t>(table.size()) <= upto)
        table.push_back(table.back() + std::log(static_cast<double>(table.size())));
    return table;
}

void require_counts(const ContingencyTable& t) {
    if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0)
        throw std::invalid_argument("contingency table cells must be non-negative");
    if (t.n() < 1) throw std::invalid_argument("contingency table must have n >= 1");
}

// z such that P(|Z| <= z) = level. The conventional 1.959964 is pinned for
// the 95% default; other levels solve erf(z/sqrt 2) = level by bisection.
double normal_quantile_two_sided(double level) {
    if (level == 0.95) return 1.959964;
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::erf(mid / std::sqrt(2.0)) < level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double fisher_exact_two_sided(const ContingencyTable& t) {
    require_counts(t);
    const std::int64_t n = t.n();
    const std::int64_t r1 = t.a + t.b;  // row margin for condition A carriers
    const std::int64_t c1 = t.a + t.c;  // column margin for condition B carriers
    const auto& lf = log_factorials(n);

    // log P(a = k) for the hypergeometric with these margins
    const double base = lf[r1] + lf[n - r1] + lf[c1] + lf[n - c1] - lf[n];
    const auto log_pmf = [&](std::int64_t k) {
        return base - lf[k] - lf[r1 - k] - lf[c1 - k] - lf[n - r1 - c1 + k];
    };

    const std::int64_t k_lo = std::max<std::int64_t>(0, r1 + c1 - n);
    const std::int64_t k_hi = std::min(r1, c1);
    const double lp_obs = log_pmf(t.a);
    const double cutoff = lp_obs + std::log1p(1e-12);

    // Accumulate relative to the observed table's log probability; each kept
    // term is at most e^cutoff so the scaled sum cannot overflow.
    double scaled_sum = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const double lp = log_pmf(k);
        if (lp <= cutoff) scaled_sum += std::exp(lp - lp_obs);
    }
    double p = std::exp(lp_obs + std::log(scaled_sum));
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

double chi_squared_statistic(const ContingencyTable& t) {
    require_counts(t);
    const double n = static_cast<double>(t.n());
    const double r1 = static_cast<double>(t.a + t.b), r2 = static_cast<double>(t.c + t.d);
    const double c1 = static_cast<double>(t.a + t.c), c2 = static_cast<double>(t.b + t.d);
    if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0)
        throw std::invalid_argument("chi-squared undefined: zero row/column margin");
    const double obs[4] = {double(t.a), double(t.b), double(t.c), double(t.d)};
    const double exp_[4] = {r1 * c1 / n, r1 * c2 / n, r2 * c1 / n, r2 * c2 / n};
    double x2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double diff = obs[i] - exp_[i];
        x2 += diff * diff / exp_[i];
    }
    return x2;
}

double chi_squared_p(const ContingencyTable& t) {
    const double x2 = chi_squared_statistic(t);
    // 1 df: X^2 = Z^2, so the upper tail is erfc(sqrt(X^2 / 2)).
    const double p = std::erfc(std::sqrt(x2 / 2.0));
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

TestResult select_test(const ContingencyTable& t) {
    require_counts(t);
    const double n = static_cast<double>(t.n());
    const double r1 = static_cast<double>(t.a + t.b), r2 = static_cast<double>(t.c + t.d);
    const double c1 = static_cast<double>(t.a + t.c), c2 = static_cast<double>(t.b + t.d);
    const double expected[4] = {r1 * c1 / n, r1 * c2 / n, r2 * c1 / n, r2 * c2 / n};
    const bool any_small = std::any_of(std::begin(expected), std::end(expected),
                                       [](double e) { return e < 5.0; });
    if (any_small) return {fisher_exact_two_sided(t), TestKind::fisher};
    return {chi_squared_p(t), TestKind::chi_squared};
}

OddsRatioCi odds_ratio_ci(const ContingencyTable& t, double level) {
    require_counts(t);
    if (level <= 0.0 || level >= 1.0) throw std::invalid_argument("confidence level must be in (0,1)");
    OddsRatioCi out;
    double a = double(t.a), b = double(t.b), c = double(t.c), d = double(t.d);
    if (t.a == 0 || t.b == 0 || t.c == 0 || t.d == 0) {
        a += 0.5;
        b += 0.5;
        c += 0.5;
        d += 0.5;
        out.haldane_corrected = true;
    }
    const double z = normal_quantile_two_sided(level);
    out.odds_ratio = (a * d) / (b * c);
    const double se = std::sqrt(1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d);
    const double log_or = std::log(out.odds_ratio);
    out.ci_low = std::exp(log_or - z * se);
    out.ci_high = std::exp(log_or + z * se);
    return out;
}

double cramers_v(const ContingencyTable& t) {
    require_counts(t);
    const double r1 = double(t.a + t.b), r2 = double(t.c + t.d);
    const double c1 = double(t.a + t.c), c2 = double(t.b + t.d);
    if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) return 0.0;
    const double num = std::abs(double(t.a) * double(t.d) - double(t.b) * double(t.c));
    return num / std::sqrt(r1 * r2 * c1 * c2);
}

std::vector<double> bh_fdr(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    if (m == 0) throw ValidationError("bh_fdr requires at least one p-value");
    for (double p : p_values)
        if (!(p > 0.0) || p > 1.0) throw ValidationError("bh_fdr input outside (0,1]: " + std::to_string(p));

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return p_values[i] != p_values[j] ? p_values[i] < p_values[j] : i < j;
    });

    std::vector<double> adjusted(m);
    double running_min = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const double q = p_values[order[r]] * static_cast<double>(m) / static_cast<double>(r + 1);
        running_min = std::min(running_min, q);
        adjusted[order[r]] = std::min(running_min, 1.0);
    }
    return adjusted;
}

}  // namespace mltc
