#include "mltc/temporal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace mltc {

double quantile_linear_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile level outside [0,1]");
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double quantile_linear(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    return quantile_linear_sorted(values, q);
}

std::vector<double> pair_durations(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b) {
    std::vector<double> durations;
    const auto& bits_a = stratum.condition_bits(cond_a);
    const auto& bits_b = stratum.condition_bits(cond_b);
    for (std::size_t w = 0; w < bits_a.size(); ++w) {
        std::uint64_t both = bits_a[w] & bits_b[w];
        while (both) {
            const std::size_t m = w * 64 + static_cast<std::size_t>(std::countr_zero(both));
            both &= both - 1;
            durations.push_back(std::abs(stratum.event_age(m, cond_b) - stratum.event_age(m, cond_a)));
        }
    }
    return durations;
}

TemporalSummary pair_directionality(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b) {
    TemporalSummary s;
    const auto& bits_a = stratum.condition_bits(cond_a);
    const auto& bits_b = stratum.condition_bits(cond_b);
    for (std::size_t w = 0; w < bits_a.size(); ++w) {
        std::uint64_t both = bits_a[w] & bits_b[w];
        while (both) {
            const std::size_t m = w * 64 + static_cast<std::size_t>(std::countr_zero(both));
            both &= both - 1;
            const double age_a = stratum.event_age(m, cond_a);
            const double age_b = stratum.event_age(m, cond_b);
            if (age_a < age_b)
                ++s.a_first;
            else if (age_b < age_a)
                ++s.b_first;
            else
                ++s.ties;
        }
    }
    const std::int64_t freq = s.pair_freq();
    if (freq == 0) throw std::invalid_argument("pair_directionality requires pair_freq >= 1");
    if (s.a_first == s.b_first) {
        s.precedence = Precedence::no_clear_precedence;
        s.directionality_freq = freq;  // table convention: 100% of the pair
    } else if (s.a_first > s.b_first) {
        s.precedence = Precedence::a_precedes_b;
        s.directionality_freq = s.a_first;
    } else {
        s.precedence = Precedence::b_precedes_a;
        s.directionality_freq = s.b_first;
    }
    s.directionality_pct = pct2(static_cast<double>(s.directionality_freq), static_cast<double>(freq));
    return s;
}

DurationStats duration_stats(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b) {
    std::vector<double> durations = pair_durations(stratum, cond_a, cond_b);
    if (durations.empty()) throw std::invalid_argument("duration_stats requires pair_freq >= 1");
    std::sort(durations.begin(), durations.end());
    DurationStats d;
    d.q1 = quantile_linear_sorted(durations, 0.25);
    d.median = quantile_linear_sorted(durations, 0.5);
    d.q3 = quantile_linear_sorted(durations, 0.75);
    return d;
}

TemporalSummary temporal_summary(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b) {
    TemporalSummary s = pair_directionality(stratum, cond_a, cond_b);
    const DurationStats d = duration_stats(stratum, cond_a, cond_b);
    s.median_duration_years = d.median;
    s.q1_duration_years = d.q1;
    s.q3_duration_years = d.q3;
    return s;
}

std::optional<std::string> precedence_label(const TemporalSummary& summary, const std::string& display_a,
                                            const std::string& display_b, double threshold_pct) {
    if (summary.precedence == Precedence::no_clear_precedence) return std::nullopt;
    if (!(summary.directionality_pct > threshold_pct)) return std::nullopt;
    if (summary.precedence == Precedence::a_precedes_b) return display_a + " precedes " + display_b;
    return display_b + " precedes " + display_a;
}

}  // namespace mltc
