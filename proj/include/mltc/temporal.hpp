#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mltc/stratify.hpp"

namespace mltc {

enum class Precedence { a_precedes_b, b_precedes_a, no_clear_precedence };

/// Which condition of a co-occurring pair is diagnosed first, how often, and
/// the spread of the years between the two first diagnoses.
struct TemporalSummary {
    std::int64_t a_first = 0;
    std::int64_t b_first = 0;
    std::int64_t ties = 0;  // exactly equal recorded ages
    Precedence precedence = Precedence::no_clear_precedence;
    std::int64_t directionality_freq = 0;
    double directionality_pct = 0.0;  // 2-decimal percentage of pair_freq
    double median_duration_years = 0.0;
    double q1_duration_years = 0.0;
    double q3_duration_years = 0.0;

    std::int64_t pair_freq() const { return a_first + b_first + ties; }
};

/// Quantile by linear interpolation between closest ranks (the sorted-sample
/// convention where the k-th order statistic sits at rank (n-1)*q).
/// `values` need not be sorted. q in [0, 1].
double quantile_linear(std::vector<double> values, double q);

/// Quantile for an already-sorted sample; no copy.
double quantile_linear_sorted(const std::vector<double>& sorted, double q);

/// Classify every member holding both conditions in-band by diagnosis order.
/// When the two sides tie exactly in count, the convention observed in the
/// source tables is reproduced: no clear precedence, directionality frequency
/// equal to the whole pair frequency, percentage 100.00.
TemporalSummary pair_directionality(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b);

/// Absolute years between the two first diagnoses over co-occurring members:
/// (median, q1, q3). Requires pair_freq >= 1.
struct DurationStats {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};
DurationStats duration_stats(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b);

/// Fills both the direction fields and the duration quartiles.
TemporalSummary temporal_summary(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b);

/// Raw per-patient |age_b - age_a| durations for the pair, unsorted.
std::vector<double> pair_durations(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b);

/// The prose-level directional claim ("X precedes Y"), emitted only when the
/// directionality percentage strictly exceeds the threshold and a clear
/// precedence exists.
std::optional<std::string> precedence_label(const TemporalSummary& summary, const std::string& display_a,
                                            const std::string& display_b, double threshold_pct = 70.0);

}  // namespace mltc
