#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mltc/assoc.hpp"

namespace mltc {

/// One row of the threshold sweep. All duration fields are 0 when no edge is
/// retained at the threshold.
struct SensitivityRow {
    double or_threshold = 0.0;
    std::int64_t num_trajectories = 0;  // retained pairs under the base filter and OR >= threshold
    double coverage_percent = 0.0;      // members covered by >= 1 retained pair, as % of stratum size
    std::int64_t system_pairs = 0;      // distinct unordered body-system category pairs spanned
    double median_duration = 0.0;
    double q1_duration = 0.0;
    double q3_duration = 0.0;
};

struct SweepConfig {
    double alpha = 0.05;
    std::int64_t min_pair_freq = 100;
    std::vector<double> thresholds;  // ascending; defaults to 2..15
};

std::vector<double> default_thresholds();  // integers 2..15

/// Evaluates the retained-edge metrics at every threshold. Thresholds are
/// independent, so rows are computed in any order and reported ascending.
std::vector<SensitivityRow> sweep(const std::vector<PairAssociation>& assocs, const Stratum& stratum,
                                  const ConditionCatalog& catalog, const SweepConfig& config,
                                  unsigned workers = 1);

/// TSV with the fixed column set: or_threshold, num_trajectories,
/// coverage_percent, system_pairs, median_duration, q1_duration, q3_duration.
std::string sensitivity_tsv(const std::vector<SensitivityRow>& rows);

}  // namespace mltc
