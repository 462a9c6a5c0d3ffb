#pragma once

#include <string>
#include <vector>

#include "mltc/stats.hpp"
#include "mltc/stratify.hpp"
#include "mltc/temporal.hpp"

namespace mltc {

struct AssociationStats {
    double p_raw = 1.0;
    double p_adjusted = 1.0;
    double odds_ratio = 1.0;
    double ci_low = 1.0;
    double ci_high = 1.0;
    bool or_corrected = false;
    double cramers_v = 0.0;
    TestKind test_used = TestKind::fisher;
};

/// Full per-pair result within one stratum. condition_a/_b are catalog
/// indices in canonical order (condition_id of A sorts before B).
struct PairAssociation {
    Sex sex = Sex::male;
    std::string band_label;
    std::size_t condition_a = 0;
    std::size_t condition_b = 0;
    ContingencyTable table;
    AssociationStats stats;
    std::int64_t pair_freq = 0;  // = table.a
    double group_pct = 0.0;      // 100 * a / n, 2 decimals
    TemporalSummary temporal;
};

struct AnalysisOptions {
    unsigned workers = 1;
};

/// Counts the four co-occurrence cells for a condition pair over the
/// stratum's members (both diagnoses inside the band by construction).
ContingencyTable build_table(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b);

/// One record per unordered applicable pair with pair_freq >= 1:
/// expected-count-routed test, BH adjustment over this stratum's tested
/// family, odds ratio with 95% CI, Cramer's V and the temporal summary.
/// Output is ordered by (condition_id A, condition_id B) and is identical
/// for any worker count.
std::vector<PairAssociation> analyze_stratum(const Stratum& stratum, const ConditionCatalog& catalog,
                                             const AnalysisOptions& options = {});

/// Re-runs the BH adjustment with all strata pooled into a single family,
/// overwriting p_adjusted in place (the global fdr_scope mode).
void readjust_fdr_global(std::vector<std::vector<PairAssociation>>& per_stratum);

/// Keeps records with p_adjusted < alpha, pair_freq >= min_pair_freq and
/// odds ratio >= min_or, preserving order.
std::vector<PairAssociation> filter_significant(const std::vector<PairAssociation>& assocs, double alpha,
                                                std::int64_t min_pair_freq, double min_or);

}  // namespace mltc
