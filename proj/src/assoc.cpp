#include "mltc/assoc.hpp"

#include <algorithm>

namespace mltc {

ContingencyTable build_table(const Stratum& stratum, std::size_t cond_a, std::size_t cond_b) {
    ContingencyTable t;
    const std::size_t n = stratum.size();
    const std::size_t both = popcount_and(stratum.condition_bits(cond_a), stratum.condition_bits(cond_b));
    const std::size_t only_a = stratum.condition_count(cond_a) - both;
    const std::size_t only_b = stratum.condition_count(cond_b) - both;
    t.a = static_cast<std::int64_t>(both);
    t.b = static_cast<std::int64_t>(only_a);
    t.c = static_cast<std::int64_t>(only_b);
    t.d = static_cast<std::int64_t>(n - both - only_a - only_b);
    return t;
}

std::vector<PairAssociation> analyze_stratum(const Stratum& stratum, const ConditionCatalog& catalog,
                                             const AnalysisOptions& options) {
    const auto& conditions = stratum.applicable_conditions();  // ordered by condition_id

    // candidate pairs in canonical order; zero-frequency pairs are skipped
    // before testing, so they never enter the FDR family
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        if (stratum.condition_count(conditions[i]) == 0) continue;
        for (std::size_t j = i + 1; j < conditions.size(); ++j) {
            if (stratum.condition_count(conditions[j]) == 0) continue;
            pairs.emplace_back(conditions[i], conditions[j]);
        }
    }

    std::vector<PairAssociation> results(pairs.size());
    std::vector<char> keep(pairs.size(), 0);
    parallel_for(pairs.size(), options.workers, [&](std::size_t k) {
        const auto [ca, cb] = pairs[k];
        const ContingencyTable table = build_table(stratum, ca, cb);
        if (table.a == 0) return;
        PairAssociation rec;
        rec.sex = stratum.sex();
        rec.band_label = stratum.band().label;
        rec.condition_a = ca;
        rec.condition_b = cb;
        rec.table = table;
        rec.pair_freq = table.a;
        rec.group_pct = pct2(static_cast<double>(table.a), static_cast<double>(stratum.size()));
        const TestResult test = select_test(table);
        rec.stats.p_raw = test.p;
        rec.stats.test_used = test.used;
        const OddsRatioCi orci = odds_ratio_ci(table);
        rec.stats.odds_ratio = orci.odds_ratio;
        rec.stats.ci_low = orci.ci_low;
        rec.stats.ci_high = orci.ci_high;
        rec.stats.or_corrected = orci.haldane_corrected;
        rec.stats.cramers_v = cramers_v(table);
        rec.temporal = temporal_summary(stratum, ca, cb);
        results[k] = std::move(rec);
        keep[k] = 1;
    });

    std::vector<PairAssociation> out;
    out.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (keep[k]) out.push_back(std::move(results[k]));

    if (!out.empty()) {
        std::vector<double> p_raw(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) p_raw[i] = out[i].stats.p_raw;
        const std::vector<double> adjusted = bh_fdr(p_raw);
        for (std::size_t i = 0; i < out.size(); ++i) out[i].stats.p_adjusted = adjusted[i];
    }
    return out;
}

void readjust_fdr_global(std::vector<std::vector<PairAssociation>>& per_stratum) {
    std::vector<double> pooled;
    for (const auto& stratum : per_stratum)
        for (const auto& rec : stratum) pooled.push_back(rec.stats.p_raw);
    if (pooled.empty()) return;
    const std::vector<double> adjusted = bh_fdr(pooled);
    std::size_t k = 0;
    for (auto& stratum : per_stratum)
        for (auto& rec : stratum) rec.stats.p_adjusted = adjusted[k++];
}

std::vector<PairAssociation> filter_significant(const std::vector<PairAssociation>& assocs, double alpha,
                                                std::int64_t min_pair_freq, double min_or) {
    std::vector<PairAssociation> out;
    for (const auto& rec : assocs) {
        if (rec.stats.p_adjusted < alpha && rec.pair_freq >= min_pair_freq && rec.stats.odds_ratio >= min_or)
            out.push_back(rec);
    }
    return out;
}

}  // namespace mltc
