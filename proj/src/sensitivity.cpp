#include "mltc/sensitivity.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace mltc {

std::vector<double> default_thresholds() {
    std::vector<double> out;
    for (int t = 2; t <= 15; ++t) out.push_back(static_cast<double>(t));
    return out;
}

std::vector<SensitivityRow> sweep(const std::vector<PairAssociation>& assocs, const Stratum& stratum,
                                  const ConditionCatalog& catalog, const SweepConfig& config, unsigned workers) {
    std::vector<double> thresholds = config.thresholds.empty() ? default_thresholds() : config.thresholds;
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw ValidationError("sensitivity thresholds must be ascending");

    const auto base = filter_significant(assocs, config.alpha, config.min_pair_freq, 0.0);
    const std::size_t n = stratum.size();
    const std::size_t words = (n + 63) / 64;

    std::vector<SensitivityRow> rows(thresholds.size());
    parallel_for(thresholds.size(), workers, [&](std::size_t idx) {
        SensitivityRow row;
        row.or_threshold = thresholds[idx];

        std::vector<std::uint64_t> covered(words, 0);
        std::set<std::pair<std::string, std::string>> systems;
        std::vector<double> durations;
        for (const auto& rec : base) {
            if (rec.stats.odds_ratio < row.or_threshold) continue;
            ++row.num_trajectories;

            const auto& bits_a = stratum.condition_bits(rec.condition_a);
            const auto& bits_b = stratum.condition_bits(rec.condition_b);
            for (std::size_t w = 0; w < words; ++w) covered[w] |= bits_a[w] & bits_b[w];

            std::string sys_a = catalog.entry(rec.condition_a).system_category;
            std::string sys_b = catalog.entry(rec.condition_b).system_category;
            if (sys_b < sys_a) std::swap(sys_a, sys_b);
            systems.emplace(std::move(sys_a), std::move(sys_b));

            const auto pair_d = pair_durations(stratum, rec.condition_a, rec.condition_b);
            durations.insert(durations.end(), pair_d.begin(), pair_d.end());
        }
        row.system_pairs = static_cast<std::int64_t>(systems.size());
        if (row.num_trajectories > 0 && n > 0) {
            std::size_t covered_count = 0;
            for (std::uint64_t w : covered) covered_count += static_cast<std::size_t>(std::popcount(w));
            row.coverage_percent = pct2(static_cast<double>(covered_count), static_cast<double>(n));
            std::sort(durations.begin(), durations.end());
            row.median_duration = quantile_linear_sorted(durations, 0.5);
            row.q1_duration = quantile_linear_sorted(durations, 0.25);
            row.q3_duration = quantile_linear_sorted(durations, 0.75);
        }
        rows[idx] = std::move(row);
    });
    return rows;
}

std::string sensitivity_tsv(const std::vector<SensitivityRow>& rows) {
    std::ostringstream ss;
    ss << "or_threshold\tnum_trajectories\tcoverage_percent\tsystem_pairs\tmedian_duration\tq1_duration\tq3_duration\n";
    for (const auto& r : rows) {
        ss << fmt_fixed(r.or_threshold, 2) << '\t' << r.num_trajectories << '\t' << fmt_fixed(r.coverage_percent, 2)
           << '\t' << r.system_pairs << '\t' << fmt_fixed(r.median_duration, 2) << '\t' << fmt_fixed(r.q1_duration, 2)
           << '\t' << fmt_fixed(r.q3_duration, 2) << '\n';
    }
    return ss.str();
}

}  // namespace mltc
