#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mltc/assoc.hpp"

namespace mltc {

struct ProgressionEdge {
    std::size_t from_condition = 0;  // catalog index; diagnosed first in the majority order
    std::size_t to_condition = 0;
    double odds_ratio = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double median_duration_years = 0.0;
    std::int64_t pair_freq = 0;
    int thickness_bin = 1;  // 1..5 by pair-frequency quintile
};

struct LegendBin {
    int bin = 1;
    std::int64_t freq_low = 0;   // inclusive
    std::int64_t freq_high = 0;  // exclusive
    int pct_low = 0;
    int pct_high = 0;

    std::string label() const;  // "144 <= Frequency < 205 (20%-40%)" with a UTF-8 <=
};

struct GraphSummary {
    double or_min = 0.0;
    double or_max = 0.0;
    double or_total = 0.0;          // sum of edge odds ratios
    double min_prevalence_pct = 0.0;  // 100 * min edge pair_freq / n
    std::int64_t min_pair_freq = 0;
    std::size_t edge_count = 0;
};

struct ProgressionGraph {
    Sex sex = Sex::male;
    std::string band_label;
    std::size_t stratum_size = 0;
    std::vector<std::size_t> nodes;  // catalog indices incident to >= 1 edge, ordered by condition_id
    std::vector<ProgressionEdge> edges;
    std::vector<LegendBin> legend;
    GraphSummary summary;

    std::string caption() const;  // the figure-caption sentence block
};

struct NetworkConfig {
    double alpha = 0.05;
    std::int64_t min_pair_freq = 100;
    double or_threshold = 2.0;
};

/// Directed progression network from analyzed pairs: applies the significance
/// filter, drops pairs without a clear precedence (they stay in the tables),
/// orients each remaining pair by its majority temporal order, and assigns
/// thickness bins from the pair-frequency quintiles.
ProgressionGraph build_progression_graph(const std::vector<PairAssociation>& assocs, std::size_t stratum_size,
                                         const NetworkConfig& config);

/// Quintile bins over edge pair frequencies: boundaries at the interpolated
/// 20/40/60/80th percentiles, bin 1 below the 20th, bin 5 at or above the
/// 80th. Legend bounds are the smallest integers not below each boundary, so
/// the printed ranges are exact for integer frequencies. Degenerate
/// boundaries collapse into fewer legend rows.
std::vector<LegendBin> assign_thickness_bins(std::vector<ProgressionEdge>& edges);

enum class GraphFormat { dot, graphml, json };
GraphFormat graph_format_from_string(const std::string& s);

/// Deterministic byte output for the given format.
std::string export_graph(const ProgressionGraph& graph, const ConditionCatalog& catalog, GraphFormat format);

}  // namespace mltc
