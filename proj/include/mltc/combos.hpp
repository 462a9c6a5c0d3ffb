#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mltc/assoc.hpp"

namespace mltc {

/// Undirected pair graph over conditions: nodes are conditions that appear in
/// at least one filtered pair, edges are the filtered pairs weighted by pair
/// frequency. Node ids are catalog indices.
struct PairGraph {
    std::vector<std::size_t> nodes;                 // catalog indices, ordered by condition_id
    std::vector<std::vector<std::int64_t>> weight;  // adjacency matrix over node slots; -1 = no edge

    std::size_t node_count() const { return nodes.size(); }
    bool adjacent(std::size_t i, std::size_t j) const { return weight[i][j] >= 0; }
};

PairGraph pair_graph(const std::vector<PairAssociation>& filtered, const ConditionCatalog& catalog);

/// A set of >= 3 conditions whose every internal pair survived the filter.
struct Combination {
    std::vector<std::size_t> conditions;  // catalog indices, ordered by condition_id
    std::int64_t min_pair_freq = 0;       // weakest internal pair
    double prevalence_pct = 0.0;          // 100 * min_pair_freq / n, 2 decimals
};

struct ComboOptions {
    std::size_t min_size = 3;
    std::optional<std::size_t> max_size;
    std::size_t work_cap = 1'000'000;  // enumeration aborts past this many cliques
};

/// Emits every clique of the pair graph with size in [min_size, max_size]
/// (all cliques, not only maximal ones), sorted by min pair frequency
/// descending, then size, then condition ids. Throws if the work cap is hit.
std::vector<Combination> enumerate_combinations(const PairGraph& graph, const ConditionCatalog& catalog,
                                                const ComboOptions& options = {});

/// 100 * min_pair_freq / n, half-away rounding to 2 decimals.
double combination_prevalence(const Combination& combo, std::size_t stratum_size);

/// Attaches prevalence to each combination for the given stratum size.
void attach_prevalence(std::vector<Combination>& combos, std::size_t stratum_size);

std::vector<Combination> filter_combinations(const std::vector<Combination>& combos, double min_prevalence_pct);

}  // namespace mltc
