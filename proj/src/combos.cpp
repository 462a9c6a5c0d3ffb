#include "mltc/combos.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace mltc {

PairGraph pair_graph(const std::vector<PairAssociation>& filtered, const ConditionCatalog& catalog) {
    std::map<std::string, std::size_t> id_to_slot;  // condition_id -> node slot, sorted
    for (const auto& rec : filtered) {
        id_to_slot.emplace(catalog.entry(rec.condition_a).condition_id, 0);
        id_to_slot.emplace(catalog.entry(rec.condition_b).condition_id, 0);
    }
    PairGraph g;
    g.nodes.reserve(id_to_slot.size());
    for (auto& [id, slot] : id_to_slot) {
        slot = g.nodes.size();
        g.nodes.push_back(*catalog.index_of(id));
    }
    g.weight.assign(g.nodes.size(), std::vector<std::int64_t>(g.nodes.size(), -1));
    for (const auto& rec : filtered) {
        const std::size_t i = id_to_slot.at(catalog.entry(rec.condition_a).condition_id);
        const std::size_t j = id_to_slot.at(catalog.entry(rec.condition_b).condition_id);
        g.weight[i][j] = rec.pair_freq;
        g.weight[j][i] = rec.pair_freq;
    }
    return g;
}

namespace {

// Ordered extension: every clique is visited exactly once by only adding
// vertices with a larger slot than the current maximum.
void extend(const PairGraph& g, std::vector<std::size_t>& clique, std::vector<std::size_t>& candidates,
            std::int64_t min_weight, const ComboOptions& opt, std::size_t& visited,
            std::vector<Combination>& out) {
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        const std::size_t v = candidates[idx];
        clique.push_back(v);
        const std::int64_t weight_here = [&] {
            std::int64_t w = min_weight;
            for (std::size_t u : clique)
                if (u != v) w = std::min(w, g.weight[u][v]);
            return w;
        }();
        if (++visited > opt.work_cap)
            throw std::runtime_error("combination enumeration exceeded the work cap of " +
                                     std::to_string(opt.work_cap) + " cliques; raise it or set max_size");
        if (clique.size() >= opt.min_size) {
            Combination combo;
            combo.conditions.reserve(clique.size());
            for (std::size_t slot : clique) combo.conditions.push_back(g.nodes[slot]);
            combo.min_pair_freq = weight_here;
            out.push_back(std::move(combo));
        }
        if (!opt.max_size || clique.size() < *opt.max_size) {
            std::vector<std::size_t> next;
            for (std::size_t jdx = idx + 1; jdx < candidates.size(); ++jdx)
                if (g.adjacent(v, candidates[jdx])) next.push_back(candidates[jdx]);
            if (!next.empty()) extend(g, clique, next, weight_here, opt, visited, out);
        }
        clique.pop_back();
    }
}

}  // namespace

std::vector<Combination> enumerate_combinations(const PairGraph& graph, const ConditionCatalog& catalog,
                                                const ComboOptions& options) {
    if (options.min_size < 2) throw std::invalid_argument("combination min_size must be >= 2");
    std::vector<Combination> out;
    std::vector<std::size_t> clique;
    std::vector<std::size_t> roots(graph.node_count());
    for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = i;
    std::size_t visited = 0;
    extend(graph, clique, roots, std::numeric_limits<std::int64_t>::max(), options, visited, out);

    // node slots follow condition_id order, so clique members are already canonical
    std::sort(out.begin(), out.end(), [&](const Combination& x, const Combination& y) {
        if (x.min_pair_freq != y.min_pair_freq) return x.min_pair_freq > y.min_pair_freq;
        if (x.conditions.size() != y.conditions.size()) return x.conditions.size() < y.conditions.size();
        const auto key = [&](const Combination& c) {
            std::vector<std::string> ids;
            for (std::size_t idx : c.conditions) ids.push_back(catalog.entry(idx).condition_id);
            return ids;
        };
        return key(x) < key(y);
    });
    return out;
}

double combination_prevalence(const Combination& combo, std::size_t stratum_size) {
    if (stratum_size == 0) throw std::invalid_argument("combination prevalence requires n >= 1");
    return pct2(static_cast<double>(combo.min_pair_freq), static_cast<double>(stratum_size));
}

void attach_prevalence(std::vector<Combination>& combos, std::size_t stratum_size) {
    for (auto& combo : combos) combo.prevalence_pct = combination_prevalence(combo, stratum_size);
}

std::vector<Combination> filter_combinations(const std::vector<Combination>& combos, double min_prevalence_pct) {
    std::vector<Combination> out;
    for (const auto& combo : combos)
        if (combo.prevalence_pct >= min_prevalence_pct) out.push_back(combo);
    return out;
}

}  // namespace mltc
