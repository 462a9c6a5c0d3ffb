#include "mltc/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mltc {

std::string LegendBin::label() const {
    std::ostringstream ss;
    ss << freq_low << " ≤ Frequency < " << freq_high << " (" << pct_low << "%-" << pct_high << "%)";
    return ss.str();
}

std::string ProgressionGraph::caption() const {
    std::ostringstream ss;
    std::string sex_name = to_string(sex);
    sex_name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sex_name[0])));
    ss << "Sex: " << sex_name << ". Age group: " << band_label
       << ". Total patients with diagnoses in this group: " << stratum_size << ". Odds ratio range: ["
       << fmt_fixed(summary.or_min, 2) << "-" << fmt_fixed(summary.or_max, 2)
       << "]. Observed minimum prevalence: " << fmt_fixed(summary.min_prevalence_pct, 2) << "% ("
       << summary.min_pair_freq << " patients). Number of condition pairs shown: " << summary.edge_count
       << ". Total sum of odds ratios: " << fmt_fixed(summary.or_total, 2);
    return ss.str();
}

std::vector<LegendBin> assign_thickness_bins(std::vector<ProgressionEdge>& edges) {
    if (edges.empty()) throw std::invalid_argument("assign_thickness_bins requires at least one edge");

    std::vector<double> freqs;
    freqs.reserve(edges.size());
    for (const auto& e : edges) freqs.push_back(static_cast<double>(e.pair_freq));
    std::sort(freqs.begin(), freqs.end());

    double boundary[4];
    for (int k = 0; k < 4; ++k) boundary[k] = quantile_linear_sorted(freqs, 0.2 * (k + 1));

    for (auto& e : edges) {
        const double f = static_cast<double>(e.pair_freq);
        int bin = 5;
        for (int k = 0; k < 4; ++k) {
            if (f < boundary[k]) {
                bin = k + 1;
                break;
            }
        }
        e.thickness_bin = bin;
    }

    // integer bin edges: [lo_k, hi_k) with hi_k = ceil(boundary_k); empty
    // ranges merge their percentage span into a neighbouring row
    const std::int64_t min_f = static_cast<std::int64_t>(freqs.front());
    const std::int64_t max_f = static_cast<std::int64_t>(freqs.back());
    std::int64_t lo = min_f;
    int pct_start = 0;
    std::vector<LegendBin> legend;
    for (int k = 0; k < 5; ++k) {
        const std::int64_t hi = k < 4 ? static_cast<std::int64_t>(std::ceil(boundary[k])) : max_f + 1;
        const int pct_end = (k + 1) * 20;
        if (hi > lo) {
            LegendBin bin;
            bin.bin = k + 1;
            bin.freq_low = lo;
            bin.freq_high = hi;
            bin.pct_low = pct_start;
            bin.pct_high = pct_end;
            legend.push_back(bin);
            lo = hi;
            pct_start = pct_end;
        } else if (!legend.empty()) {
            legend.back().pct_high = pct_end;
            pct_start = pct_end;
        }
    }
    return legend;
}

ProgressionGraph build_progression_graph(const std::vector<PairAssociation>& assocs, std::size_t stratum_size,
                                         const NetworkConfig& config) {
    ProgressionGraph g;
    g.stratum_size = stratum_size;
    if (!assocs.empty()) {
        g.sex = assocs.front().sex;
        g.band_label = assocs.front().band_label;
    }

    const auto filtered = filter_significant(assocs, config.alpha, config.min_pair_freq, config.or_threshold);
    std::set<std::size_t> node_set;
    for (const auto& rec : filtered) {
        if (rec.temporal.precedence == Precedence::no_clear_precedence) continue;
        ProgressionEdge e;
        const bool a_first = rec.temporal.precedence == Precedence::a_precedes_b;
        e.from_condition = a_first ? rec.condition_a : rec.condition_b;
        e.to_condition = a_first ? rec.condition_b : rec.condition_a;
        e.odds_ratio = rec.stats.odds_ratio;
        e.ci_low = rec.stats.ci_low;
        e.ci_high = rec.stats.ci_high;
        e.median_duration_years = rec.temporal.median_duration_years;
        e.pair_freq = rec.pair_freq;
        g.edges.push_back(e);
        node_set.insert(e.from_condition);
        node_set.insert(e.to_condition);
    }
    g.nodes.assign(node_set.begin(), node_set.end());

    if (!g.edges.empty()) {
        g.legend = assign_thickness_bins(g.edges);
        auto& s = g.summary;
        s.edge_count = g.edges.size();
        s.or_min = s.or_max = g.edges.front().odds_ratio;
        s.min_pair_freq = g.edges.front().pair_freq;
        for (const auto& e : g.edges) {
            s.or_min = std::min(s.or_min, e.odds_ratio);
            s.or_max = std::max(s.or_max, e.odds_ratio);
            s.or_total += e.odds_ratio;
            s.min_pair_freq = std::min(s.min_pair_freq, e.pair_freq);
        }
        s.or_total = round_half_away(s.or_total, 2);
        s.min_prevalence_pct = pct2(static_cast<double>(s.min_pair_freq), static_cast<double>(stratum_size));
    }
    return g;
}

GraphFormat graph_format_from_string(const std::string& s) {
    const std::string t = lower(trim(s));
    if (t == "dot") return GraphFormat::dot;
    if (t == "graphml") return GraphFormat::graphml;
    if (t == "json") return GraphFormat::json;
    throw ValidationError("unknown graph format: '" + s + "' (expected dot, graphml or json)");
}

namespace {

// fixed edge output order: canonical pair ids, independent of orientation
std::vector<std::size_t> edge_order(const ProgressionGraph& g, const ConditionCatalog& catalog) {
    std::vector<std::size_t> order(g.edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto key = [&](const ProgressionEdge& e) {
            const std::string& f = catalog.entry(e.from_condition).condition_id;
            const std::string& t = catalog.entry(e.to_condition).condition_id;
            return f < t ? std::pair(f, t) : std::pair(t, f);
        };
        return key(g.edges[x]) < key(g.edges[y]);
    });
    return order;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string export_dot(const ProgressionGraph& g, const ConditionCatalog& catalog) {
    std::ostringstream ss;
    ss << "digraph progression {\n";
    ss << "  comment=\"" << g.caption() << "\";\n";
    for (const auto& bin : g.legend) ss << "  // legend: " << bin.label() << "\n";
    for (std::size_t node : g.nodes) ss << "  \"" << catalog.entry(node).display_name << "\";\n";
    for (std::size_t i : edge_order(g, catalog)) {
        const auto& e = g.edges[i];
        ss << "  \"" << catalog.entry(e.from_condition).display_name << "\" -> \""
           << catalog.entry(e.to_condition).display_name << "\" [label=\"OR=" << fmt_fixed(e.odds_ratio, 2) << "; "
           << fmt_fixed(e.median_duration_years, 2) << " yrs\", penwidth=" << e.thickness_bin << "];\n";
    }
    ss << "}\n";
    return ss.str();
}

std::string export_graphml(const ProgressionGraph& g, const ConditionCatalog& catalog) {
    std::ostringstream ss;
    ss << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    ss << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    ss << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    const char* edge_keys[] = {"or", "or_ci_low", "or_ci_high", "median_years", "pair_freq", "bin"};
    const char* edge_types[] = {"double", "double", "double", "double", "long", "int"};
    for (int k = 0; k < 6; ++k)
        ss << "  <key id=\"" << edge_keys[k] << "\" for=\"edge\" attr.name=\"" << edge_keys[k] << "\" attr.type=\""
           << edge_types[k] << "\"/>\n";
    ss << "  <key id=\"caption\" for=\"graph\" attr.name=\"caption\" attr.type=\"string\"/>\n";
    ss << "  <key id=\"legend\" for=\"graph\" attr.name=\"legend\" attr.type=\"string\"/>\n";
    ss << "  <graph id=\"progression\" edgedefault=\"directed\">\n";
    ss << "    <data key=\"caption\">" << xml_escape(g.caption()) << "</data>\n";
    std::string legend;
    for (const auto& bin : g.legend) {
        if (!legend.empty()) legend += "; ";
        legend += bin.label();
    }
    ss << "    <data key=\"legend\">" << xml_escape(legend) << "</data>\n";
    for (std::size_t node : g.nodes) {
        const auto& entry = catalog.entry(node);
        ss << "    <node id=\"" << xml_escape(entry.condition_id) << "\"><data key=\"label\">"
           << xml_escape(entry.display_name) << "</data></node>\n";
    }
    std::size_t counter = 0;
    for (std::size_t i : edge_order(g, catalog)) {
        const auto& e = g.edges[i];
        ss << "    <edge id=\"e" << counter++ << "\" source=\"" << xml_escape(catalog.entry(e.from_condition).condition_id)
           << "\" target=\"" << xml_escape(catalog.entry(e.to_condition).condition_id) << "\">";
        ss << "<data key=\"or\">" << fmt_fixed(e.odds_ratio, 2) << "</data>";
        ss << "<data key=\"or_ci_low\">" << fmt_fixed(e.ci_low, 2) << "</data>";
        ss << "<data key=\"or_ci_high\">" << fmt_fixed(e.ci_high, 2) << "</data>";
        ss << "<data key=\"median_years\">" << fmt_fixed(e.median_duration_years, 2) << "</data>";
        ss << "<data key=\"pair_freq\">" << e.pair_freq << "</data>";
        ss << "<data key=\"bin\">" << e.thickness_bin << "</data>";
        ss << "</edge>\n";
    }
    ss << "  </graph>\n</graphml>\n";
    return ss.str();
}

std::string export_json(const ProgressionGraph& g, const ConditionCatalog& catalog) {
    nlohmann::ordered_json j;
    j["sex"] = to_string(g.sex);
    j["age_group"] = g.band_label;
    j["stratum_size"] = g.stratum_size;
    j["caption"] = g.caption();
    j["summary"] = {
        {"or_min", round_half_away(g.summary.or_min, 2)},
        {"or_max", round_half_away(g.summary.or_max, 2)},
        {"or_total", round_half_away(g.summary.or_total, 2)},
        {"min_prevalence_pct", g.summary.min_prevalence_pct},
        {"min_pair_freq", g.summary.min_pair_freq},
        {"edge_count", g.summary.edge_count},
    };
    j["legend"] = nlohmann::ordered_json::array();
    for (const auto& bin : g.legend)
        j["legend"].push_back({{"bin", bin.bin},
                               {"freq_low", bin.freq_low},
                               {"freq_high", bin.freq_high},
                               {"pct_low", bin.pct_low},
                               {"pct_high", bin.pct_high},
                               {"label", bin.label()}});
    j["nodes"] = nlohmann::ordered_json::array();
    for (std::size_t node : g.nodes) {
        const auto& entry = catalog.entry(node);
        j["nodes"].push_back({{"id", entry.condition_id}, {"label", entry.display_name}});
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (std::size_t i : edge_order(g, catalog)) {
        const auto& e = g.edges[i];
        j["edges"].push_back({{"from", catalog.entry(e.from_condition).condition_id},
                              {"to", catalog.entry(e.to_condition).condition_id},
                              {"or", round_half_away(e.odds_ratio, 2)},
                              {"or_ci_low", round_half_away(e.ci_low, 2)},
                              {"or_ci_high", round_half_away(e.ci_high, 2)},
                              {"median_years", round_half_away(e.median_duration_years, 2)},
                              {"pair_freq", e.pair_freq},
                              {"bin", e.thickness_bin}});
    }
    return j.dump(2) + "\n";
}

}  // namespace

std::string export_graph(const ProgressionGraph& graph, const ConditionCatalog& catalog, GraphFormat format) {
    switch (format) {
        case GraphFormat::dot: return export_dot(graph, catalog);
        case GraphFormat::graphml: return export_graphml(graph, catalog);
        case GraphFormat::json: return export_json(graph, catalog);
    }
    throw std::invalid_argument("unknown graph format");
}

}  // namespace mltc
