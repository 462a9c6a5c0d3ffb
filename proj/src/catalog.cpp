#include "mltc/catalog.hpp"

#include <algorithm>

#include "mltc/tsv.hpp"

namespace mltc {

SexApplicability sex_applicability_from_string(std::string_view s) {
    const std::string t = lower(trim(s));
    if (t == "both") return SexApplicability::both;
    if (t == "female_only") return SexApplicability::female_only;
    if (t == "male_only") return SexApplicability::male_only;
    throw ValidationError("unknown sex_applicability token: '" + std::string(s) + "'");
}

std::string to_string(SexApplicability a) {
    switch (a) {
        case SexApplicability::both: return "both";
        case SexApplicability::female_only: return "female_only";
        case SexApplicability::male_only: return "male_only";
    }
    return "both";
}

ConditionCatalog::ConditionCatalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ValidationError("condition catalog is empty");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.condition_id.empty()) throw ValidationError("catalog entry with empty condition_id");
        if (e.system_category.empty())
            throw ValidationError("catalog entry '" + e.condition_id + "' has empty system_category");
        if (!by_id_.emplace(e.condition_id, i).second)
            throw ValidationError("duplicate condition_id in catalog: '" + e.condition_id + "'");
    }
    for (Sex sex : {Sex::male, Sex::female}) {
        const bool any = std::any_of(entries_.begin(), entries_.end(),
                                     [&](const CatalogEntry& e) { return e.applicable_to(sex); });
        if (!any) throw ValidationError("catalog has no condition applicable to sex " + to_string(sex));
    }
}

std::optional<std::size_t> ConditionCatalog::index_of(const std::string& condition_id) const {
    const auto it = by_id_.find(condition_id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> ConditionCatalog::applicable_indices(Sex sex) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].applicable_to(sex)) out.push_back(i);
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        return entries_[a].condition_id < entries_[b].condition_id;
    });
    return out;
}

ConditionCatalog load_catalog(const std::filesystem::path& path) {
    DelimitedReader reader(path);
    const std::size_t c_id = reader.require_column("condition_id");
    const std::size_t c_name = reader.require_column("display_name");
    const std::size_t c_cat = reader.require_column("system_category");
    const std::size_t c_sex = reader.require_column("sex_applicability");

    std::vector<CatalogEntry> entries;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const std::size_t needed = std::max({c_id, c_name, c_cat, c_sex}) + 1;
        if (row.size() < needed)
            throw ValidationError(path.string() + ":" + std::to_string(reader.line_number()) +
                                  ": malformed row (expected " + std::to_string(needed) + " fields)");
        CatalogEntry e;
        e.condition_id = row[c_id];
        e.display_name = row[c_name];
        e.system_category = row[c_cat];
        try {
            e.applicability = sex_applicability_from_string(row[c_sex]);
        } catch (const ValidationError& err) {
            throw ValidationError(path.string() + ":" + std::to_string(reader.line_number()) + ": " + err.what());
        }
        entries.push_back(std::move(e));
    }
    return ConditionCatalog(std::move(entries));
}

}  // namespace mltc
