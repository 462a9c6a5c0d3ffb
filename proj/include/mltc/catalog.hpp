#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mltc/common.hpp"

namespace mltc {

enum class SexApplicability { both, female_only, male_only };

SexApplicability sex_applicability_from_string(std::string_view s);
std::string to_string(SexApplicability a);

struct CatalogEntry {
    std::string condition_id;
    std::string display_name;
    std::string system_category;  // body system affected, e.g. "Circulatory"
    SexApplicability applicability = SexApplicability::both;

    bool applicable_to(Sex sex) const {
        if (applicability == SexApplicability::both) return true;
        return (applicability == SexApplicability::female_only) == (sex == Sex::female);
    }
};

/// The closed set of long-term conditions under study. Entry order follows
/// the source file; lookups are by stable condition_id.
class ConditionCatalog {
  public:
    explicit ConditionCatalog(std::vector<CatalogEntry> entries);

    std::size_t size() const { return entries_.size(); }
    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry& entry(std::size_t idx) const { return entries_.at(idx); }

    std::optional<std::size_t> index_of(const std::string& condition_id) const;

    /// Indices of conditions applicable to the given sex, ordered by condition_id.
    std::vector<std::size_t> applicable_indices(Sex sex) const;

  private:
    std::vector<CatalogEntry> entries_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

/// Parses the catalog file (header: condition_id, display_name,
/// system_category, sex_applicability) and validates its invariants.
ConditionCatalog load_catalog(const std::filesystem::path& path);

}  // namespace mltc
