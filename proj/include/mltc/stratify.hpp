#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mltc/catalog.hpp"
#include "mltc/cohort.hpp"
#include "mltc/common.hpp"

namespace mltc {

/// Half-open age interval [lower, upper); upper may be +inf.
struct AgeBand {
    std::string label;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    bool contains(double age) const { return age >= lower && age < upper; }
    /// Filesystem-safe form of the label ("<45" -> "lt45", "65+" -> "65plus").
    std::string slug() const;
};

/// Bands [0,b1), [b1,b2), ..., [bk,inf) from ascending interior boundaries.
/// The default boundaries {45, 65} give the <45 / 45-64 / 65+ split.
std::vector<AgeBand> make_bands(const std::vector<double>& boundaries);
std::vector<AgeBand> default_bands();

/// Parses "45,65" style boundary lists.
std::vector<double> parse_band_boundaries(const std::string& spec);

/// One (sex, age band) analysis group: the patients with at least one first
/// diagnosis inside the band, and exactly those in-band diagnoses. A patient
/// may belong to several bands, so stratum sizes can sum to more than the
/// cohort. Immutable after construction; safe for concurrent readers.
class Stratum {
  public:
    Stratum(Sex sex, AgeBand band, const ConditionCatalog& catalog);

    Sex sex() const { return sex_; }
    const AgeBand& band() const { return band_; }
    std::size_t size() const { return patient_ids_.size(); }  // number of members
    const std::vector<std::string>& patient_ids() const { return patient_ids_; }

    /// Conditions applicable to this stratum's sex, ordered by condition_id.
    const std::vector<std::size_t>& applicable_conditions() const { return applicable_; }

    bool has_event(std::size_t member, std::size_t condition_idx) const;
    double event_age(std::size_t member, std::size_t condition_idx) const;  // NaN if absent

    /// Members holding the condition, as a word-packed bitset over member slots.
    const std::vector<std::uint64_t>& condition_bits(std::size_t condition_idx) const;
    std::size_t condition_count(std::size_t condition_idx) const;

    std::size_t total_events() const { return total_events_; }

  private:
    friend std::vector<Stratum> stratify(const Cohort&, const ConditionCatalog&, const std::vector<AgeBand>&);
    void add_member(const std::string& patient_id, const std::vector<std::pair<std::size_t, double>>& events);
    void finalize();

    Sex sex_;
    AgeBand band_;
    std::size_t n_conditions_;
    std::vector<std::size_t> applicable_;
    std::vector<std::string> patient_ids_;
    std::vector<double> ages_;                            // size() x n_conditions_, NaN = absent
    std::vector<std::vector<std::uint64_t>> cond_bits_;   // per condition
    std::vector<std::size_t> cond_counts_;
    std::size_t total_events_ = 0;
};

/// Splits the validated cohort into 2 x |bands| strata (every sex/band pair,
/// including empty ones), deterministically ordered: female strata first,
/// bands in ascending order, members sorted by patient_id.
std::vector<Stratum> stratify(const Cohort& cohort, const ConditionCatalog& catalog,
                              const std::vector<AgeBand>& bands);

/// The whole-sex view used by heatmaps and condition summaries: one stratum
/// per sex with the band [0, inf).
Stratum sex_cohort_stratum(const Cohort& cohort, const ConditionCatalog& catalog, Sex sex);

std::size_t popcount_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

}  // namespace mltc
