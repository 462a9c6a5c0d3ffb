#include "mltc/stratify.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <map>

namespace mltc {

std::string AgeBand::slug() const {
    std::string out;
    for (char c : label) {
        if (c == '<')
            out += "lt";
        else if (c == '>')
            out += "gt";
        else if (c == '+')
            out += "plus";
        else if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
            out += c;
    }
    return out.empty() ? "band" : out;
}

std::vector<AgeBand> make_bands(const std::vector<double>& boundaries) {
    for (double b : boundaries)
        if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("band boundaries must be positive and finite");
    for (std::size_t i = 1; i < boundaries.size(); ++i)
        if (boundaries[i] <= boundaries[i - 1]) throw ValidationError("band boundaries must be strictly ascending");

    const auto num = [](double v) {
        // integer boundaries render without a decimal point
        if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
        return fmt_fixed(v, 2);
    };

    std::vector<AgeBand> bands;
    double lo = 0.0;
    for (std::size_t i = 0; i <= boundaries.size(); ++i) {
        AgeBand band;
        band.lower = lo;
        if (i < boundaries.size()) {
            band.upper = boundaries[i];
            if (i == 0) {
                band.label = "<" + num(band.upper);
            } else if (band.lower == std::floor(band.lower) && band.upper == std::floor(band.upper)) {
                band.label = num(band.lower) + "-" + num(band.upper - 1);
            } else {
                band.label = num(band.lower) + "-<" + num(band.upper);
            }
            lo = band.upper;
        } else {
            band.upper = std::numeric_limits<double>::infinity();
            band.label = num(band.lower) + "+";
        }
        bands.push_back(std::move(band));
    }
    return bands;
}

std::vector<AgeBand> default_bands() { return make_bands({45.0, 65.0}); }

std::vector<double> parse_band_boundaries(const std::string& spec) {
    std::vector<double> out;
    for (const auto& tok : split(spec, ',')) {
        const std::string t = trim(tok);
        if (t.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(t, &pos));
            if (pos != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw ValidationError("malformed band boundary '" + t + "' in '" + spec + "'");
        }
    }
    if (out.empty()) throw ValidationError("no band boundaries in '" + spec + "'");
    return out;
}

Stratum::Stratum(Sex sex, AgeBand band, const ConditionCatalog& catalog)
    : sex_(sex), band_(std::move(band)), n_conditions_(catalog.size()), applicable_(catalog.applicable_indices(sex)) {}

void Stratum::add_member(const std::string& patient_id, const std::vector<std::pair<std::size_t, double>>& events) {
    patient_ids_.push_back(patient_id);
    ages_.resize(ages_.size() + n_conditions_, std::numeric_limits<double>::quiet_NaN());
    double* row = ages_.data() + ages_.size() - n_conditions_;
    for (const auto& [cond, age] : events) row[cond] = age;
    total_events_ += events.size();
}

void Stratum::finalize() {
    const std::size_t words = (patient_ids_.size() + 63) / 64;
    cond_bits_.assign(n_conditions_, std::vector<std::uint64_t>(words, 0));
    cond_counts_.assign(n_conditions_, 0);
    for (std::size_t m = 0; m < patient_ids_.size(); ++m) {
        const double* row = ages_.data() + m * n_conditions_;
        for (std::size_t c = 0; c < n_conditions_; ++c) {
            if (!std::isnan(row[c])) {
                cond_bits_[c][m / 64] |= std::uint64_t{1} << (m % 64);
                ++cond_counts_[c];
            }
        }
    }
}

bool Stratum::has_event(std::size_t member, std::size_t condition_idx) const {
    return !std::isnan(event_age(member, condition_idx));
}

double Stratum::event_age(std::size_t member, std::size_t condition_idx) const {
    return ages_[member * n_conditions_ + condition_idx];
}

const std::vector<std::uint64_t>& Stratum::condition_bits(std::size_t condition_idx) const {
    return cond_bits_.at(condition_idx);
}

std::size_t Stratum::condition_count(std::size_t condition_idx) const { return cond_counts_.at(condition_idx); }

std::size_t popcount_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::size_t count = 0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) count += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return count;
}

std::vector<Stratum> stratify(const Cohort& cohort, const ConditionCatalog& catalog,
                              const std::vector<AgeBand>& bands) {
    if (bands.empty()) throw ValidationError("stratify requires at least one band");

    // per-patient event lists, keyed by id so the output is ordered
    std::map<std::string, std::vector<std::pair<std::size_t, double>>> by_patient;
    for (const auto& rec : cohort.records) by_patient[rec.patient_id].push_back({rec.condition_idx, rec.age});

    std::vector<Stratum> strata;
    for (Sex sex : {Sex::female, Sex::male}) {
        for (const auto& band : bands) {
            Stratum stratum(sex, band, catalog);
            std::vector<std::pair<std::size_t, double>> in_band;
            for (const auto& [pid, events] : by_patient) {
                if (cohort.patient_by_id(pid).sex != sex) continue;
                in_band.clear();
                for (const auto& ev : events)
                    if (band.contains(ev.second)) in_band.push_back(ev);
                if (!in_band.empty()) stratum.add_member(pid, in_band);
            }
            stratum.finalize();
            strata.push_back(std::move(stratum));
        }
    }
    return strata;
}

Stratum sex_cohort_stratum(const Cohort& cohort, const ConditionCatalog& catalog, Sex sex) {
    AgeBand all;
    all.label = "all";
    all.lower = 0.0;
    all.upper = std::numeric_limits<double>::infinity();
    auto strata = stratify(cohort, catalog, {all});
    return std::move(strata[sex == Sex::female ? 0 : 1]);
}

}  // namespace mltc
