#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mltc/catalog.hpp"
#include "mltc/common.hpp"

namespace mltc {

struct Patient {
    std::string patient_id;
    Sex sex = Sex::male;
    std::optional<double> attained_age;  // age at end of study, for demographics
    std::optional<std::string> ethnicity;
    std::optional<int> imd_quintile;  // 1..5
};

/// One patient's age at first diagnosis of one condition; unique per
/// (patient, condition) by definition.
struct DiagnosisRecord {
    std::string patient_id;
    std::size_t condition_idx = 0;  // index into the catalog
    double age = 0.0;               // decimal years, [0, 120]
};

struct Cohort {
    std::vector<Patient> patients;         // sorted by patient_id
    std::vector<DiagnosisRecord> records;  // sorted by (patient_id, condition_id)

    const Patient& patient_by_id(const std::string& id) const;
    std::size_t count_by_sex(Sex sex) const;
};

/// Loads the long-format diagnoses file (patient_id, sex, condition_id,
/// age_at_first_diagnosis) and an optional patients file with demographics
/// (patient_id, sex [, age][, ethnicity][, imd_quintile]).
/// Rejects unknown conditions, sex-inapplicable diagnoses, duplicate
/// (patient, condition) rows, and out-of-range ages; errors carry the
/// offending row number.
Cohort load_cohort(const std::filesystem::path& diagnoses_path, const ConditionCatalog& catalog,
                   const std::optional<std::filesystem::path>& patients_path = std::nullopt);

}  // namespace mltc
