#include "mltc/cohort.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "mltc/tsv.hpp"

namespace mltc {

namespace {

double parse_age(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        if (!std::isfinite(v)) throw ValidationError(where + ": age is not finite");
        if (v < 0.0) throw ValidationError(where + ": negative age " + s);
        if (v > 120.0) throw ValidationError(where + ": age above 120: " + s);
        return v;
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError(where + ": malformed age '" + s + "'");
    }
}

std::string row_ref(const DelimitedReader& r) {
    return r.path().string() + ":" + std::to_string(r.line_number());
}

}  // namespace

const Patient& Cohort::patient_by_id(const std::string& id) const {
    const auto it = std::lower_bound(patients.begin(), patients.end(), id,
                                     [](const Patient& p, const std::string& key) { return p.patient_id < key; });
    if (it == patients.end() || it->patient_id != id) throw ValidationError("unknown patient_id: " + id);
    return *it;
}

std::size_t Cohort::count_by_sex(Sex sex) const {
    return static_cast<std::size_t>(
        std::count_if(patients.begin(), patients.end(), [&](const Patient& p) { return p.sex == sex; }));
}

Cohort load_cohort(const std::filesystem::path& diagnoses_path, const ConditionCatalog& catalog,
                   const std::optional<std::filesystem::path>& patients_path) {
    std::map<std::string, Patient> patients;

    if (patients_path) {
        DelimitedReader reader(*patients_path);
        const std::size_t c_pid = reader.require_column("patient_id");
        const std::size_t c_sex = reader.require_column("sex");
        const auto c_age = reader.column("age");
        const auto c_eth = reader.column("ethnicity");
        const auto c_imd = reader.column("imd_quintile");
        std::vector<std::string> row;
        while (reader.next(row)) {
            if (row.size() <= std::max(c_pid, c_sex))
                throw ValidationError(row_ref(reader) + ": malformed row");
            Patient p;
            p.patient_id = row[c_pid];
            if (p.patient_id.empty()) throw ValidationError(row_ref(reader) + ": empty patient_id");
            try {
                p.sex = sex_from_string(row[c_sex]);
            } catch (const ValidationError& e) {
                throw ValidationError(row_ref(reader) + ": " + e.what());
            }
            if (c_age && *c_age < row.size() && !row[*c_age].empty())
                p.attained_age = parse_age(row[*c_age], row_ref(reader));
            if (c_eth && *c_eth < row.size() && !row[*c_eth].empty()) p.ethnicity = row[*c_eth];
            if (c_imd && *c_imd < row.size() && !row[*c_imd].empty()) {
                int q = 0;
                const auto& s = row[*c_imd];
                const auto res = std::from_chars(s.data(), s.data() + s.size(), q);
                if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || q < 1 || q > 5)
                    throw ValidationError(row_ref(reader) + ": imd_quintile must be an integer in [1,5], got '" + s + "'");
                p.imd_quintile = q;
            }
            if (!patients.emplace(p.patient_id, p).second)
                throw ValidationError(row_ref(reader) + ": duplicate patient_id '" + p.patient_id + "'");
        }
    }

    DelimitedReader reader(diagnoses_path);
    const std::size_t c_pid = reader.require_column("patient_id");
    const std::size_t c_sex = reader.require_column("sex");
    const std::size_t c_cond = reader.require_column("condition_id");
    const std::size_t c_age = reader.require_column("age_at_first_diagnosis");

    std::vector<DiagnosisRecord> records;
    std::set<std::pair<std::string, std::size_t>> seen;
    std::vector<std::string> row;
    while (reader.next(row)) {
        const std::size_t needed = std::max({c_pid, c_sex, c_cond, c_age}) + 1;
        if (row.size() < needed) throw ValidationError(row_ref(reader) + ": malformed row");
        const std::string& pid = row[c_pid];
        if (pid.empty()) throw ValidationError(row_ref(reader) + ": empty patient_id");
        Sex sex;
        try {
            sex = sex_from_string(row[c_sex]);
        } catch (const ValidationError& e) {
            throw ValidationError(row_ref(reader) + ": " + e.what());
        }

        const auto it = patients.find(pid);
        if (it == patients.end()) {
            if (patients_path)
                throw ValidationError(row_ref(reader) + ": patient '" + pid + "' not present in patients file");
            Patient p;
            p.patient_id = pid;
            p.sex = sex;
            patients.emplace(pid, p);
        } else if (it->second.sex != sex) {
            throw ValidationError(row_ref(reader) + ": sex of patient '" + pid + "' contradicts earlier rows");
        }

        const auto cond = catalog.index_of(row[c_cond]);
        if (!cond) throw ValidationError(row_ref(reader) + ": unknown condition_id '" + row[c_cond] + "'");
        if (!catalog.entry(*cond).applicable_to(sex))
            throw ValidationError(row_ref(reader) + ": condition '" + row[c_cond] + "' not applicable to sex " +
                                  to_string(sex));
        if (!seen.emplace(pid, *cond).second)
            throw ValidationError(row_ref(reader) + ": duplicate diagnosis of '" + row[c_cond] + "' for patient '" +
                                  pid + "'");

        DiagnosisRecord rec;
        rec.patient_id = pid;
        rec.condition_idx = *cond;
        rec.age = parse_age(row[c_age], row_ref(reader));
        records.push_back(std::move(rec));
    }

    Cohort cohort;
    cohort.patients.reserve(patients.size());
    for (auto& [id, p] : patients) cohort.patients.push_back(std::move(p));
    std::sort(cohort.patients.begin(), cohort.patients.end(),
              [](const Patient& a, const Patient& b) { return a.patient_id < b.patient_id; });
    std::sort(records.begin(), records.end(), [&](const DiagnosisRecord& a, const DiagnosisRecord& b) {
        if (a.patient_id != b.patient_id) return a.patient_id < b.patient_id;
        return catalog.entry(a.condition_idx).condition_id < catalog.entry(b.condition_idx).condition_id;
    });
    cohort.records = std::move(records);
    return cohort;
}

}  // namespace mltc
