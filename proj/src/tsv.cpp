#include "mltc/tsv.hpp"

#include <fstream>
#include <sstream>

#include "mltc/common.hpp"

namespace mltc {

char infer_delimiter(const std::filesystem::path& path) {
    return lower(path.extension().string()) == ".csv" ? ',' : '\t';
}

std::vector<std::string> split_delimited(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == delim) {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

DelimitedReader::DelimitedReader(const std::filesystem::path& path) : path_(path), delim_(infer_delimiter(path)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    std::string line;
    while (std::getline(in, line)) lines_.push_back(line);
    std::size_t first = 0;
    while (first < lines_.size() && trim(lines_[first]).empty()) ++first;
    if (first == lines_.size()) throw ValidationError("empty file: " + path.string());
    header_ = split_delimited(lines_[first], delim_);
    for (auto& h : header_) h = lower(trim(h));
    cursor_ = first + 1;
    line_ = first + 1;
}

std::optional<std::size_t> DelimitedReader::column(const std::string& name) const {
    const std::string key = lower(name);
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == key) return i;
    return std::nullopt;
}

std::size_t DelimitedReader::require_column(const std::string& name) const {
    if (auto idx = column(name)) return *idx;
    throw ValidationError(path_.string() + ": missing required column '" + name + "'");
}

bool DelimitedReader::next(std::vector<std::string>& fields) {
    while (cursor_ < lines_.size()) {
        const std::string& raw = lines_[cursor_];
        ++cursor_;
        if (trim(raw).empty()) continue;
        fields = split_delimited(raw, delim_);
        for (auto& f : fields) f = trim(f);
        line_ = cursor_;
        return true;
    }
    return false;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace mltc
