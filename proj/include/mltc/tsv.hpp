#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mltc {

/// Row-oriented reader for headered delimited text (TSV/CSV).
/// The delimiter is inferred from the extension (.csv -> comma, otherwise tab).
/// Fields may be wrapped in double quotes; embedded delimiters inside quotes
/// are honoured, embedded quotes are doubled per the usual CSV convention.
class DelimitedReader {
  public:
    explicit DelimitedReader(const std::filesystem::path& path);

    const std::vector<std::string>& header() const { return header_; }

    /// Column index by (case-insensitive) header name, or nullopt.
    std::optional<std::size_t> column(const std::string& name) const;

    /// Like column(), but throws ValidationError naming the file.
    std::size_t require_column(const std::string& name) const;

    /// Advances to the next non-empty row. Returns false at end of file.
    bool next(std::vector<std::string>& fields);

    /// 1-based line number of the row most recently returned by next().
    std::size_t line_number() const { return line_; }

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
    std::vector<std::string> lines_;
    std::vector<std::string> header_;
    std::size_t cursor_ = 0;
    std::size_t line_ = 0;
    char delim_ = '\t';
};

char infer_delimiter(const std::filesystem::path& path);
std::vector<std::string> split_delimited(const std::string& line, char delim);

/// Writes `content` to `path` atomically enough for our purposes (truncate +
/// write); creates parent directories. Throws on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace mltc
