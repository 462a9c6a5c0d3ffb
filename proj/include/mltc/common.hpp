#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mltc {

enum class Sex { male, female };

std::string to_string(Sex s);
Sex sex_from_string(std::string_view s);

/// Thrown on malformed or contradictory input data; the CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Round half away from zero to `digits` decimal places.
inline double round_half_away(double x, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::round(x * scale) / scale;
}

/// Percentage of count over denom, rounded to 2 decimals.
inline double pct2(double count, double denom) {
    return round_half_away(100.0 * count / denom, 2);
}

/// Fixed-point decimal string with half-away-from-zero rounding.
std::string fmt_fixed(double x, int digits);

std::string lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);

/// FNV-1a 64-bit, used for output content hashes in the run manifest.
std::uint64_t fnv1a64(std::string_view bytes);

/// Deterministic index-space parallel map: fn(i) for i in [0, n).
/// Results must be written by index; scheduling never affects output.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace mltc
