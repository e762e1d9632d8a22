#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hiplab {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// 64-bit FNV-1a; stable across platforms, used for config/content hashes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws DataError if absent.
  std::size_t column(const std::string& name) const;
};

/// Minimal comma-separated reader (no quoting). '#' lines are skipped; the
/// first remaining line is the header. Throws DataError on ragged rows.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

double parse_double(const std::string& text);
std::uint64_t parse_uint(const std::string& text);

}  // namespace hiplab
