#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Delimiter-separated text tables with '#'-prefixed metadata lines.
namespace casimir::io {

/// Splits on ',', ';', tab or runs of spaces. Empty fields between commas are kept.
std::vector<std::string> split_fields(std::string_view line);

/// Parses a double; throws DataQualityError naming `context` on failure.
double parse_number(std::string_view text, std::string_view context);

struct Metadata {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
  }
};

struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  Metadata metadata;

  /// Index of a column by exact header name; throws DataQualityError if absent.
  std::size_t column(std::string_view name) const;
};

/// Reads a purely numeric table: metadata lines ("# key: value"), one header
/// row, then numeric rows with as many fields as the header.
NumericTable read_numeric_table(std::istream& in, std::string_view source);
NumericTable read_numeric_table(const std::filesystem::path& path);

/// Fixed-format, locale-independent rendering ("%.10e") so output files are
/// byte-reproducible.
std::string format_number(double value);

void write_table(std::ostream& out, const Metadata& metadata,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

/// Writes to `path` atomically: the file only appears once fully written.
void write_table_file(const std::filesystem::path& path, const Metadata& metadata,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

/// 64-bit FNV-1a; stable across platforms, used for config hashes.
std::uint64_t fnv1a64(std::string_view bytes);
std::string to_hex(std::uint64_t value);

}  // namespace casimir::io
