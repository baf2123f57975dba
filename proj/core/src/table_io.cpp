#include "casimir/table_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  line = trim(line);
  if (line.empty()) return fields;

  const bool has_hard = line.find_first_of(",;\t") != std::string_view::npos;
  if (has_hard) {
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find_first_of(",;\t", start);
      const auto field = trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
      fields.emplace_back(field);
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return fields;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) fields.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

double parse_number(std::string_view text, std::string_view context) {
  text = trim(text);
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw DataQualityError(std::string(context) + ": not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::size_t NumericTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw DataQualityError("missing column '" + std::string(name) + "'");
}

NumericTable read_numeric_table(std::istream& in, std::string_view source) {
  NumericTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      auto meta = trim(body.substr(1));
      const auto colon = meta.find(':');
      if (colon != std::string_view::npos) {
        table.metadata.add(std::string(trim(meta.substr(0, colon))),
                           std::string(trim(meta.substr(colon + 1))));
      }
      continue;
    }
    auto fields = split_fields(body);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    if (fields.size() != table.header.size()) {
      throw DataQualityError(where + ": expected " + std::to_string(table.header.size()) +
                             " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_number(f, where));
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) {
    throw DataQualityError(std::string(source) + ": no header row");
  }
  return table;
}

NumericTable read_numeric_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path.string() + "'");
  return read_numeric_table(in, path.string());
}

std::string format_number(double value) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.10e", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_table(std::ostream& out, const Metadata& metadata,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  for (const auto& [k, v] : metadata.entries) out << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + path.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw UsageError("write failed for '" + path.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_table_file(const std::filesystem::path& path, const Metadata& metadata,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream buffer;
  write_table(buffer, metadata, header, rows);
  write_text_file(path, buffer.str());
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace casimir::io
