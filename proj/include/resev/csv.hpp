#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "resev/error.hpp"

namespace resev::csv {

// One parsed CSV file. Rows hold raw string fields; row_lines maps each row
// back to its 1-based line number in the source file for error reporting.
struct Table {
  std::string path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;

  // Index of a named column; throws if the header lacks it.
  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw LoadError(path, 1, 0,
                    "missing required column '" + std::string(name) + "'");
  }
};

namespace detail {

// Splits one physical record into fields. Double-quoted fields may contain
// commas and doubled quotes; no embedded newlines (records are line-based).
inline std::vector<std::string> split_record(const std::string& line,
                                             const std::string& path,
                                             std::size_t lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  std::size_t i = 0;
  const std::size_t n = line.size();
  bool at_field_start = true;
  while (i < n) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < n && line[i + 1] == '"') {
          cur += '"';
          i += 2;
        } else {
          quoted = false;
          ++i;
        }
      } else {
        cur += c;
        ++i;
      }
    } else if (c == '"' && at_field_start) {
      quoted = true;
      at_field_start = false;
      ++i;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      at_field_start = true;
      ++i;
    } else {
      cur += c;
      at_field_start = false;
      ++i;
    }
  }
  if (quoted)
    throw LoadError(path, lineno, fields.size() + 1,
                    "unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

inline bool needs_quoting(std::string_view field) {
  return field.find_first_of(",\"\n\r") != std::string_view::npos;
}

}  // namespace detail

// Reads a whole CSV file. Requires a header row; every data row must have
// exactly as many fields as the header. Accepts LF and CRLF line endings and
// skips fully blank lines.
inline Table read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw LoadError(file.string(), 0, 0, "cannot open file");
  Table table;
  table.path = file.string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = detail::split_record(line, table.path, lineno);
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      if (fields.size() != table.header.size())
        throw LoadError(table.path, lineno, fields.size(),
                        "expected " + std::to_string(table.header.size()) +
                            " fields, got " + std::to_string(fields.size()));
      table.rows.push_back(std::move(fields));
      table.row_lines.push_back(lineno);
    }
  }
  if (table.header.empty())
    throw LoadError(table.path, 0, 0, "missing header row");
  return table;
}

// Renders rows back to CSV text with minimal quoting.
inline std::string render(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  auto emit_row = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out << ',';
      if (detail::needs_quoting(fields[i])) {
        out << '"';
        for (char c : fields[i]) {
          if (c == '"') out << '"';
          out << c;
        }
        out << '"';
      } else {
        out << fields[i];
      }
    }
    out << '\n';
  };
  emit_row(header);
  for (const auto& row : rows) emit_row(row);
  return out.str();
}

// Strict numeric field parsers: the whole field must be consumed.

inline long parse_long(const Table& t, std::size_t row, std::size_t col) {
  const std::string& s = t.rows[row][col];
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw LoadError(t.path, t.row_lines[row], col + 1,
                    "not an integer: '" + s + "'");
  return value;
}

inline double parse_double(const Table& t, std::size_t row, std::size_t col) {
  const std::string& s = t.rows[row][col];
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw LoadError(t.path, t.row_lines[row], col + 1,
                    "not a number: '" + s + "'");
  return value;
}

// Splits a '|'-separated list field. Empty field yields an empty list.
inline std::vector<std::string> split_list(const std::string& field) {
  std::vector<std::string> out;
  if (field.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = field.find('|', start);
    if (pos == std::string::npos) {
      out.push_back(field.substr(start));
      break;
    }
    out.push_back(field.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace resev::csv
