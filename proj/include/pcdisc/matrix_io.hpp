#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcdisc/pc_matrix.hpp"

namespace pcdisc {

enum class MatrixFormat { csv, json, automatic };

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_plain_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Decimal number or an exact fraction "a/b".
inline std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = parse_plain_number(s.substr(0, slash));
    const auto den = parse_plain_number(s.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
  }
  return parse_plain_number(s);
}

/// Splits one CSV record; double-quoted cells may contain commas and "".
inline std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t p = 0; p < line.size(); ++p) {
    const char ch = line[p];
    if (quoted) {
      if (ch == '"' && p + 1 < line.size() && line[p + 1] == '"') {
        cells.back() += '"';
        ++p;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  return cells;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace detail

/// CSV: optional label row (no numeric cells), then n rows of n cells. Coordinates in errors
/// refer to matrix cells, not file lines.
inline PCMatrix parse_csv_matrix(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!detail::trim(line).empty()) records.push_back(detail::split_csv_record(line));
    pos = end + 1;
  }
  if (records.empty()) throw ValidationError("empty input");

  std::vector<std::string> labels;
  const bool header = std::none_of(records.front().begin(), records.front().end(),
                                   [](const std::string& cell) { return detail::parse_number(cell).has_value(); });
  if (header) {
    for (const auto& cell : records.front()) labels.emplace_back(detail::trim(cell));
    records.erase(records.begin());
  }

  const std::size_t n = records.size();
  if (n == 0) throw ValidationError("no matrix rows after the label row");
  if (header && labels.size() != n) {
    throw ValidationError("label row has " + std::to_string(labels.size()) + " names for " +
                          std::to_string(n) + " rows");
  }
  std::vector<std::vector<double>> rows(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (records[r].size() != n) {
      throw ValidationError("matrix is not square: row has " + std::to_string(records[r].size()) +
                                " entries, expected " + std::to_string(n),
                            r + 1, 0);
    }
    for (std::size_t c = 0; c < n; ++c) {
      const auto v = detail::parse_number(records[r][c]);
      if (!v) throw ValidationError("cannot parse '" + records[r][c] + "' as a number", r + 1, c + 1);
      rows[r].push_back(*v);
    }
  }
  return PCMatrix::from_rows(rows, std::move(labels));
}

/// JSON: {"labels": [...], "matrix": [[...], ...]}; labels optional.
/// Entries are numbers or fraction strings such as "1/3".
inline PCMatrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("expected a JSON object with a \"matrix\" field");
  const auto it = doc.find("matrix");
  if (it == doc.end() || !it->is_array()) throw ValidationError("\"matrix\" must be an array of rows");
  const auto& grid = *it;
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (!grid[r].is_array()) throw ValidationError("row is not an array", r + 1, 0);
    std::vector<double> row;
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      const auto& cell = grid[r][c];
      std::optional<double> v;
      if (cell.is_number()) v = cell.get<double>();
      else if (cell.is_string()) v = detail::parse_number(cell.get<std::string>());
      if (!v) throw ValidationError("cannot parse " + cell.dump() + " as a number", r + 1, c + 1);
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> labels;
  if (const auto lt = doc.find("labels"); lt != doc.end() && !lt->is_null()) {
    if (!lt->is_array()) throw ValidationError("\"labels\" must be an array of strings");
    for (const auto& l : *lt) {
      if (!l.is_string()) throw ValidationError("\"labels\" must be an array of strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return PCMatrix::from_rows(rows, std::move(labels));
}

inline PCMatrix parse_json_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(doc);
}

/// Picks a format from the file extension, falling back to the first
/// non-blank character ('{' means JSON).
inline MatrixFormat sniff_format(std::string_view path, std::string_view text) {
  auto ends_with = [&](std::string_view ext) {
    if (path.size() < ext.size()) return false;
    auto tail = path.substr(path.size() - ext.size());
    for (std::size_t k = 0; k < ext.size(); ++k) {
      if (std::tolower(static_cast<unsigned char>(tail[k])) != ext[k]) return false;
    }
    return true;
  };
  if (ends_with(".json")) return MatrixFormat::json;
  if (ends_with(".csv")) return MatrixFormat::csv;
  const auto body = detail::trim(text);
  return !body.empty() && body.front() == '{' ? MatrixFormat::json : MatrixFormat::csv;
}

inline PCMatrix parse_matrix(std::string_view text, MatrixFormat format, std::string_view path = {}) {
  if (format == MatrixFormat::automatic) format = sniff_format(path, text);
  return format == MatrixFormat::json ? parse_json_matrix(text) : parse_csv_matrix(text);
}

/// Label row plus full-precision entries; parse_csv_matrix reads it back
/// bit-exactly.
inline std::string to_csv(const PCMatrix& m) {
  std::string out;
  const auto& labels = m.labels();
  for (std::size_t c = 0; c < labels.size(); ++c) {
    if (c) out += ',';
    out += detail::quote_csv(labels[c]);
  }
  out += '\n';
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (c) out += ',';
      out += detail::format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json to_json(const PCMatrix& m) {
  return nlohmann::json{{"labels", m.labels()}, {"matrix", m.rows()}};
}

}  // namespace pcdisc
