#include "decisive/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "decisive/error.hpp"

namespace decisive::csv {

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Table parse(std::string_view text, const std::string& source) {
  // Strip a UTF-8 byte order mark.
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  Table table;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool quoted_field = false;
  std::size_t line = 1;
  std::size_t row_line = 1;
  bool header_done = false;

  auto end_field = [&] {
    fields.push_back(quoted_field ? field : std::string(trim(field)));
    field.clear();
    quoted_field = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = fields.size() == 1 && fields[0].empty();
    if (!blank) {
      if (!header_done) {
        table.header = std::move(fields);
        header_done = true;
      } else {
        if (fields.size() != table.header.size()) {
          throw Error(ErrorCode::MalformedInput,
                      "expected " + std::to_string(table.header.size()) + " fields, found " +
                          std::to_string(fields.size()),
                      row_line, source);
        }
        table.rows.push_back({row_line, std::move(fields)});
      }
    }
    fields.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && trim(field).empty()) {
      field.clear();
      in_quotes = true;
      quoted_field = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_row();
      ++line;
      row_line = line;
    } else if (c == '\r') {
      // handled by trim / newline
    } else {
      field += c;
    }
  }
  if (in_quotes) throw Error(ErrorCode::MalformedInput, "unterminated quoted field", row_line, source);
  if (!field.empty() || !fields.empty()) end_row();
  if (!header_done) throw Error(ErrorCode::MissingColumn, "empty file: no header", 1, source);
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open file", std::nullopt, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<bool> parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "TRUE" || s == "True") return true;
  if (s == "false" || s == "0" || s == "no" || s == "FALSE" || s == "False") return false;
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string escape(std::string_view field) {
  const bool edge_space = !field.empty() && (field.front() == ' ' || field.front() == '\t' ||
                                              field.back() == ' ' || field.back() == '\t');
  if (!edge_space && field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace decisive::csv
