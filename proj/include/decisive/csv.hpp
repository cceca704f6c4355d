#pragma once

// Minimal RFC 4180-style CSV reading used by every ingest path: comma
// delimiter, '.' decimal separator, UTF-8, optional double-quoted fields.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace decisive::csv {

struct Row {
  std::size_t line = 0;  // 1-based physical line in the source
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Column index by name, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
};

/// Splits text into header + rows. Blank lines are skipped; CRLF accepted.
/// Throws Error(MalformedInput) on an unterminated quote or a row whose field
/// count differs from the header.
Table parse(std::string_view text, const std::string& source = {});

std::string read_file(const std::filesystem::path& path);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);
std::optional<bool> parse_bool(std::string_view s);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Quotes a field when it contains a delimiter, quote or newline.
std::string escape(std::string_view field);

std::string_view trim(std::string_view s);

}  // namespace decisive::csv
