#pragma once

// Report tables rendered as Markdown, CSV or JSON, and SVG plots.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "decisive/core.hpp"

namespace decisive::report {

enum class Format { md, csv, json };
std::optional<Format> parse_format(std::string_view s);

enum class Glyph { good, bad, none };  // ✓ / X
std::string_view glyph_text(Glyph g, bool ascii);
std::optional<Glyph> parse_glyph(std::string_view s);  // either spelling

enum class ColumnKind { number, glyph, text };

struct Column {
  std::string name;  // unit goes in the name, e.g. "AD (m)"
  ColumnKind kind = ColumnKind::text;
  int decimals = 2;  // number columns only
};

struct Empty {
  friend bool operator==(Empty, Empty) { return true; }
};
using Cell = std::variant<Empty, double, Glyph, std::string>;

struct ReportTable {
  std::string title;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  ReportTable& text(std::string name);
  ReportTable& number(std::string name, int decimals = 2);
  ReportTable& glyph(std::string name);
  ReportTable& add(std::vector<Cell> row);
};

struct RenderOptions {
  bool ascii = false;  // ok / bad / none instead of ✓ / X
};

/// Fixed decimals, never "-0.00".
std::string format_number(double v, int decimals);

/// Throws SchemaMismatch when a row's width or a cell type disagrees with the columns.
std::string render(const ReportTable& t, Format f, const RenderOptions& opt = {});

/// Several tables in one document. CSV tables are each preceded by "# <title>"
/// and separated by a blank line; JSON is {"tables": [...]}.
std::string render_document(const std::vector<ReportTable>& tables, Format f, const RenderOptions& opt = {});

struct TextTable {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Inverse of render_document for CSV.
std::vector<TextTable> parse_csv_document(std::string_view text, const std::string& source = "report");

// ---------------------------------------------------------------------------
// SVG

enum class PlotKind { ncap_scatter, deviation };
std::optional<PlotKind> parse_plot_kind(std::string_view s);

struct PlotSeries {
  std::string label;
  std::vector<Vec2> points;
};

/// ncap_scatter: one point per series, x = N_AL on 0..4, y = N_CP.
/// deviation: one polyline per series, x = time (s), y = deviation (m).
/// Throws EmptyData when there is nothing to draw.
std::string plot_svg(PlotKind kind, const std::vector<PlotSeries>& series, const std::string& title = {});

}  // namespace decisive::report
