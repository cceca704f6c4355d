#include "decisive/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "decisive/csv.hpp"
#include "decisive/error.hpp"

namespace decisive::report {

std::optional<Format> parse_format(std::string_view s) {
  if (s == "md" || s == "markdown") return Format::md;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  return std::nullopt;
}

std::string_view glyph_text(Glyph g, bool ascii) {
  switch (g) {
    case Glyph::good: return ascii ? "ok" : "✓";
    case Glyph::bad: return ascii ? "bad" : "/";
    case Glyph::none: return ascii ? "none" : "X";
  }
  return "?";
}

std::optional<Glyph> parse_glyph(std::string_view s) {
  if (s == "✓" || s == "ok") return Glyph::good;
  if (s == "/" || s == "bad") return Glyph::bad;
  if (s == "X" || s == "none") return Glyph::none;
  return std::nullopt;
}

ReportTable& ReportTable::text(std::string name) {
  columns.push_back({std::move(name), ColumnKind::text, 0});
  return *this;
}
ReportTable& ReportTable::number(std::string name, int decimals) {
  columns.push_back({std::move(name), ColumnKind::number, decimals});
  return *this;
}
ReportTable& ReportTable::glyph(std::string name) {
  columns.push_back({std::move(name), ColumnKind::glyph, 0});
  return *this;
}
ReportTable& ReportTable::add(std::vector<Cell> row) {
  rows.push_back(std::move(row));
  return *this;
}

std::string format_number(double v, int decimals) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  std::string s(buf, r.ptr);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace {

void check(const ReportTable& t) {
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    const auto where = "table '" + t.title + "' row " + std::to_string(i + 1);
    if (row.size() != t.columns.size()) {
      fail(ErrorCode::SchemaMismatch, where + " has " + std::to_string(row.size()) + " cells, expected " +
                                          std::to_string(t.columns.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& cell = row[c];
      if (std::holds_alternative<Empty>(cell)) continue;
      const auto kind = t.columns[c].kind;
      const bool ok = (kind == ColumnKind::number && std::holds_alternative<double>(cell)) ||
                      (kind == ColumnKind::glyph && std::holds_alternative<Glyph>(cell)) ||
                      (kind == ColumnKind::text && std::holds_alternative<std::string>(cell));
      if (!ok) fail(ErrorCode::SchemaMismatch, where + " column '" + t.columns[c].name + "' has the wrong cell type");
    }
  }
}

std::string cell_text(const Column& col, const Cell& cell, const RenderOptions& opt) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d, col.decimals);
  if (const auto* g = std::get_if<Glyph>(&cell)) return std::string(glyph_text(*g, opt.ascii));
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return {};
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += "\\|";
    else if (ch == '\n') out += ' ';
    else out += ch;
  }
  return out;
}

std::string render_md(const ReportTable& t, const RenderOptions& opt) {
  std::string out;
  if (!t.title.empty()) out += "## " + t.title + "\n\n";
  out += '|';
  for (const auto& c : t.columns) out += ' ' + md_escape(c.name) + " |";
  out += "\n|";
  for (const auto& c : t.columns) out += c.kind == ColumnKind::number ? "---:|" : "---|";
  out += '\n';
  for (const auto& row : t.rows) {
    out += '|';
    for (std::size_t c = 0; c < row.size(); ++c) out += ' ' + md_escape(cell_text(t.columns[c], row[c], opt)) + " |";
    out += '\n';
  }
  return out;
}

std::string render_csv(const ReportTable& t, const RenderOptions& opt) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + csv::escape(t.columns[c].name);
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv::escape(cell_text(t.columns[c], row[c], opt));
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json table_json(const ReportTable& t, const RenderOptions& opt) {
  using json = nlohmann::ordered_json;
  json cols = json::array();
  for (const auto& c : t.columns) cols.push_back(c.name);
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& col = t.columns[c];
      const auto& cell = row[c];
      if (std::holds_alternative<Empty>(cell)) {
        r[col.name] = nullptr;
      } else if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d)) r[col.name] = *csv::parse_double(format_number(*d, col.decimals));
        else r[col.name] = format_number(*d, col.decimals);
      } else {
        r[col.name] = cell_text(col, cell, opt);
      }
    }
    rows.push_back(r);
  }
  return {{"title", t.title}, {"columns", cols}, {"rows", rows}};
}

}  // namespace

std::string render(const ReportTable& t, Format f, const RenderOptions& opt) {
  check(t);
  switch (f) {
    case Format::md: return render_md(t, opt);
    case Format::csv: return render_csv(t, opt);
    case Format::json: return table_json(t, opt).dump(2) + "\n";
  }
  return {};
}

std::string render_document(const std::vector<ReportTable>& tables, Format f, const RenderOptions& opt) {
  for (const auto& t : tables) check(t);
  std::string out;
  switch (f) {
    case Format::md:
      for (std::size_t i = 0; i < tables.size(); ++i) out += (i ? "\n" : "") + render_md(tables[i], opt);
      return out;
    case Format::csv:
      for (std::size_t i = 0; i < tables.size(); ++i) {
        out += (i ? "\n# " : "# ") + tables[i].title + "\n" + render_csv(tables[i], opt);
      }
      return out;
    case Format::json: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& t : tables) arr.push_back(table_json(t, opt));
      return nlohmann::ordered_json{{"tables", arr}}.dump(2) + "\n";
    }
  }
  return out;
}

std::vector<TextTable> parse_csv_document(std::string_view text, const std::string& source) {
  std::vector<TextTable> out;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::string block;
  std::size_t block_line = 0;
  auto flush = [&] {
    if (out.empty()) return;
    if (csv::trim(block).empty()) {
      block.clear();
      return;
    }
    std::string padded(block_line - 1, '\n');
    const auto t = csv::parse(padded + block, source);
    out.back().header = t.header;
    for (const auto& r : t.rows) out.back().rows.push_back(r.fields);
    block.clear();
  };
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto ln = text.substr(pos, nl - pos);
    if (ln.substr(0, 2) == "# ") {
      flush();
      std::string title(ln.substr(2));
      if (!title.empty() && title.back() == '\r') title.pop_back();
      out.push_back({title, {}, {}});
      block_line = line + 1;
    } else if (!out.empty()) {
      block += ln;
      block += '\n';
    } else if (!csv::trim(ln).empty()) {
      throw Error(ErrorCode::MalformedInput, "expected a '# <title>' line", line, source);
    }
    pos = nl + 1;
    ++line;
  }
  flush();
  return out;
}

// ---------------------------------------------------------------------------
// SVG

std::optional<PlotKind> parse_plot_kind(std::string_view s) {
  if (s == "ncap-scatter") return PlotKind::ncap_scatter;
  if (s == "deviation") return PlotKind::deviation;
  return std::nullopt;
}

namespace {

constexpr double kW = 640, kH = 480, kLeft = 70, kRight = 30, kTop = 50, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string xml(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string n2(double v) { return format_number(v, 2); }

// 1, 2 or 5 times a power of ten.
double nice_step(double span, int target) {
  if (!(span > 0)) return 1.0;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f <= 1 ? 1 : f <= 2 ? 2 : f <= 5 ? 5 : 10) * mag;
}

struct Axes {
  double x0, x1, y0, y1, xstep, ystep;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); }
  double py(double y) const { return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom); }
};

std::string frame(const Axes& a, const std::string& title, const std::string& xlabel, const std::string& ylabel) {
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + n2(kW) + "\" height=\"" + n2(kH) + "\" viewBox=\"0 0 " +
       n2(kW) + " " + n2(kH) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + n2(kW) + "\" height=\"" + n2(kH) + "\" fill=\"white\"/>\n";
  if (!title.empty()) {
    s += "<text x=\"" + n2(kW / 2) + "\" y=\"25\" text-anchor=\"middle\" font-size=\"16\">" + xml(title) + "</text>\n";
  }
  s += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double x = a.x0; x <= a.x1 + 1e-9; x += a.xstep)
    s += "<line x1=\"" + n2(a.px(x)) + "\" y1=\"" + n2(a.py(a.y0)) + "\" x2=\"" + n2(a.px(x)) + "\" y2=\"" + n2(a.py(a.y1)) + "\"/>\n";
  for (double y = a.y0; y <= a.y1 + 1e-9; y += a.ystep)
    s += "<line x1=\"" + n2(a.px(a.x0)) + "\" y1=\"" + n2(a.py(y)) + "\" x2=\"" + n2(a.px(a.x1)) + "\" y2=\"" + n2(a.py(y)) + "\"/>\n";
  s += "</g>\n";
  s += "<g stroke=\"black\" stroke-width=\"1.5\">\n";
  s += "<line x1=\"" + n2(a.px(a.x0)) + "\" y1=\"" + n2(a.py(a.y0)) + "\" x2=\"" + n2(a.px(a.x1)) + "\" y2=\"" + n2(a.py(a.y0)) + "\"/>\n";
  s += "<line x1=\"" + n2(a.px(a.x0)) + "\" y1=\"" + n2(a.py(a.y0)) + "\" x2=\"" + n2(a.px(a.x0)) + "\" y2=\"" + n2(a.py(a.y1)) + "\"/>\n";
  s += "</g>\n";
  const int xdec = a.xstep >= 1 ? 0 : a.xstep >= 0.1 ? 1 : 2;
  const int ydec = a.ystep >= 1 ? 0 : a.ystep >= 0.1 ? 1 : 2;
  for (double x = a.x0; x <= a.x1 + 1e-9; x += a.xstep)
    s += "<text x=\"" + n2(a.px(x)) + "\" y=\"" + n2(a.py(a.y0) + 18) + "\" text-anchor=\"middle\">" + format_number(x, xdec) + "</text>\n";
  for (double y = a.y0; y <= a.y1 + 1e-9; y += a.ystep)
    s += "<text x=\"" + n2(a.px(a.x0) - 8) + "\" y=\"" + n2(a.py(y) + 4) + "\" text-anchor=\"end\">" + format_number(y, ydec) + "</text>\n";
  s += "<text x=\"" + n2((a.px(a.x0) + a.px(a.x1)) / 2) + "\" y=\"" + n2(kH - 15) + "\" text-anchor=\"middle\">" + xml(xlabel) + "</text>\n";
  s += "<text x=\"18\" y=\"" + n2((a.py(a.y0) + a.py(a.y1)) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       n2((a.py(a.y0) + a.py(a.y1)) / 2) + ")\">" + xml(ylabel) + "</text>\n";
  return s;
}

}  // namespace

std::string plot_svg(PlotKind kind, const std::vector<PlotSeries>& series, const std::string& title) {
  std::size_t points = 0;
  double xmax = 0, ymax = 0;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(ErrorCode::InvalidArgument, "non-finite plot value in '" + s.label + "'");
      xmax = std::max(xmax, p.x);
      ymax = std::max(ymax, p.y);
      ++points;
    }
  }
  if (points == 0) fail(ErrorCode::EmptyData, "nothing to plot");

  std::string out;
  if (kind == PlotKind::ncap_scatter) {
    const double ystep = nice_step(ymax, 5);
    const Axes a{0, 4, 0, std::max(ystep, std::ceil(ymax * 1.1 / ystep) * ystep), 1, ystep};
    out = frame(a, title.empty() ? "NCAP coordinates" : title, "N_AL", "N_CP");
    for (std::size_t i = 0; i < series.size(); ++i) {
      const char* color = kPalette[i % std::size(kPalette)];
      for (const auto& p : series[i].points) {
        out += "<circle cx=\"" + n2(a.px(p.x)) + "\" cy=\"" + n2(a.py(p.y)) + "\" r=\"6\" fill=\"" + color + "\"/>\n";
        out += "<text x=\"" + n2(a.px(p.x) + 9) + "\" y=\"" + n2(a.py(p.y) - 9) + "\">" + xml(series[i].label) + " (" +
               std::to_string(static_cast<int>(std::lround(p.x))) + ", " + n2(p.y) + ")</text>\n";
      }
    }
  } else {
    const double xstep = nice_step(xmax, 8);
    const double ystep = nice_step(ymax, 5);
    const Axes a{0, std::max(xstep, std::ceil(xmax / xstep) * xstep), 0,
                 std::max(ystep, std::ceil(ymax * 1.05 / ystep) * ystep), xstep, ystep};
    out = frame(a, title.empty() ? "Deviation from reference path" : title, "time (s)", "deviation (m)");
    double ly = kTop + 10;
    for (std::size_t i = 0; i < series.size(); ++i) {
      const char* color = kPalette[i % std::size(kPalette)];
      std::string pts;
      for (const auto& p : series[i].points) pts += (pts.empty() ? "" : " ") + n2(a.px(p.x)) + "," + n2(a.py(p.y));
      out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
      out += "<text x=\"" + n2(kW - kRight - 5) + "\" y=\"" + n2(ly) + "\" text-anchor=\"end\" fill=\"" + color + "\">" +
             xml(series[i].label) + "</text>\n";
      ly += 15;
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace decisive::report
