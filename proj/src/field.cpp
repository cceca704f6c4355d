#include "decisive/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "decisive/csv.hpp"
#include "decisive/error.hpp"

namespace decisive::field {

Endurance endurance_metrics(int laps, double duration_min) {
  if (laps < 0) fail(ErrorCode::InvalidArgument, "lap count must be non-negative");
  if (!(duration_min > 0.0)) fail(ErrorCode::ZeroDuration, "duration must be positive");
  const double d = kFigure8Length * laps;
  return {d, d / (duration_min * 60.0)};
}

std::string_view to_string(Surface s) {
  switch (s) {
    case Surface::wall: return "wall";
    case Surface::floor: return "floor";
    case Surface::ceiling: return "ceiling";
  }
  return "?";
}

std::optional<Surface> parse_surface(std::string_view s) {
  if (s == "wall") return Surface::wall;
  if (s == "floor") return Surface::floor;
  if (s == "ceiling") return Surface::ceiling;
  return std::nullopt;
}

bool is_acuity_level(double mm) {
  return std::any_of(std::begin(kAcuityLevels), std::end(kAcuityLevels), [&](double l) { return l == mm; });
}

RoomClearingSummary room_clearing_summary(const std::vector<AcuityObservation>& observations,
                                          double duration_min) {
  if (duration_min < 0.0) fail(ErrorCode::InvalidArgument, "duration must be non-negative");
  std::set<std::string> ids;
  for (const auto& o : observations) {
    if (!ids.insert(o.target_id).second) fail(ErrorCode::DuplicateTarget, "duplicate target '" + o.target_id + "'");
    if (o.resolved_mm && !is_acuity_level(*o.resolved_mm)) {
      fail(ErrorCode::DomainError, "target '" + o.target_id + "' resolved level is not a Landolt C size");
    }
  }
  RoomClearingSummary out;
  out.duration_min = duration_min;
  if (observations.empty()) out.warnings.push_back("no acuity observations: coverage 0%");

  const std::pair<Surface, int> surfaces[] = {
      {Surface::wall, kWallTargets}, {Surface::floor, kFloorTargets}, {Surface::ceiling, kCeilingTargets}};
  std::vector<double> all;
  for (const auto& [surface, total] : surfaces) {
    std::vector<double> levels;
    for (const auto& o : observations)
      if (o.surface == surface && o.resolved_mm) levels.push_back(*o.resolved_mm);
    SurfaceCoverage c{surface, static_cast<int>(levels.size()), total, 0.0, std::nullopt, std::nullopt};
    if (c.seen > total) {
      fail(ErrorCode::CountOutOfRange, std::string(to_string(surface)) + " has more identified targets than exist");
    }
    c.coverage_pct = 100.0 * c.seen / total;
    if (!levels.empty()) {
      c.mean_mm = mean(levels);
      c.std_mm = sample_stddev(levels);
    }
    all.insert(all.end(), levels.begin(), levels.end());
    out.surfaces.push_back(c);
  }
  out.seen = static_cast<int>(all.size());
  out.coverage_pct = 100.0 * out.seen / kRoomTargets;
  if (!all.empty()) {
    out.mean_mm = mean(all);
    out.std_mm = sample_stddev(all);
  }
  return out;
}

NoiseSummary noise_summary(const std::vector<double>& ambient,
                           const std::map<std::string, std::vector<double>>& condition_samples) {
  if (ambient.empty()) fail(ErrorCode::EmptySample, "no ambient noise readings");
  NoiseSummary out;
  out.ambient_db = mean(ambient);
  for (const auto& [name, samples] : condition_samples) {
    if (samples.empty()) fail(ErrorCode::EmptySample, "no noise readings for condition '" + name + "'");
    const double m = mean(samples);
    out.conditions.push_back({name, m, m - out.ambient_db});
  }
  return out;
}

std::string_view to_string(LinkQuality q) {
  switch (q) {
    case LinkQuality::good: return "good";
    case LinkQuality::bad: return "bad";
    case LinkQuality::none: return "none";
  }
  return "?";
}

std::optional<LinkQuality> parse_link_quality(std::string_view s) {
  if (s == "good") return LinkQuality::good;
  if (s == "bad") return LinkQuality::bad;
  if (s == "none") return LinkQuality::none;
  return std::nullopt;
}

int NlosMax::obstruction_count() const {
  int n = 0;
  for (const auto& o : obstructions) n += o.count;
  return n;
}

NlosPerformance nlos_max_performance(const std::vector<NlosPosition>& positions) {
  NlosPerformance out;
  for (const auto& p : positions) {
    if (!(p.distance_m > 0.0)) fail(ErrorCode::DomainError, "position '" + p.label + "' distance must be positive");
    const NlosMax candidate{p.distance_m, p.obstructions, p.label, p.latency_ms};
    if (p.connect == LinkQuality::good && p.distance_m > out.static_max.distance_m) out.static_max = candidate;
    if (p.fly == Flyability::possible && p.distance_m > out.fly_max.distance_m) out.fly_max = candidate;
  }
  return out;
}

double video_latency(double frame_count, double fps) {
  if (!(fps > 0.0)) fail(ErrorCode::ZeroFps, "fps must be positive");
  if (frame_count < 0.0) fail(ErrorCode::InvalidArgument, "frame count must be non-negative");
  return 1000.0 * frame_count / fps;
}

LatencySummary latency_summary(const std::vector<double>& latencies_ms) {
  if (latencies_ms.empty()) fail(ErrorCode::EmptySample, "no latency trials");
  LatencySummary out{mean(latencies_ms), sample_stddev(latencies_ms), latencies_ms.size(), {}};
  if (out.trials < kMinLatencyTrials) {
    out.warnings.push_back("latency summarized over " + std::to_string(out.trials) +
                           " trials; at least 10 are required");
  }
  return out;
}

std::string_view to_string(CriterionOp op) {
  switch (op) {
    case CriterionOp::equals: return "equals";
    case CriterionOp::min: return "min";
    case CriterionOp::max: return "max";
    case CriterionOp::contains: return "contains";
  }
  return "?";
}

std::optional<CriterionOp> parse_criterion_op(std::string_view s) {
  if (s == "equals") return CriterionOp::equals;
  if (s == "min") return CriterionOp::min;
  if (s == "max") return CriterionOp::max;
  if (s == "contains") return CriterionOp::contains;
  return std::nullopt;
}

namespace {

std::optional<double> as_number(const FieldValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* s = std::get_if<std::string>(&v)) return csv::parse_double(csv::trim(*s));
  return std::nullopt;
}

std::string as_text(const FieldValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return csv::format_double(*d);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

FieldCheck check(const std::string& field, const FieldValue& response, const Criterion& c) {
  FieldCheck out{field, false, {}};
  switch (c.op) {
    case CriterionOp::min:
    case CriterionOp::max: {
      const auto r = as_number(response);
      const auto t = as_number(c.value);
      if (!r || !t) {
        out.note = "non-numeric value for a numeric criterion";
        return out;
      }
      out.pass = c.op == CriterionOp::min ? *r >= *t : *r <= *t;
      return out;
    }
    case CriterionOp::equals: {
      const auto r = as_number(response);
      const auto t = as_number(c.value);
      if (r && t && !std::holds_alternative<bool>(response) && !std::holds_alternative<bool>(c.value)) {
        out.pass = *r == *t;
      } else {
        out.pass = lower(as_text(response)) == lower(as_text(c.value));
      }
      return out;
    }
    case CriterionOp::contains:
      out.pass = lower(as_text(response)).find(lower(as_text(c.value))) != std::string::npos;
      return out;
  }
  return out;
}

}  // namespace

RequirementsResult requirements_met(const std::map<std::string, FieldValue>& responses,
                                    const ChecklistCriteria& criteria) {
  if (criteria.empty()) fail(ErrorCode::InvalidArgument, "no criteria provided");
  RequirementsResult out;
  int passed = 0;
  for (const auto& [field, c] : criteria) {
    const auto it = responses.find(field);
    if (it == responses.end()) {
      out.checks.push_back({field, false, "no response recorded"});
      continue;
    }
    out.checks.push_back(check(field, it->second, c));
    if (out.checks.back().pass) ++passed;
  }
  out.percent = 100.0 * passed / static_cast<double>(criteria.size());
  return out;
}

}  // namespace decisive::field
