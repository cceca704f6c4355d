#include "decisive/mapping.hpp"

#include <cmath>
#include <map>
#include <set>

#include "decisive/error.hpp"
#include "decisive/field.hpp"

namespace decisive::mapping {

double dimensional_accuracy(const std::vector<double>& reported, const std::vector<double>& ground_truth) {
  if (reported.size() != ground_truth.size()) {
    fail(ErrorCode::LengthMismatch, "reported and ground-truth dimension lists differ in length");
  }
  if (reported.empty()) fail(ErrorCode::EmptySample, "no dimensions");
  double r = 0.0, t = 0.0;
  for (std::size_t i = 0; i < reported.size(); ++i) {
    if (!(ground_truth[i] > 0.0)) fail(ErrorCode::NonPositiveValue, "ground-truth dimension must be positive");
    r += reported[i];
    t += ground_truth[i];
  }
  return 100.0 * r / t;
}

double fov_coverage(int visible_50pct, int total) {
  if (total <= 0 || visible_50pct < 0 || visible_50pct > total) {
    fail(ErrorCode::CountOutOfRange, "visible boundary count must lie in [0, total] with total > 0");
  }
  return 100.0 * visible_50pct / total;
}

std::optional<ShapeClass> parse_shape_class(std::string_view s) {
  if (s == "C" || s == "complete") return ShapeClass::complete;
  if (s == "I" || s == "incomplete") return ShapeClass::incomplete;
  if (s == "S" || s == "shifted") return ShapeClass::shifted;
  return std::nullopt;
}

double shape_accuracy_rate(const std::vector<ShapeClass>& classes) {
  if (classes.empty()) fail(ErrorCode::EmptySample, "no shape classifications");
  std::size_t complete = 0;
  for (auto c : classes)
    if (c == ShapeClass::complete) ++complete;
  return 100.0 * static_cast<double>(complete) / static_cast<double>(classes.size());
}

std::string_view to_string(MappedState m) {
  switch (m) {
    case MappedState::complete: return "complete";
    case MappedState::partial: return "partial";
    case MappedState::missing: return "missing";
  }
  return "?";
}

std::optional<MappedState> parse_mapped_state(std::string_view s) {
  if (s == "complete") return MappedState::complete;
  if (s == "partial") return MappedState::partial;
  if (s == "missing") return MappedState::missing;
  return std::nullopt;
}

GlobalErrorResult global_error(const std::vector<FiducialObservation>& obs,
                               const std::vector<FiducialGroundTruth>& truth) {
  std::map<std::string, Vec2> gt;
  for (const auto& t : truth) gt[t.fiducial_id] = t.gt_xy;

  std::map<std::string, std::pair<Vec2, int>> acc;
  for (const auto& o : obs) {
    if (o.mapped == MappedState::missing || !o.map_xy) continue;
    if (!gt.count(o.fiducial_id)) continue;
    auto& [sum, n] = acc[o.fiducial_id];
    sum.x += o.map_xy->x;
    sum.y += o.map_xy->y;
    ++n;
  }
  std::vector<Vec2> map_pts, gt_pts;
  for (const auto& [id, v] : acc) {
    map_pts.push_back({v.first.x / v.second, v.first.y / v.second});
    gt_pts.push_back(gt.at(id));
  }
  if (map_pts.size() < 3) fail(ErrorCode::TooFewFiducials, "global error needs at least 3 matched fiducials");

  std::vector<double> dm, dg;
  for (std::size_t i = 0; i < map_pts.size(); ++i) {
    for (std::size_t j = i + 1; j < map_pts.size(); ++j) {
      dm.push_back(std::hypot(map_pts[i].x - map_pts[j].x, map_pts[i].y - map_pts[j].y));
      dg.push_back(std::hypot(gt_pts[i].x - gt_pts[j].x, gt_pts[i].y - gt_pts[j].y));
    }
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < dm.size(); ++k) {
    num += dm[k] * dg[k];
    den += dm[k] * dm[k];
  }
  if (den == 0.0) fail(ErrorCode::DegenerateFit, "all mapped fiducials coincide");
  GlobalErrorResult out;
  out.scale = num / den;
  double err = 0.0;
  for (std::size_t k = 0; k < dm.size(); ++k) err += std::abs(out.scale * dm[k] - dg[k]);
  out.error_cm = 100.0 * err / static_cast<double>(dm.size());
  out.fiducials = map_pts.size();
  out.pairs = dm.size();
  return out;
}

double fiducial_coverage(const std::vector<FiducialObservation>& obs,
                         const std::vector<FiducialGroundTruth>& truth) {
  if (truth.empty()) fail(ErrorCode::EmptySample, "no fiducials in ground truth");
  std::set<std::string> ids;
  for (const auto& t : truth) ids.insert(t.fiducial_id);
  std::set<std::pair<std::string, int>> mapped;
  for (const auto& o : obs) {
    if (o.half != 1 && o.half != 2) fail(ErrorCode::DomainError, "fiducial half must be 1 or 2");
    if (o.mapped != MappedState::missing && ids.count(o.fiducial_id)) mapped.insert({o.fiducial_id, o.half});
  }
  return 100.0 * static_cast<double>(mapped.size()) / (2.0 * static_cast<double>(ids.size()));
}

std::string_view to_string(Difficulty d) {
  switch (d) {
    case Difficulty::L: return "L";
    case Difficulty::M: return "M";
    case Difficulty::H: return "H";
  }
  return "?";
}

Difficulty difficulty_rating(double min_traversal, int min_turns, const DifficultyThresholds& th) {
  if (!(min_traversal > 0.0) || min_turns < 0) {
    fail(ErrorCode::InvalidArgument, "traversal must be positive and turns non-negative");
  }
  if (min_traversal >= th.high_traversal || min_turns >= th.high_turns) return Difficulty::H;
  if (min_traversal <= th.low_traversal && min_turns <= th.low_turns) return Difficulty::L;
  return Difficulty::M;
}

AcuitySummary acuity_summary(const std::vector<double>& levels_mm) {
  if (levels_mm.empty()) fail(ErrorCode::EmptySample, "no acuity levels");
  for (double l : levels_mm)
    if (!field::is_acuity_level(l)) fail(ErrorCode::DomainError, "acuity level is not a Landolt C size");
  return {mean(levels_mm), sample_stddev(levels_mm), levels_mm.size()};
}

}  // namespace decisive::mapping
