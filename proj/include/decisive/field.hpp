#pragma once

// Field readiness and communications: endurance, room clearing, noise,
// NLOS range / latency and checklist requirements matching.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "decisive/core.hpp"

namespace decisive::field {

inline constexpr double kFigure8Length = 13.0;  // m per lap

struct Endurance {
  double distance_m = 0.0;
  double avg_speed_mps = 0.0;
};

Endurance endurance_metrics(int laps, double duration_min);

// ---------------------------------------------------------------------------
// Room clearing

enum class Surface { wall, floor, ceiling };
std::string_view to_string(Surface s);
std::optional<Surface> parse_surface(std::string_view s);

inline constexpr int kWallTargets = 18;
inline constexpr int kFloorTargets = 5;
inline constexpr int kCeilingTargets = 5;
inline constexpr int kRoomTargets = 28;

/// Landolt C gap sizes in mm, largest first.
inline constexpr double kAcuityLevels[] = {20.0, 8.0, 3.0, 1.3, 0.5};
bool is_acuity_level(double mm);

struct AcuityObservation {
  std::string target_id;
  Surface surface = Surface::wall;
  std::optional<double> resolved_mm;  // nullopt: target not identified
  friend bool operator==(const AcuityObservation&, const AcuityObservation&) = default;
};

struct SurfaceCoverage {
  Surface surface = Surface::wall;
  int seen = 0;
  int total = 0;
  double coverage_pct = 0.0;
  std::optional<double> mean_mm;
  std::optional<double> std_mm;
};

struct RoomClearingSummary {
  std::vector<SurfaceCoverage> surfaces;  // wall, floor, ceiling
  int seen = 0;
  double coverage_pct = 0.0;
  std::optional<double> mean_mm;
  std::optional<double> std_mm;
  double duration_min = 0.0;
  std::vector<std::string> warnings;
};

RoomClearingSummary room_clearing_summary(const std::vector<AcuityObservation>& observations,
                                          double duration_min);

// ---------------------------------------------------------------------------
// Noise

struct NoiseCondition {
  std::string condition;
  double mean_db = 0.0;
  double delta_db = 0.0;
};

struct NoiseSummary {
  double ambient_db = 0.0;
  std::vector<NoiseCondition> conditions;  // map order
};

NoiseSummary noise_summary(const std::vector<double>& ambient,
                           const std::map<std::string, std::vector<double>>& condition_samples);

// ---------------------------------------------------------------------------
// NLOS

enum class LinkQuality { good, bad, none };
enum class Flyability { possible, not_possible };
std::string_view to_string(LinkQuality q);
std::optional<LinkQuality> parse_link_quality(std::string_view s);

struct NlosPosition {
  std::string label;
  double distance_m = 0.0;
  std::vector<Obstruction> obstructions;
  LinkQuality connect = LinkQuality::none;
  Flyability fly = Flyability::not_possible;
  std::optional<double> latency_ms;
  friend bool operator==(const NlosPosition&, const NlosPosition&) = default;
};

struct NlosMax {
  double distance_m = 0.0;  // 0 when no position qualifies
  std::vector<Obstruction> obstructions;
  std::optional<std::string> label;
  std::optional<double> latency_ms;
  int obstruction_count() const;
};

struct NlosPerformance {
  NlosMax static_max;  // connect == good
  NlosMax fly_max;     // fly == possible
};

/// Positions are OCU stations away from the sUAS position X; the co-located
/// baseline is not an input.
NlosPerformance nlos_max_performance(const std::vector<NlosPosition>& positions);

double video_latency(double frame_count, double fps);

struct LatencySummary {
  double mean_ms = 0.0;
  double std_ms = 0.0;
  std::size_t trials = 0;
  std::vector<std::string> warnings;
};

inline constexpr std::size_t kMinLatencyTrials = 10;
LatencySummary latency_summary(const std::vector<double>& latencies_ms);

// ---------------------------------------------------------------------------
// Checklist requirements

using FieldValue = std::variant<double, std::string, bool>;

enum class CriterionOp { equals, min, max, contains };
std::string_view to_string(CriterionOp op);
std::optional<CriterionOp> parse_criterion_op(std::string_view s);

struct Criterion {
  CriterionOp op = CriterionOp::equals;
  FieldValue value;
  friend bool operator==(const Criterion&, const Criterion&) = default;
};

using ChecklistCriteria = std::map<std::string, Criterion>;

struct FieldCheck {
  std::string field;
  bool pass = false;
  std::string note;
};

struct RequirementsResult {
  std::vector<FieldCheck> checks;  // criteria order
  double percent = 0.0;
};

RequirementsResult requirements_met(const std::map<std::string, FieldValue>& responses,
                                    const ChecklistCriteria& criteria);

}  // namespace decisive::field
