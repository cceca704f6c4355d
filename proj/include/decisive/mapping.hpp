#pragma once

// Indoor mapping resolution and accuracy metrics from administrator-measured
// map observations.

#include <optional>
#include <string>
#include <vector>

#include "decisive/core.hpp"

namespace decisive::mapping {

double dimensional_accuracy(const std::vector<double>& reported, const std::vector<double>& ground_truth);

double fov_coverage(int visible_50pct, int total);

enum class ShapeClass { complete, incomplete, shifted };
std::optional<ShapeClass> parse_shape_class(std::string_view s);  // C / I / S or full word

double shape_accuracy_rate(const std::vector<ShapeClass>& classes);

enum class MappedState { complete, partial, missing };
std::string_view to_string(MappedState m);
std::optional<MappedState> parse_mapped_state(std::string_view s);

struct FiducialObservation {
  std::string fiducial_id;
  int half = 1;  // 1 or 2
  std::optional<Vec2> map_xy;
  MappedState mapped = MappedState::complete;
  friend bool operator==(const FiducialObservation&, const FiducialObservation&) = default;
};

struct FiducialGroundTruth {
  std::string fiducial_id;
  Vec2 gt_xy;  // meters
  double min_traversal = 1.0;
  int min_turns = 0;
  friend bool operator==(const FiducialGroundTruth&, const FiducialGroundTruth&) = default;
};

struct GlobalErrorResult {
  double error_cm = 0.0;
  double scale = 1.0;  // meters per map unit
  std::size_t fiducials = 0;
  std::size_t pairs = 0;
};

/// A fiducial's map position is the mean of its mapped halves. The scale s
/// minimizing sum (s d_map - d_gt)^2 over fiducial pairs is closed form; the
/// error is the mean |s d_map - d_gt| over those pairs, in cm.
GlobalErrorResult global_error(const std::vector<FiducialObservation>& obs,
                               const std::vector<FiducialGroundTruth>& truth);

/// 100 * mapped halves / (2 * fiducials in truth).
double fiducial_coverage(const std::vector<FiducialObservation>& obs,
                         const std::vector<FiducialGroundTruth>& truth);

enum class Difficulty { L, M, H };
std::string_view to_string(Difficulty d);

struct DifficultyThresholds {
  double high_traversal = 20.0;
  int high_turns = 5;
  double low_traversal = 10.0;
  int low_turns = 2;
};

Difficulty difficulty_rating(double min_traversal, int min_turns, const DifficultyThresholds& th = {});

struct AcuitySummary {
  double mean_mm = 0.0;
  double std_mm = 0.0;
  std::size_t n = 0;
};

AcuitySummary acuity_summary(const std::vector<double>& levels_mm);

}  // namespace decisive::mapping
