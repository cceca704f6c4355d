#pragma once

// Obstacle-avoidance and collision-resilience numerics: distance to obstacle,
// time to collision, MASI, Maximum Delta-V and OA/CR category distributions.

#include <optional>
#include <string>
#include <vector>

#include "decisive/core.hpp"

namespace decisive::collision {

inline constexpr double kGravity = 9.8;          // m/s^2
inline constexpr double kStationarySpeed = 0.05; // m/s, TTC cutoff
inline constexpr double kDeltaVWindow = 0.3;     // s
inline constexpr double kMinDeltaVRate = 10.0;   // Hz

struct CollisionKinematics {
  double g = kGravity;
  bool include_vertical = false;  // a_z = 0 for planar test flights
};

/// Fills velocity (when absent) and acceleration (when absent) by three-point
/// differences: central in the interior, one-sided at both ends, exact for
/// quadratics on any spacing. Derived acceleration is smoothed by a centered
/// moving average of odd `smoothing_width` (1 = none, window clipped at the ends).
Trajectory derive_kinematics(const Trajectory& traj, int smoothing_width = 5);

struct DistanceSeries {
  std::vector<double> series;  // per sample, meters
  double min = 0.0;
};

DistanceSeries distance_to_obstacle(const Trajectory& traj, const ObstacleGeometry& obstacle);

/// min over samples with speed >= min_speed of distance / speed.
double min_ttc(const Trajectory& traj, const ObstacleGeometry& obstacle,
               double min_speed = kStationarySpeed);

struct MasiResult {
  double masi = 0.0;            // dimensionless
  double max_decel_mps2 = 0.0;  // masi * g
};

/// Peak acceleration magnitude over g. Uses recorded acceleration when every
/// sample has it, otherwise differentiates (needs >= 3 samples).
MasiResult masi(const Trajectory& traj, CollisionKinematics kin = {}, int smoothing_width = 5);

/// max over samples tau in (t_c, t_c + window] of |v(tau) - v(t_c)|, with
/// v(t_c) interpolated. Requires sample spacing <= 1/10 s across the window.
double max_delta_v(const Trajectory& traj, double t_collision, double window = kDeltaVWindow);

/// First sample whose horizontal acceleration exceeds threshold. Advisory only:
/// the annotated collision time always wins.
std::optional<double> suggest_collision_time(const Trajectory& traj, double threshold_mps2 = 3.0);

// ---------------------------------------------------------------------------
// Flight-set aggregation

struct OaFlight {
  bool collided = false;
  double min_distance = 0.0;
  double min_ttc = 0.0;
  std::optional<double> max_decel;
};

struct OaAggregate {
  int flights = 0;
  int collisions = 0;               // flights with at least one collision
  double mean_min_distance = 0.0;   // collision flights contribute 0
  double mean_min_ttc = 0.0;        // collision flights contribute 0
  std::optional<double> mean_max_decel;
};

OaAggregate aggregate_oa(const std::vector<OaFlight>& flights);

struct SeverityAggregate {
  double mean_masi = 0.0;
  double mean_delta_v = 0.0;
};

SeverityAggregate aggregate_severity(const std::vector<double>& masi_per_flight,
                                     const std::vector<double>& delta_v_per_flight);

// ---------------------------------------------------------------------------
// Categorical tables

enum class CategoryKind { oa, cr };

struct CategorizedTrial {
  std::string trial_id;
  ObstacleMaterial obstacle = ObstacleMaterial::wall;
  std::optional<OaCategory> oa;
  std::optional<CrCategory> cr;
};

struct CategoryRow {
  ObstacleMaterial obstacle;
  int trials = 0;
  std::vector<double> percent;  // aligned with CategoryDistribution::categories
};

struct CategoryDistribution {
  std::vector<std::string> categories;
  std::vector<CategoryRow> rows;  // ordered by obstacle material
};

CategoryDistribution category_distribution(const std::vector<CategorizedTrial>& trials, CategoryKind which);

std::string_view obstacle_label(ObstacleMaterial m);

}  // namespace decisive::collision
