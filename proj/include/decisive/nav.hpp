#pragma once

// Position & traversal accuracy, aperture and confined-space navigation metrics.

#include <string>
#include <utility>
#include <vector>

#include "decisive/core.hpp"

namespace decisive::nav {

/// Desired flight path as a polyline. At least two vertices; consecutive
/// vertices must differ.
class ReferencePath {
 public:
  ReferencePath(std::vector<Vec3> vertices, bool closed = false);

  const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
  bool closed() const noexcept { return closed_; }
  double length() const;

  friend bool operator==(const ReferencePath&, const ReferencePath&) = default;

 private:
  std::vector<Vec3> vertices_;
  bool closed_;
};

double point_path_deviation(Vec3 p, const ReferencePath& path);

/// Per-sample deviation, in sample order.
std::vector<double> deviation_series(const Trajectory& traj, const ReferencePath& path);

/// AD: mean point-path deviation over all samples, each sample weighted equally.
double average_deviation(const Trajectory& traj, const ReferencePath& path);

struct DeviationSummary {
  std::vector<double> per_flight_ad;
  double mean_ad = 0.0;
  double std_ad = 0.0;
  std::vector<std::string> warnings;
};

DeviationSummary deviation_summary(const std::vector<std::pair<Trajectory, ReferencePath>>& flights);
DeviationSummary deviation_summary_from_ads(std::vector<double> per_flight_ad);

/// Horizontal-plane distance between the landing position and the waypoint.
double waypoint_error(Vec3 final_pos, Vec3 waypoint);

struct WaypointSummary {
  double accuracy = 0.0;   // mean error
  double precision = 0.0;  // sample std of errors
};

WaypointSummary waypoint_summary(const std::vector<double>& errors);

/// length / (duration_min * 60), m/s.
double traversal_speed(double length_m, double duration_min);

ApertureTier classify_aperture_trial(bool passed, bool contact, bool ripped);

}  // namespace decisive::nav
