#include "decisive/nav.hpp"

#include "decisive/error.hpp"
#include "decisive/kernels.hpp"

namespace decisive::nav {

ReferencePath::ReferencePath(std::vector<Vec3> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
  if (vertices_.size() < 2) fail(ErrorCode::InvalidArgument, "reference path needs at least 2 vertices");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertices_[i].finite()) fail(ErrorCode::DomainError, "reference path vertex is not finite");
    if (i > 0 && vertices_[i] == vertices_[i - 1]) {
      fail(ErrorCode::InvalidArgument,
           "reference path vertices " + std::to_string(i - 1) + " and " + std::to_string(i) + " coincide");
    }
  }
}

double ReferencePath::length() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) total += (vertices_[i + 1] - vertices_[i]).norm();
  if (closed_ && vertices_.size() > 2) total += (vertices_.front() - vertices_.back()).norm();
  return total;
}

double point_path_deviation(Vec3 p, const ReferencePath& path) {
  return kernels::point_polyline_distance(p, path.vertices(), path.closed());
}

std::vector<double> deviation_series(const Trajectory& traj, const ReferencePath& path) {
  const auto pts = traj.positions();
  return kernels::parallel::polyline_distances(pts, path.vertices(), path.closed());
}

double average_deviation(const Trajectory& traj, const ReferencePath& path) {
  const auto d = deviation_series(traj, path);
  if (d.empty()) fail(ErrorCode::EmptySpan, "no samples");
  return mean(d);
}

DeviationSummary deviation_summary_from_ads(std::vector<double> per_flight_ad) {
  if (per_flight_ad.empty()) fail(ErrorCode::EmptySample, "deviation summary needs at least one flight");
  DeviationSummary out;
  out.mean_ad = mean(per_flight_ad);
  out.std_ad = sample_stddev(per_flight_ad);
  if (per_flight_ad.size() == 1) out.warnings.push_back("single flight: standard deviation reported as 0");
  out.per_flight_ad = std::move(per_flight_ad);
  return out;
}

DeviationSummary deviation_summary(const std::vector<std::pair<Trajectory, ReferencePath>>& flights) {
  std::vector<double> ads;
  ads.reserve(flights.size());
  for (const auto& [traj, path] : flights) ads.push_back(average_deviation(traj, path));
  return deviation_summary_from_ads(std::move(ads));
}

double waypoint_error(Vec3 final_pos, Vec3 waypoint) {
  return std::hypot(final_pos.x - waypoint.x, final_pos.y - waypoint.y);
}

WaypointSummary waypoint_summary(const std::vector<double>& errors) {
  if (errors.empty()) fail(ErrorCode::EmptySample, "waypoint summary needs at least one trial");
  return {mean(errors), sample_stddev(errors)};
}

double traversal_speed(double length_m, double duration_min) {
  if (!(duration_min > 0.0)) fail(ErrorCode::ZeroDuration, "duration must be positive");
  return length_m / (duration_min * 60.0);
}

ApertureTier classify_aperture_trial(bool passed, bool contact, bool ripped) {
  if (ripped && !contact) fail(ErrorCode::InconsistentFlags, "ripped without contact");
  if (!passed) return ApertureTier::B1;
  if (!contact) return ApertureTier::A1;
  return ripped ? ApertureTier::A3 : ApertureTier::A2;
}

}  // namespace decisive::nav
