#pragma once

// Unit-bearing domain types shared by every metric module, plus trajectory
// preparation (rigid marker offset, uniform resampling, tracker calibration).
//
// Units: seconds, meters, m/s, m/s^2 unless a field name says otherwise.
// All types are immutable values once constructed.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace decisive {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }

  double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct PoseSample {
  double t = 0.0;
  Vec3 pos;
  std::optional<Vec3> vel;
  std::optional<Vec3> acc;

  friend bool operator==(const PoseSample&, const PoseSample&) = default;
};

enum class TrackingSource { internal, external };

/// Time-ordered pose samples from one flight. Construction enforces at least
/// two samples, finite values and strictly increasing timestamps.
class Trajectory {
 public:
  explicit Trajectory(std::vector<PoseSample> samples,
                      TrackingSource source = TrackingSource::internal, Vec3 marker_offset = {});

  const std::vector<PoseSample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const PoseSample& operator[](std::size_t i) const { return samples_[i]; }
  TrackingSource source() const noexcept { return source_; }
  Vec3 marker_offset() const noexcept { return marker_offset_; }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }
  double duration() const { return end_time() - start_time(); }

  /// True when every sample carries a velocity / acceleration vector.
  bool has_velocity() const noexcept;
  bool has_acceleration() const noexcept;

  std::vector<Vec3> positions() const;

  Trajectory with_marker_offset(Vec3 offset) const;
  Trajectory with_samples(std::vector<PoseSample> samples) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<PoseSample> samples_;
  TrackingSource source_;
  Vec3 marker_offset_;
};

/// Translate every position by -marker_offset. The result has a zero offset.
Trajectory apply_marker_offset(const Trajectory& traj);

struct TimeSpan {
  double begin = 0.0;
  double end = 0.0;
  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

struct ResampledTrajectory {
  Trajectory trajectory;
  std::vector<TimeSpan> gaps;  // source gaps longer than 3 / rate_hz
  bool flagged() const noexcept { return !gaps.empty(); }
};

/// Linear per-axis resampling onto t0 + k / rate_hz. Velocity and
/// acceleration are interpolated only when every source sample carries them.
ResampledTrajectory resample_uniform(const Trajectory& traj, double rate_hz);

struct TrackerCalibration {
  Vec3 accuracy;   // per-axis mean of recorded positions
  Vec3 precision;  // per-axis sample standard deviation (n - 1)
};

TrackerCalibration tracker_calibration(const Trajectory& static_traj);

// ---------------------------------------------------------------------------
// Test geometry and trial outcomes

enum class ObstacleKind { plane_segment, infinite_plane };
enum class ObstacleMaterial { wall, mesh, chain_link, door_closed, door_45, door_open };

/// Vertical obstacle standing on the floor (z = 0). p0/p1 are plan-view
/// endpoints; a plane_segment is bounded by them and by `height`, an
/// infinite_plane extends without bound through the line p0-p1.
struct ObstacleGeometry {
  ObstacleKind kind = ObstacleKind::plane_segment;
  Vec2 p0;
  Vec2 p1;
  double height = 1.0;
  ObstacleMaterial material = ObstacleMaterial::wall;

  void validate() const;
  friend bool operator==(const ObstacleGeometry&, const ObstacleGeometry&) = default;
};

enum class Outcome { success, failure };

// Lower alphanumeric is better: declaration order is the quality order.
enum class OaCategory { A1, B1, B2, B3, B4, C1 };
enum class CrCategory { A1, A2, A3, B1, B2, B3, B4, C1 };
enum class ApertureTier { A1, A2, A3, B1 };

enum class Lighting { lighted, dark };

std::string_view to_string(ObstacleKind v);
std::string_view to_string(ObstacleMaterial v);
std::string_view to_string(Outcome v);
std::string_view to_string(OaCategory v);
std::string_view to_string(CrCategory v);
std::string_view to_string(ApertureTier v);
std::string_view to_string(Lighting v);
std::string_view to_string(TrackingSource v);

std::optional<ObstacleKind> parse_obstacle_kind(std::string_view s);
std::optional<ObstacleMaterial> parse_obstacle_material(std::string_view s);
std::optional<Outcome> parse_outcome(std::string_view s);
std::optional<OaCategory> parse_oa_category(std::string_view s);
std::optional<CrCategory> parse_cr_category(std::string_view s);
std::optional<ApertureTier> parse_aperture_tier(std::string_view s);
std::optional<Lighting> parse_lighting(std::string_view s);

struct Obstruction {
  int count = 0;
  std::string material;
  friend bool operator==(const Obstruction&, const Obstruction&) = default;
};

struct EnvironmentProfile {
  std::string id;
  Lighting lighting = Lighting::lighted;
  std::optional<double> lux;
  std::optional<Vec3> dims;  // W, L, H
  std::vector<std::string> surfaces;
  std::vector<Obstruction> obstructions;
  bool indoor = true;

  /// lighted requires lux >= 100 and dark requires lux < 1 when lux is given.
  void validate() const;
  friend bool operator==(const EnvironmentProfile&, const EnvironmentProfile&) = default;
};

// Small numeric helpers used across modules.
double mean(const std::vector<double>& v);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double sample_stddev(const std::vector<double>& v);

}  // namespace decisive
