#include "decisive/core.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "decisive/error.hpp"

namespace decisive {

Trajectory::Trajectory(std::vector<PoseSample> samples, TrackingSource source, Vec3 marker_offset)
    : samples_(std::move(samples)), source_(source), marker_offset_(marker_offset) {
  if (samples_.size() < 2) {
    fail(ErrorCode::EmptySpan, "trajectory needs at least 2 samples, got " +
                                   std::to_string(samples_.size()));
  }
  if (!marker_offset_.finite()) fail(ErrorCode::DomainError, "marker offset is not finite");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.t) || !s.pos.finite() || (s.vel && !s.vel->finite()) ||
        (s.acc && !s.acc->finite())) {
      fail(ErrorCode::DomainError, "sample " + std::to_string(i) + " has a non-finite value");
    }
    if (i > 0 && !(s.t > samples_[i - 1].t)) {
      fail(ErrorCode::NonMonotonicTime,
           "timestamps must strictly increase (sample " + std::to_string(i) + ")");
    }
  }
}

bool Trajectory::has_velocity() const noexcept {
  return std::all_of(samples_.begin(), samples_.end(), [](const auto& s) { return s.vel.has_value(); });
}

bool Trajectory::has_acceleration() const noexcept {
  return std::all_of(samples_.begin(), samples_.end(), [](const auto& s) { return s.acc.has_value(); });
}

std::vector<Vec3> Trajectory::positions() const {
  std::vector<Vec3> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.pos);
  return out;
}

Trajectory Trajectory::with_marker_offset(Vec3 offset) const {
  return Trajectory(samples_, source_, offset);
}

Trajectory Trajectory::with_samples(std::vector<PoseSample> samples) const {
  return Trajectory(std::move(samples), source_, marker_offset_);
}

Trajectory apply_marker_offset(const Trajectory& traj) {
  const Vec3 off = traj.marker_offset();
  std::vector<PoseSample> out = traj.samples();
  for (auto& s : out) s.pos = s.pos - off;
  return Trajectory(std::move(out), traj.source(), Vec3{});
}

namespace {

double lerp_clamped(double a, double b, double f) {
  const double v = a + (b - a) * f;
  return std::clamp(v, std::min(a, b), std::max(a, b));
}

Vec3 lerp_clamped(Vec3 a, Vec3 b, double f) {
  return {lerp_clamped(a.x, b.x, f), lerp_clamped(a.y, b.y, f), lerp_clamped(a.z, b.z, f)};
}

bool near_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

ResampledTrajectory resample_uniform(const Trajectory& traj, double rate_hz) {
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    fail(ErrorCode::InvalidArgument, "rate_hz must be positive");
  }
  const double span = traj.duration();
  if (span * rate_hz < 1.0 - 1e-9) {
    fail(ErrorCode::EmptySpan, "trajectory spans less than one period at the requested rate");
  }
  const auto& src = traj.samples();
  const bool with_vel = traj.has_velocity();
  const bool with_acc = traj.has_acceleration();
  const double t0 = traj.start_time();
  const auto last_k = static_cast<std::size_t>(std::floor(span * rate_hz + 1e-9));

  std::vector<PoseSample> out;
  out.reserve(last_k + 1);
  std::size_t j = 0;
  for (std::size_t k = 0; k <= last_k; ++k) {
    const double t = t0 + static_cast<double>(k) / rate_hz;
    while (j + 1 < src.size() && src[j + 1].t <= t) ++j;
    PoseSample s;
    s.t = t;
    const PoseSample* exact = nullptr;
    if (near_time(src[j].t, t)) {
      exact = &src[j];
    } else if (j + 1 < src.size() && near_time(src[j + 1].t, t)) {
      exact = &src[j + 1];
    } else if (j + 1 >= src.size()) {
      exact = &src.back();
    }
    if (exact) {
      s.pos = exact->pos;
      if (with_vel) s.vel = exact->vel;
      if (with_acc) s.acc = exact->acc;
    } else {
      const auto& a = src[j];
      const auto& b = src[j + 1];
      const double f = (t - a.t) / (b.t - a.t);
      s.pos = lerp_clamped(a.pos, b.pos, f);
      if (with_vel) s.vel = lerp_clamped(*a.vel, *b.vel, f);
      if (with_acc) s.acc = lerp_clamped(*a.acc, *b.acc, f);
    }
    out.push_back(s);
  }

  std::vector<TimeSpan> gaps;
  const double gap_limit = 3.0 / rate_hz;
  for (std::size_t i = 1; i < src.size(); ++i) {
    if (src[i].t - src[i - 1].t > gap_limit) gaps.push_back({src[i - 1].t, src[i].t});
  }
  return {traj.with_samples(std::move(out)), std::move(gaps)};
}

TrackerCalibration tracker_calibration(const Trajectory& static_traj) {
  if (static_traj.size() < 2) fail(ErrorCode::EmptySpan, "calibration needs at least 2 samples");
  std::array<std::vector<double>, 3> axes;
  for (const auto& s : static_traj.samples()) {
    axes[0].push_back(s.pos.x);
    axes[1].push_back(s.pos.y);
    axes[2].push_back(s.pos.z);
  }
  return {{mean(axes[0]), mean(axes[1]), mean(axes[2])},
          {sample_stddev(axes[0]), sample_stddev(axes[1]), sample_stddev(axes[2])}};
}

void ObstacleGeometry::validate() const {
  if (!std::isfinite(p0.x) || !std::isfinite(p0.y) || !std::isfinite(p1.x) || !std::isfinite(p1.y)) {
    fail(ErrorCode::DomainError, "obstacle endpoints must be finite");
  }
  if (p0 == p1) fail(ErrorCode::InvalidArgument, "obstacle endpoints coincide");
  if (!(height > 0.0) || !std::isfinite(height)) {
    fail(ErrorCode::InvalidArgument, "obstacle height must be positive");
  }
}

void EnvironmentProfile::validate() const {
  if (!lux) return;
  if (lighting == Lighting::lighted && *lux < 100.0) {
    fail(ErrorCode::SchemaMismatch, "environment '" + id + "' is lighted but lux < 100");
  }
  if (lighting == Lighting::dark && !(*lux < 1.0)) {
    fail(ErrorCode::SchemaMismatch, "environment '" + id + "' is dark but lux >= 1");
  }
}

// ---------------------------------------------------------------------------

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view s, const std::array<std::pair<E, std::string_view>, N>& table) {
  for (const auto& [e, name] : table)
    if (name == s) return e;
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(E e, const std::array<std::pair<E, std::string_view>, N>& table) {
  for (const auto& [v, name] : table)
    if (v == e) return name;
  return "?";
}

constexpr std::array<std::pair<ObstacleKind, std::string_view>, 2> kObstacleKinds{{
    {ObstacleKind::plane_segment, "plane_segment"},
    {ObstacleKind::infinite_plane, "infinite_plane"},
}};
constexpr std::array<std::pair<ObstacleMaterial, std::string_view>, 6> kMaterials{{
    {ObstacleMaterial::wall, "wall"},
    {ObstacleMaterial::mesh, "mesh"},
    {ObstacleMaterial::chain_link, "chain_link"},
    {ObstacleMaterial::door_closed, "door_closed"},
    {ObstacleMaterial::door_45, "door_45"},
    {ObstacleMaterial::door_open, "door_open"},
}};
constexpr std::array<std::pair<Outcome, std::string_view>, 2> kOutcomes{{
    {Outcome::success, "success"},
    {Outcome::failure, "failure"},
}};
constexpr std::array<std::pair<OaCategory, std::string_view>, 6> kOa{{
    {OaCategory::A1, "OA-A1"},
    {OaCategory::B1, "OA-B1"},
    {OaCategory::B2, "OA-B2"},
    {OaCategory::B3, "OA-B3"},
    {OaCategory::B4, "OA-B4"},
    {OaCategory::C1, "OA-C1"},
}};
constexpr std::array<std::pair<CrCategory, std::string_view>, 8> kCr{{
    {CrCategory::A1, "CR-A1"},
    {CrCategory::A2, "CR-A2"},
    {CrCategory::A3, "CR-A3"},
    {CrCategory::B1, "CR-B1"},
    {CrCategory::B2, "CR-B2"},
    {CrCategory::B3, "CR-B3"},
    {CrCategory::B4, "CR-B4"},
    {CrCategory::C1, "CR-C1"},
}};
constexpr std::array<std::pair<ApertureTier, std::string_view>, 4> kTiers{{
    {ApertureTier::A1, "A1"},
    {ApertureTier::A2, "A2"},
    {ApertureTier::A3, "A3"},
    {ApertureTier::B1, "B1"},
}};
constexpr std::array<std::pair<Lighting, std::string_view>, 2> kLighting{{
    {Lighting::lighted, "lighted"},
    {Lighting::dark, "dark"},
}};

}  // namespace

std::string_view to_string(ObstacleKind v) { return name_of(v, kObstacleKinds); }
std::string_view to_string(ObstacleMaterial v) { return name_of(v, kMaterials); }
std::string_view to_string(Outcome v) { return name_of(v, kOutcomes); }
std::string_view to_string(OaCategory v) { return name_of(v, kOa); }
std::string_view to_string(CrCategory v) { return name_of(v, kCr); }
std::string_view to_string(ApertureTier v) { return name_of(v, kTiers); }
std::string_view to_string(Lighting v) { return name_of(v, kLighting); }
std::string_view to_string(TrackingSource v) {
  return v == TrackingSource::internal ? "internal" : "external";
}

std::optional<ObstacleKind> parse_obstacle_kind(std::string_view s) { return lookup(s, kObstacleKinds); }
std::optional<ObstacleMaterial> parse_obstacle_material(std::string_view s) { return lookup(s, kMaterials); }
std::optional<Outcome> parse_outcome(std::string_view s) { return lookup(s, kOutcomes); }
std::optional<OaCategory> parse_oa_category(std::string_view s) { return lookup(s, kOa); }
std::optional<CrCategory> parse_cr_category(std::string_view s) { return lookup(s, kCr); }
std::optional<ApertureTier> parse_aperture_tier(std::string_view s) { return lookup(s, kTiers); }
std::optional<Lighting> parse_lighting(std::string_view s) { return lookup(s, kLighting); }

double mean(const std::vector<double>& v) {
  if (v.empty()) fail(ErrorCode::EmptySample, "mean of an empty list");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace decisive
