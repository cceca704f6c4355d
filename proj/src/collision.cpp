#include "decisive/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "decisive/error.hpp"
#include "decisive/kernels.hpp"

namespace decisive::collision {

namespace {

// Three-point Lagrange derivative of f sampled at t.
std::vector<Vec3> differentiate(const std::vector<double>& t, const std::vector<Vec3>& f) {
  const std::size_t n = t.size();
  std::vector<Vec3> d(n);
  auto combine = [](double c0, Vec3 a, double c1, Vec3 b, double c2, Vec3 c) {
    return Vec3{c0 * a.x + c1 * b.x + c2 * c.x, c0 * a.y + c1 * b.y + c2 * c.y,
                c0 * a.z + c1 * b.z + c2 * c.z};
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    d[i] = combine(-h2 / (h1 * (h1 + h2)), f[i - 1], (h2 - h1) / (h1 * h2), f[i], h1 / (h2 * (h1 + h2)),
                   f[i + 1]);
  }
  {
    const double h1 = t[1] - t[0];
    const double h2 = t[2] - t[1];
    d[0] = combine(-(2 * h1 + h2) / (h1 * (h1 + h2)), f[0], (h1 + h2) / (h1 * h2), f[1],
                   -h1 / (h2 * (h1 + h2)), f[2]);
  }
  {
    const double h1 = t[n - 2] - t[n - 3];
    const double h2 = t[n - 1] - t[n - 2];
    d[n - 1] = combine(h2 / (h1 * (h1 + h2)), f[n - 3], -(h1 + h2) / (h1 * h2), f[n - 2],
                       (2 * h2 + h1) / (h2 * (h1 + h2)), f[n - 1]);
  }
  return d;
}

std::vector<Vec3> moving_average(const std::vector<Vec3>& v, int width) {
  if (width == 1) return v;
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const std::ptrdiff_t half = width / 2;
  std::vector<Vec3> out(v.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
    Vec3 sum;
    for (std::ptrdiff_t k = lo; k <= hi; ++k) sum = sum + v[k];
    out[i] = (1.0 / static_cast<double>(hi - lo + 1)) * sum;
  }
  return out;
}

std::vector<double> speeds(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& s : traj.samples()) out.push_back(s.vel->norm());
  return out;
}

const Trajectory& with_velocity(const Trajectory& traj, std::optional<Trajectory>& storage) {
  if (traj.has_velocity()) return traj;
  storage = derive_kinematics(traj, 1);
  return *storage;
}

}  // namespace

Trajectory derive_kinematics(const Trajectory& traj, int smoothing_width) {
  if (smoothing_width < 1 || smoothing_width % 2 == 0) {
    fail(ErrorCode::InvalidArgument, "smoothing width must be a positive odd number");
  }
  if (traj.size() < 3) fail(ErrorCode::InsufficientSamples, "differentiation needs at least 3 samples");
  const auto& src = traj.samples();
  std::vector<double> t;
  t.reserve(src.size());
  for (const auto& s : src) t.push_back(s.t);

  std::vector<Vec3> vel;
  if (traj.has_velocity()) {
    for (const auto& s : src) vel.push_back(*s.vel);
  } else {
    vel = differentiate(t, traj.positions());
  }
  std::vector<Vec3> acc;
  if (traj.has_acceleration()) {
    for (const auto& s : src) acc.push_back(*s.acc);
  } else {
    acc = moving_average(differentiate(t, vel), smoothing_width);
  }
  std::vector<PoseSample> out = src;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].vel = vel[i];
    out[i].acc = acc[i];
  }
  return traj.with_samples(std::move(out));
}

DistanceSeries distance_to_obstacle(const Trajectory& traj, const ObstacleGeometry& obstacle) {
  obstacle.validate();
  const auto pts = traj.positions();
  DistanceSeries out;
  out.series = kernels::parallel::obstacle_distances(pts, obstacle);
  out.min = *std::min_element(out.series.begin(), out.series.end());
  return out;
}

double min_ttc(const Trajectory& traj, const ObstacleGeometry& obstacle, double min_speed) {
  std::optional<Trajectory> storage;
  const Trajectory& kin = with_velocity(traj, storage);
  const auto dist = distance_to_obstacle(kin, obstacle).series;
  const auto speed = speeds(kin);
  const double best = kernels::parallel::min_ratio(dist, speed, min_speed);
  if (std::isinf(best)) {
    fail(ErrorCode::AllStationary, "no sample moves faster than the stationary cutoff");
  }
  return best;
}

MasiResult masi(const Trajectory& traj, CollisionKinematics kin, int smoothing_width) {
  if (!(kin.g > 0.0)) fail(ErrorCode::InvalidArgument, "g must be positive");
  std::vector<Vec3> acc;
  if (traj.has_acceleration()) {
    for (const auto& s : traj.samples()) acc.push_back(*s.acc);
  } else {
    const auto derived = derive_kinematics(traj, smoothing_width);
    for (const auto& s : derived.samples()) acc.push_back(*s.acc);
  }
  const double peak = kernels::parallel::max_norm(acc, kin.include_vertical);
  return {peak / kin.g, peak};
}

double max_delta_v(const Trajectory& traj, double t_collision, double window) {
  if (!(window > 0.0)) fail(ErrorCode::InvalidArgument, "window must be positive");
  if (!(t_collision >= traj.start_time() && t_collision <= traj.end_time())) {
    fail(ErrorCode::CollisionOutsideSpan, "collision time outside the trajectory span");
  }
  std::optional<Trajectory> storage;
  const Trajectory& kin = with_velocity(traj, storage);
  const auto& s = kin.samples();
  const double eps = 1e-9 * std::max(1.0, std::abs(t_collision));
  const double t_end = std::min(t_collision + window, kin.end_time());

  // Bracket t_c and check sampling across [t_c, t_end].
  std::size_t j = 0;
  while (j + 1 < s.size() && s[j + 1].t <= t_collision) ++j;
  const double max_gap = 1.0 / kMinDeltaVRate + 1e-9;
  for (std::size_t i = j; i + 1 < s.size() && s[i].t < t_end - eps; ++i) {
    if (s[i + 1].t - s[i].t > max_gap) {
      fail(ErrorCode::RateTooLow, "sampling slower than 10 Hz inside the Delta-V window");
    }
  }

  Vec3 v0 = *s[j].vel;
  if (j + 1 < s.size() && s[j].t < t_collision) {
    const double f = (t_collision - s[j].t) / (s[j + 1].t - s[j].t);
    v0 = *s[j].vel + f * (*s[j + 1].vel - *s[j].vel);
  }
  double best = 0.0;
  bool any = false;
  for (std::size_t i = j; i < s.size(); ++i) {
    if (s[i].t <= t_collision) continue;
    if (s[i].t > t_collision + window + eps) break;
    best = std::max(best, (*s[i].vel - v0).norm());
    any = true;
  }
  if (!any) fail(ErrorCode::RateTooLow, "no samples inside the Delta-V window");
  return best;
}

std::optional<double> suggest_collision_time(const Trajectory& traj, double threshold_mps2) {
  const Trajectory kin = traj.has_acceleration() ? traj : derive_kinematics(traj);
  for (const auto& s : kin.samples()) {
    if (std::hypot(s.acc->x, s.acc->y) > threshold_mps2) return s.t;
  }
  return std::nullopt;
}

OaAggregate aggregate_oa(const std::vector<OaFlight>& flights) {
  if (flights.empty()) fail(ErrorCode::EmptySample, "no flights to aggregate");
  OaAggregate out;
  out.flights = static_cast<int>(flights.size());
  std::vector<double> dist, ttc, decel;
  for (const auto& f : flights) {
    if (f.collided) ++out.collisions;
    dist.push_back(f.collided ? 0.0 : f.min_distance);
    ttc.push_back(f.collided ? 0.0 : f.min_ttc);
    if (f.max_decel) decel.push_back(*f.max_decel);
  }
  out.mean_min_distance = mean(dist);
  out.mean_min_ttc = mean(ttc);
  if (!decel.empty()) out.mean_max_decel = mean(decel);
  return out;
}

SeverityAggregate aggregate_severity(const std::vector<double>& masi_per_flight,
                                     const std::vector<double>& delta_v_per_flight) {
  return {mean(masi_per_flight), mean(delta_v_per_flight)};
}

std::string_view obstacle_label(ObstacleMaterial m) {
  switch (m) {
    case ObstacleMaterial::wall: return "Wall";
    case ObstacleMaterial::mesh: return "Plastic mesh";
    case ObstacleMaterial::chain_link: return "Chain link fence";
    case ObstacleMaterial::door_closed: return "Door (closed)";
    case ObstacleMaterial::door_45: return "Door (45 deg)";
    case ObstacleMaterial::door_open: return "Door (open)";
  }
  return "?";
}

CategoryDistribution category_distribution(const std::vector<CategorizedTrial>& trials, CategoryKind which) {
  CategoryDistribution out;
  const std::size_t ncat = which == CategoryKind::oa ? 6 : 8;
  for (std::size_t c = 0; c < ncat; ++c) {
    out.categories.emplace_back(which == CategoryKind::oa ? to_string(static_cast<OaCategory>(c))
                                                          : to_string(static_cast<CrCategory>(c)));
  }
  std::map<ObstacleMaterial, std::vector<int>> counts;
  for (const auto& t : trials) {
    std::size_t idx = 0;
    if (which == CategoryKind::oa) {
      if (!t.oa) fail(ErrorCode::MissingCategory, "trial '" + t.trial_id + "' has no OA category");
      idx = static_cast<std::size_t>(*t.oa);
    } else {
      if (!t.cr) fail(ErrorCode::MissingCategory, "trial '" + t.trial_id + "' has no CR category");
      idx = static_cast<std::size_t>(*t.cr);
    }
    auto& row = counts[t.obstacle];
    row.resize(ncat, 0);
    ++row[idx];
  }
  for (const auto& [material, row] : counts) {
    CategoryRow r{material, 0, {}};
    for (int c : row) r.trials += c;
    for (int c : row) r.percent.push_back(100.0 * c / r.trials);
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace decisive::collision
