#include "decisive/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace decisive::kernels {

double point_segment_distance(Vec3 p, Vec3 a, Vec3 b) {
  const Vec3 d = b - a;
  const double len2 = d.dot(d);
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

double point_polyline_distance(Vec3 p, std::span<const Vec3> vertices, bool closed) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    best = std::min(best, point_segment_distance(p, vertices[i], vertices[i + 1]));
  if (closed && vertices.size() > 2)
    best = std::min(best, point_segment_distance(p, vertices.back(), vertices.front()));
  return best;
}

double point_obstacle_distance(Vec3 p, const ObstacleGeometry& obstacle) {
  const double dx = obstacle.p1.x - obstacle.p0.x;
  const double dy = obstacle.p1.y - obstacle.p0.y;
  const double px = p.x - obstacle.p0.x;
  const double py = p.y - obstacle.p0.y;
  const double len2 = dx * dx + dy * dy;
  if (obstacle.kind == ObstacleKind::infinite_plane) {
    return std::abs(px * dy - py * dx) / std::sqrt(len2);
  }
  const double t = std::clamp((px * dx + py * dy) / len2, 0.0, 1.0);
  const double ex = px - t * dx;
  const double ey = py - t * dy;
  double dz = 0.0;
  if (p.z < 0.0) dz = -p.z;
  else if (p.z > obstacle.height) dz = p.z - obstacle.height;
  return std::sqrt(ex * ex + ey * ey + dz * dz);
}

namespace {

using Index = std::int64_t;

Index ssize(std::size_t n) { return static_cast<Index>(n); }

double horizontal_or_full_norm(Vec3 v, bool include_z) {
  return std::sqrt(v.x * v.x + v.y * v.y + (include_z ? v.z * v.z : 0.0));
}

}  // namespace

namespace serial {

std::vector<double> polyline_distances(std::span<const Vec3> points, std::span<const Vec3> vertices,
                                       bool closed) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    out[i] = point_polyline_distance(points[i], vertices, closed);
  return out;
}

std::vector<double> obstacle_distances(std::span<const Vec3> points, const ObstacleGeometry& obstacle) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = point_obstacle_distance(points[i], obstacle);
  return out;
}

double min_ratio(std::span<const double> num, std::span<const double> den, double den_floor) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < num.size(); ++i)
    if (den[i] >= den_floor) best = std::min(best, num[i] / den[i]);
  return best;
}

double max_norm(std::span<const Vec3> v, bool include_z) {
  double best = 0.0;
  for (const Vec3& a : v) best = std::max(best, horizontal_or_full_norm(a, include_z));
  return best;
}

}  // namespace serial

namespace parallel {

std::vector<double> polyline_distances(std::span<const Vec3> points, std::span<const Vec3> vertices,
                                       bool closed) {
  std::vector<double> out(points.size());
  const Index n = ssize(points.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) out[i] = point_polyline_distance(points[i], vertices, closed);
  return out;
}

std::vector<double> obstacle_distances(std::span<const Vec3> points, const ObstacleGeometry& obstacle) {
  std::vector<double> out(points.size());
  const Index n = ssize(points.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) out[i] = point_obstacle_distance(points[i], obstacle);
  return out;
}

double min_ratio(std::span<const double> num, std::span<const double> den, double den_floor) {
  double best = std::numeric_limits<double>::infinity();
  const Index n = ssize(num.size());
#pragma omp parallel for schedule(static) reduction(min : best)
  for (Index i = 0; i < n; ++i)
    if (den[i] >= den_floor) best = std::min(best, num[i] / den[i]);
  return best;
}

double max_norm(std::span<const Vec3> v, bool include_z) {
  double best = 0.0;
  const Index n = ssize(v.size());
#pragma omp parallel for schedule(static) reduction(max : best)
  for (Index i = 0; i < n; ++i) best = std::max(best, horizontal_or_full_norm(v[i], include_z));
  return best;
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace decisive::kernels
