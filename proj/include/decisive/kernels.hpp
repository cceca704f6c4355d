#pragma once

// Data-parallel inner loops over trajectory samples.
//
// Every kernel exists twice: `serial::` is the reference implementation kept
// for testing, `parallel::` is the OpenMP version the metric modules call.
// Per-sample outputs are written by index and reductions are min/max only, so
// both versions return bit-identical results for any thread count.

#include <span>
#include <vector>

#include "decisive/core.hpp"

namespace decisive::kernels {

double point_segment_distance(Vec3 p, Vec3 a, Vec3 b);

/// Minimum distance from p to the polyline (endpoint-clamped segments); a
/// closed polyline includes the last->first segment.
double point_polyline_distance(Vec3 p, std::span<const Vec3> vertices, bool closed);

double point_obstacle_distance(Vec3 p, const ObstacleGeometry& obstacle);

namespace serial {

std::vector<double> polyline_distances(std::span<const Vec3> points, std::span<const Vec3> vertices,
                                       bool closed);
std::vector<double> obstacle_distances(std::span<const Vec3> points, const ObstacleGeometry& obstacle);
/// min over i with den[i] >= den_floor of num[i] / den[i]; +inf when none qualifies.
double min_ratio(std::span<const double> num, std::span<const double> den, double den_floor);
/// max over i of the vector norm, ignoring z unless include_z.
double max_norm(std::span<const Vec3> v, bool include_z);

}  // namespace serial

namespace parallel {

std::vector<double> polyline_distances(std::span<const Vec3> points, std::span<const Vec3> vertices,
                                       bool closed);
std::vector<double> obstacle_distances(std::span<const Vec3> points, const ObstacleGeometry& obstacle);
double min_ratio(std::span<const double> num, std::span<const double> den, double den_floor);
double max_norm(std::span<const Vec3> v, bool include_z);

}  // namespace parallel

/// Threads OpenMP will use (1 when built without OpenMP).
int max_threads();

}  // namespace decisive::kernels
