#include <doctest.h>

#include <cmath>
#include <random>

#include "decisive/mapping.hpp"
#include "support.hpp"

using namespace decisive;
using namespace decisive::mapping;
using testing::expect_code;

namespace {

struct Fid {
  std::string id;
  double traversal;
  int turns;
  char rating;
};

const Fid kFiducials[] = {{"A", 11, 2, 'M'}, {"B", 8, 2, 'L'},  {"C", 35, 7, 'H'}, {"D", 5, 2, 'L'},
                          {"E", 12, 3, 'M'}, {"F", 7, 2, 'L'},  {"G", 27, 5, 'H'}, {"H", 7, 2, 'L'},
                          {"I", 16, 3, 'M'}, {"J", 10, 2, 'L'}};

// pairwise errors with the scale found by ternary search
double brute_force_error_cm(const std::vector<Vec2>& m, const std::vector<Vec2>& g) {
  std::vector<double> dm, dg;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      dm.push_back(std::hypot(m[i].x - m[j].x, m[i].y - m[j].y));
      dg.push_back(std::hypot(g[i].x - g[j].x, g[i].y - g[j].y));
    }
  auto sse = [&](double s) {
    double e = 0;
    for (std::size_t k = 0; k < dm.size(); ++k) e += (s * dm[k] - dg[k]) * (s * dm[k] - dg[k]);
    return e;
  };
  double lo = 0, hi = 1000;
  for (int it = 0; it < 300; ++it) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    if (sse(a) < sse(b)) hi = b;
    else lo = a;
  }
  const double s = (lo + hi) / 2;
  double err = 0;
  for (std::size_t k = 0; k < dm.size(); ++k) err += std::abs(s * dm[k] - dg[k]);
  return 100 * err / dm.size();
}

std::vector<FiducialObservation> both_halves(const std::vector<std::string>& ids, const std::vector<Vec2>& pts) {
  std::vector<FiducialObservation> obs;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    obs.push_back({ids[i], 1, Vec2{pts[i].x - 0.01, pts[i].y}, MappedState::complete});
    obs.push_back({ids[i], 2, Vec2{pts[i].x + 0.01, pts[i].y}, MappedState::complete});
  }
  return obs;
}

}  // namespace

TEST_CASE("difficulty ratings for the ten fiducials") {
  for (const auto& f : kFiducials) {
    CAPTURE(f.id);
    CHECK(to_string(difficulty_rating(f.traversal, f.turns))[0] == f.rating);
  }
  expect_code(ErrorCode::InvalidArgument, [] { difficulty_rating(0, 1); });
}

TEST_CASE("dimensional accuracy and coverage") {
  CHECK(dimensional_accuracy({2, 2}, {2, 2}) == 100.0);
  CHECK(dimensional_accuracy({1.9, 2.1}, {2, 2}) == doctest::Approx(100.0));
  CHECK(dimensional_accuracy({1.8, 1.8}, {2, 2}) == doctest::Approx(90.0));
  expect_code(ErrorCode::LengthMismatch, [] { dimensional_accuracy({1}, {1, 2}); });
  CHECK(fov_coverage(11, 20) == 55.0);
  expect_code(ErrorCode::CountOutOfRange, [] { fov_coverage(3, 2); });
}

TEST_CASE("shape accuracy") {
  std::vector<ShapeClass> v;
  for (char c : std::string("CCCSCCICSC")) v.push_back(*parse_shape_class(std::string(1, c)));
  CHECK(shape_accuracy_rate(v) == doctest::Approx(70.0));
  CHECK_FALSE(parse_shape_class("X"));
}

TEST_CASE("acuity summary") {
  auto s = acuity_summary({8, 8, 8, 20, 8, 8, 8, 8, 3});
  CHECK(s.mean_mm == doctest::Approx(8.78).epsilon(1e-3));
  CHECK(s.std_mm == doctest::Approx(4.52).epsilon(1e-2));
  expect_code(ErrorCode::DomainError, [] { acuity_summary({9}); });
}

TEST_CASE("global error for scaled identical maps") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0, 30);
  std::vector<std::string> ids{"A", "B", "C", "D", "E", "F"};
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<FiducialGroundTruth> truth;
    std::vector<Vec2> map;
    const double k = 0.01 + rep;  // map units per meter
    for (const auto& id : ids) {
      Vec2 g{u(rng), u(rng)};
      truth.push_back({id, g, 5, 2});
      map.push_back({g.x * k, g.y * k});
    }
    auto r = global_error(both_halves(ids, map), truth);
    CHECK(r.error_cm <= 1e-9);
    CHECK(r.scale == doctest::Approx(1.0 / k));
    CHECK(r.pairs == 15);
  }
}

TEST_CASE("global error matches brute force and ignores scale and rigid motion") {
  std::mt19937 rng(32);
  std::uniform_real_distribution<double> u(0, 20);
  std::normal_distribution<double> noise(0, 0.3);
  std::vector<std::string> ids{"A", "B", "C", "D", "E"};
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<FiducialGroundTruth> truth;
    std::vector<Vec2> gt, map;
    for (const auto& id : ids) {
      Vec2 g{u(rng), u(rng)};
      gt.push_back(g);
      truth.push_back({id, g, 5, 2});
      map.push_back({g.x * 3 + noise(rng), g.y * 3 + noise(rng)});
    }
    std::vector<FiducialObservation> obs;
    for (std::size_t i = 0; i < ids.size(); ++i) obs.push_back({ids[i], 1, map[i], MappedState::complete});
    const auto r = global_error(obs, truth);
    CHECK(std::abs(r.error_cm - brute_force_error_cm(map, gt)) <= 1e-6);

    const double th = u(rng), s = 0.5 + u(rng);
    std::vector<FiducialObservation> moved = obs, scaled = obs;
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const Vec2 p = *obs[i].map_xy;
      moved[i].map_xy = Vec2{std::cos(th) * p.x - std::sin(th) * p.y + 7, std::sin(th) * p.x + std::cos(th) * p.y - 3};
      scaled[i].map_xy = Vec2{p.x * s, p.y * s};
    }
    CHECK(std::abs(global_error(moved, truth).error_cm - r.error_cm) <= 1e-9);
    CHECK(std::abs(global_error(scaled, truth).error_cm - r.error_cm) <= 1e-9);
  }
}

TEST_CASE("fiducial coverage and missing halves") {
  std::vector<FiducialGroundTruth> truth{{"A", {0, 0}, 5, 2}, {"B", {1, 0}, 5, 2}, {"C", {0, 1}, 5, 2}};
  std::vector<FiducialObservation> obs{{"A", 1, Vec2{0, 0}, MappedState::complete},
                                       {"A", 2, Vec2{0, 0}, MappedState::partial},
                                       {"B", 1, Vec2{2, 0}, MappedState::complete},
                                       {"C", 1, std::nullopt, MappedState::missing}};
  CHECK(fiducial_coverage(obs, truth) == doctest::Approx(50.0));
  expect_code(ErrorCode::TooFewFiducials, [&] { global_error(obs, truth); });
  obs[3] = {"C", 2, Vec2{0, 2}, MappedState::complete};
  auto r = global_error(obs, truth);
  CHECK(r.fiducials == 3);
  CHECK(r.scale == doctest::Approx(0.5));
  CHECK(r.error_cm == doctest::Approx(0.0).epsilon(1e-12));
}
