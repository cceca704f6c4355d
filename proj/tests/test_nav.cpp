#include <doctest.h>

#include <cmath>
#include <random>

#include "decisive/kernels.hpp"
#include "decisive/nav.hpp"
#include "support.hpp"

using namespace decisive;
using testing::expect_code;

namespace {

// walk each segment in 1 mm steps
double dense_oracle(Vec3 p, const std::vector<Vec3>& verts, bool closed) {
  double best = 1e300;
  auto walk = [&](Vec3 a, Vec3 b) {
    const double len = (b - a).norm();
    const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.001)));
    for (int k = 0; k <= steps; ++k) {
      const Vec3 q = a + (static_cast<double>(k) / steps) * (b - a);
      best = std::min(best, (p - q).norm());
    }
  };
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) walk(verts[i], verts[i + 1]);
  if (closed && verts.size() > 2) walk(verts.back(), verts.front());
  return best;
}

Vec3 rotate_z(Vec3 v, double th) {
  return {std::cos(th) * v.x - std::sin(th) * v.y, std::sin(th) * v.x + std::cos(th) * v.y, v.z};
}

}  // namespace

TEST_CASE("reference path checks") {
  expect_code(ErrorCode::InvalidArgument, [] { nav::ReferencePath({{0, 0, 0}}); });
  expect_code(ErrorCode::InvalidArgument, [] { nav::ReferencePath({{0, 0, 0}, {0, 0, 0}}); });
  nav::ReferencePath sq({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}}, true);
  CHECK(sq.length() == doctest::Approx(8.0));
  nav::ReferencePath open({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}});
  CHECK(open.length() == doctest::Approx(6.0));
  // closing segment matters
  CHECK(nav::point_path_deviation({-0.5, 1, 0}, sq) == doctest::Approx(0.5));
  CHECK(nav::point_path_deviation({-0.5, 1, 0}, open) == doctest::Approx(std::hypot(0.5, 1.0)));
}

TEST_CASE("deviation is clamped to segments") {
  nav::ReferencePath p({{0, 0, 1}, {10, 0, 1}});
  CHECK(nav::point_path_deviation({5, 3, 1}, p) == doctest::Approx(3.0));
  CHECK(nav::point_path_deviation({13, 4, 1}, p) == doctest::Approx(5.0));
  CHECK(nav::point_path_deviation({-3, 0, 5}, p) == doctest::Approx(5.0));
}

TEST_CASE("constant offset gives that offset as AD") {
  nav::ReferencePath p({{0, 0, 1}, {12, 0, 1}});
  for (double off : {0.0, 0.05, 0.3, 1.7}) {
    auto tr = testing::line_traj(200, 0.05, {1, off, 1}, {1, 0, 0});
    CHECK(std::abs(nav::average_deviation(tr, p) - off) <= 1e-9);
  }
  // corner path, offset outside the corner
  nav::ReferencePath corner({{0, 0, 0}, {10, 0, 0}, {10, 10, 0}});
  std::vector<PoseSample> s;
  for (int i = 0; i < 80; ++i) s.push_back({i * 0.1, {i * 0.1, -0.4, 0}, {}, {}});
  for (int i = 0; i < 80; ++i) s.push_back({8 + i * 0.1, {10.4, 1 + i * 0.1, 0}, {}, {}});
  CHECK(std::abs(nav::average_deviation(Trajectory(s), corner) - 0.4) <= 1e-9);
}

TEST_CASE("random point-path cases match dense sampling") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-5, 5);
  std::uniform_int_distribution<int> nv(2, 6);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<Vec3> v;
    const int n = nv(rng);
    for (int i = 0; i < n; ++i) v.push_back({u(rng), u(rng), u(rng) * 0.2});
    const bool closed = rep % 3 == 0;
    nav::ReferencePath path(v, closed);
    const Vec3 p{u(rng), u(rng), u(rng)};
    const double d = nav::point_path_deviation(p, path);
    CHECK(std::abs(d - dense_oracle(p, v, closed)) <= 1e-3);
    CHECK(d <= dense_oracle(p, v, closed) + 1e-12);
  }
}

TEST_CASE("deviation is invariant under rigid motion") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<Vec3> v{{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}};
    const Vec3 p{u(rng), u(rng), u(rng)};
    const double th = u(rng);
    const Vec3 shift{u(rng), u(rng), u(rng)};
    std::vector<Vec3> w;
    for (auto& x : v) w.push_back(rotate_z(x, th) + shift);
    const double a = nav::point_path_deviation(p, nav::ReferencePath(v));
    const double b = nav::point_path_deviation(rotate_z(p, th) + shift, nav::ReferencePath(w));
    CHECK(std::abs(a - b) <= 1e-9);
  }
}

TEST_CASE("AD lies between 0 and the max deviation") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-2, 2);
  nav::ReferencePath p({{0, 0, 1}, {5, 0, 1}, {5, 5, 1}});
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<PoseSample> s;
    for (int i = 0; i < 30; ++i) s.push_back({i * 0.1, {u(rng) + 2, u(rng) + 2, 1 + u(rng)}, {}, {}});
    Trajectory tr(s);
    auto series = nav::deviation_series(tr, p);
    const double ad = nav::average_deviation(tr, p);
    CHECK(ad >= 0.0);
    CHECK(ad <= *std::max_element(series.begin(), series.end()) + 1e-15);
  }
}

TEST_CASE("serial and parallel polyline kernels agree bitwise") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<Vec3> pts(5000), verts(12);
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  for (auto& v : verts) v = {u(rng), u(rng), u(rng)};
  CHECK(kernels::serial::polyline_distances(pts, verts, true) ==
        kernels::parallel::polyline_distances(pts, verts, true));
  CHECK(kernels::serial::max_norm(pts, false) == kernels::parallel::max_norm(pts, false));
  CHECK(kernels::serial::max_norm(pts, true) == kernels::parallel::max_norm(pts, true));
}

TEST_CASE("flight summaries") {
  auto s = nav::deviation_summary_from_ads({0.1, 0.2, 0.3});
  CHECK(s.mean_ad == doctest::Approx(0.2));
  CHECK(s.std_ad == doctest::Approx(0.1));
  CHECK(s.warnings.empty());
  auto one = nav::deviation_summary_from_ads({0.4});
  CHECK(one.std_ad == 0.0);
  CHECK(one.warnings.size() == 1);
  expect_code(ErrorCode::EmptySample, [] { nav::deviation_summary_from_ads({}); });

  CHECK(nav::waypoint_error({3, 4, 9}, {0, 0, 0}) == doctest::Approx(5.0));
  auto w = nav::waypoint_summary({0.1, 0.3});
  CHECK(w.accuracy == doctest::Approx(0.2));
  CHECK(w.precision == doctest::Approx(std::sqrt(0.02)));

  CHECK(nav::traversal_speed(60, 2) == doctest::Approx(0.5));
  expect_code(ErrorCode::ZeroDuration, [] { nav::traversal_speed(10, 0); });
}

TEST_CASE("aperture tiers cover the flag space") {
  using nav::classify_aperture_trial;
  CHECK(classify_aperture_trial(true, false, false) == ApertureTier::A1);
  CHECK(classify_aperture_trial(true, true, false) == ApertureTier::A2);
  CHECK(classify_aperture_trial(true, true, true) == ApertureTier::A3);
  CHECK(classify_aperture_trial(false, false, false) == ApertureTier::B1);
  CHECK(classify_aperture_trial(false, true, false) == ApertureTier::B1);
  CHECK(classify_aperture_trial(false, true, true) == ApertureTier::B1);
  expect_code(ErrorCode::InconsistentFlags, [] { classify_aperture_trial(true, false, true); });
  expect_code(ErrorCode::InconsistentFlags, [] { classify_aperture_trial(false, false, true); });
  CHECK(ApertureTier::A1 < ApertureTier::A2);
  CHECK(ApertureTier::A3 < ApertureTier::B1);
}
