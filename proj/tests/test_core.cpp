#include <doctest.h>

#include <random>

#include "decisive/core.hpp"
#include "support.hpp"

using namespace decisive;
using testing::expect_code;

TEST_CASE("trajectory rejects bad timestamps") {
  PoseSample a{0.0, {}, {}, {}};
  PoseSample b{0.1, {1, 0, 0}, {}, {}};
  CHECK_NOTHROW(Trajectory({a, b}));
  expect_code(ErrorCode::NonMonotonicTime, [&] { Trajectory({b, a}); });
  expect_code(ErrorCode::NonMonotonicTime, [&] { Trajectory({a, a}); });
  expect_code(ErrorCode::EmptySpan, [&] { Trajectory({a}); });
  PoseSample bad{0.2, {std::nan(""), 0, 0}, {}, {}};
  expect_code(ErrorCode::DomainError, [&] { Trajectory({a, b, bad}); });
}

TEST_CASE("velocity presence is all-or-none") {
  PoseSample a{0.0, {}, Vec3{1, 0, 0}, {}};
  PoseSample b{0.1, {}, std::nullopt, {}};
  Trajectory t({a, b});
  CHECK_FALSE(t.has_velocity());
  CHECK_FALSE(t.has_acceleration());
}

TEST_CASE("marker offset keeps displacements") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<PoseSample> s;
  for (int i = 0; i < 50; ++i) s.push_back({i * 0.05, {u(rng), u(rng), u(rng)}, {}, {}});
  const Vec3 off{0.125, -0.25, 0.0625};
  Trajectory raw(s, TrackingSource::external, off);
  auto shifted = apply_marker_offset(raw);
  CHECK(shifted.marker_offset() == Vec3{});
  CHECK(shifted.source() == TrackingSource::external);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(shifted[i].pos == s[i].pos - off);
  }
  // dyadic coordinates so subtraction is exact
  std::vector<PoseSample> d;
  for (int i = 0; i < 20; ++i) d.push_back({i * 0.25, {i * 0.5, -i * 0.125, 1.0}, {}, {}});
  auto dy = apply_marker_offset(Trajectory(d, TrackingSource::external, off));
  for (std::size_t i = 1; i < d.size(); ++i) {
    CHECK(dy[i].pos - dy[i - 1].pos == d[i].pos - d[i - 1].pos);
  }
}

TEST_CASE("resample timestamps and hull") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dt(0.01, 0.2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<PoseSample> s;
    double t = 0.5;
    for (int i = 0; i < 40; ++i) {
      s.push_back({t, {u(rng), u(rng), u(rng)}, {}, {}});
      t += dt(rng);
    }
    Trajectory tr(s);
    const double rate = 20.0;
    auto r = resample_uniform(tr, rate);
    const auto& out = r.trajectory.samples();
    REQUIRE(out.size() >= 2);
    for (std::size_t k = 0; k < out.size(); ++k) {
      CHECK(out[k].t == s.front().t + static_cast<double>(k) / rate);
      // bracketing source samples
      std::size_t j = 0;
      while (j + 1 < s.size() && s[j + 1].t <= out[k].t) ++j;
      const auto& a = s[j];
      const auto& b = s[std::min(j + 1, s.size() - 1)];
      auto inside = [](double v, double p, double q) { return v >= std::min(p, q) && v <= std::max(p, q); };
      CHECK(inside(out[k].pos.x, a.pos.x, b.pos.x));
      CHECK(inside(out[k].pos.y, a.pos.y, b.pos.y));
      CHECK(inside(out[k].pos.z, a.pos.z, b.pos.z));
    }
    CHECK(out.back().t <= s.back().t + 1e-9);
  }
}

TEST_CASE("resample flags long gaps") {
  Trajectory tr({{0.0, {}, {}, {}}, {0.1, {}, {}, {}}, {1.0, {1, 0, 0}, {}, {}}, {1.1, {}, {}, {}}});
  auto r = resample_uniform(tr, 10.0);
  REQUIRE(r.flagged());
  CHECK(r.gaps.size() == 1);
  CHECK(r.gaps[0] == TimeSpan{0.1, 1.0});
  CHECK(r.trajectory.size() == 12);
  CHECK(r.trajectory[5].pos.x == doctest::Approx(4.0 / 9.0));
  expect_code(ErrorCode::InvalidArgument, [&] { resample_uniform(tr, 0.0); });
}

TEST_CASE("tracker calibration") {
  Trajectory tr({{0, {1, 2, 3}, {}, {}}, {1, {3, 2, 3}, {}, {}}, {2, {2, 2, 6}, {}, {}}});
  auto c = tracker_calibration(tr);
  CHECK(c.accuracy.x == doctest::Approx(2.0));
  CHECK(c.accuracy.z == doctest::Approx(4.0));
  CHECK(c.precision.x == doctest::Approx(1.0));
  CHECK(c.precision.y == 0.0);
  CHECK(c.precision.z == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("obstacle and environment validation") {
  ObstacleGeometry g;
  g.p0 = {0, 0};
  g.p1 = {0, 0};
  expect_code(ErrorCode::InvalidArgument, [&] { g.validate(); });
  g.p1 = {1, 0};
  g.height = 0;
  expect_code(ErrorCode::InvalidArgument, [&] { g.validate(); });
  g.height = 2;
  CHECK_NOTHROW(g.validate());

  EnvironmentProfile e;
  e.lux = 50;
  expect_code(ErrorCode::SchemaMismatch, [&] { e.validate(); });
  e.lighting = Lighting::dark;
  e.lux = 0.5;
  CHECK_NOTHROW(e.validate());
  e.lux = 1.0;
  expect_code(ErrorCode::SchemaMismatch, [&] { e.validate(); });
}

TEST_CASE("enum names round trip") {
  for (auto c : {OaCategory::A1, OaCategory::B1, OaCategory::B4, OaCategory::C1})
    CHECK(parse_oa_category(to_string(c)) == c);
  for (auto c : {CrCategory::A1, CrCategory::A3, CrCategory::B2, CrCategory::C1})
    CHECK(parse_cr_category(to_string(c)) == c);
  CHECK(parse_aperture_tier("A2") == ApertureTier::A2);
  CHECK_FALSE(parse_outcome("maybe"));
  CHECK(OaCategory::A1 < OaCategory::C1);
}

TEST_CASE("mean and sample stddev") {
  CHECK(mean({1, 2, 3, 4}) == 2.5);
  CHECK(sample_stddev({5}) == 0.0);
  CHECK(sample_stddev({2, 4, 4, 4, 5, 5, 7, 9}) == doctest::Approx(2.1380899));
  expect_code(ErrorCode::EmptySample, [] { mean({}); });
}
