#pragma once

#include <doctest.h>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "decisive/core.hpp"
#include "decisive/error.hpp"

namespace testing {

// fn must throw decisive::Error with this code
inline void expect_code(decisive::ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    FAIL_CHECK("no error thrown, expected " << decisive::to_string(code));
  } catch (const decisive::Error& e) {
    CHECK_MESSAGE(e.code() == code, "got " << decisive::to_string(e.code()) << ": " << e.what());
  }
}

inline decisive::Trajectory line_traj(std::size_t n, double dt, decisive::Vec3 p0, decisive::Vec3 v) {
  std::vector<decisive::PoseSample> s;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    s.push_back({t, p0 + t * v, std::nullopt, std::nullopt});
  }
  return decisive::Trajectory(std::move(s));
}

inline std::filesystem::path source_dir() { return DECISIVE_SOURCE_DIR; }
inline std::filesystem::path sample_dir() { return source_dir() / "data" / "sample"; }

}  // namespace testing
