#pragma once

// Campaign manifest model: systems under test, test definitions, environments
// and trial records with their test-specific measurements.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decisive/core.hpp"
#include "decisive/field.hpp"
#include "decisive/mapping.hpp"
#include "decisive/nav.hpp"

namespace decisive {

enum class TestType {
  position_accuracy,
  wall_following,
  waypoint,
  aperture,
  corridor,
  obstacle_avoidance,
  collision_resilience,
  endurance,
  takeoff,
  landing,
  room_clearing,
  noise,
  nlos_comms,
  nlos_latency,
  logistics,
  ocu,
  mapping_resolution,
  mapping_accuracy,
};

std::string_view to_string(TestType t);
std::optional<TestType> parse_test_type(std::string_view s);

struct SuasDescriptor {
  std::string id;
  std::string name;
  friend bool operator==(const SuasDescriptor&, const SuasDescriptor&) = default;
};

struct TestDefinition {
  std::string id;
  TestType type = TestType::position_accuracy;
  std::optional<std::string> environment;
  std::optional<nav::ReferencePath> reference_path;
  std::optional<ObstacleGeometry> obstacle;
  std::optional<Vec3> waypoint;
  std::optional<double> path_length_m;
  std::vector<mapping::FiducialGroundTruth> fiducials;
  field::ChecklistCriteria criteria;
  friend bool operator==(const TestDefinition&, const TestDefinition&) = default;
};

struct ApertureFlags {
  bool passed = false;
  bool contact = false;
  bool ripped = false;
  friend bool operator==(const ApertureFlags&, const ApertureFlags&) = default;
};

struct LatencyFrames {
  std::vector<double> frames;
  double fps = 30.0;
  friend bool operator==(const LatencyFrames&, const LatencyFrames&) = default;
};

struct DimensionSet {
  std::vector<double> reported;
  std::vector<double> truth;
  friend bool operator==(const DimensionSet&, const DimensionSet&) = default;
};

struct FovCount {
  int visible = 0;
  int total = 0;
  friend bool operator==(const FovCount&, const FovCount&) = default;
};

/// Administrator-recorded values that belong to one trial of a given test type.
struct TrialMeasurements {
  std::optional<Vec3> final_position;
  std::optional<double> tape_error_m;
  std::optional<ApertureFlags> aperture;
  std::vector<field::AcuityObservation> acuity;
  std::map<std::string, std::vector<double>> noise_db;  // "ambient" plus conditions
  std::vector<field::NlosPosition> nlos;
  std::optional<LatencyFrames> latency;
  std::optional<DimensionSet> dimensions;
  std::optional<FovCount> fov;
  std::vector<mapping::ShapeClass> shapes;
  std::vector<double> acuity_mm;
  std::optional<std::string> fiducials_csv;
  std::map<std::string, field::FieldValue> responses;
  friend bool operator==(const TrialMeasurements&, const TrialMeasurements&) = default;
};

struct TrialRecord {
  std::string trial_id;
  std::string test_id;
  std::string suas_id;
  Outcome outcome = Outcome::success;
  int collisions = 0;
  int rollovers = 0;
  std::optional<OaCategory> oa_category;
  std::optional<CrCategory> cr_category;
  std::optional<ApertureTier> aperture_tier;
  std::optional<double> t_collision_s;
  std::optional<double> duration_min;
  std::optional<int> laps;
  std::optional<std::string> telemetry;  // path relative to the manifest
  std::string notes;
  TrialMeasurements measurements;
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct Campaign {
  int schema_version = 1;
  std::vector<SuasDescriptor> suas;
  std::vector<EnvironmentProfile> environments;
  std::vector<TestDefinition> tests;
  std::vector<TrialRecord> trials;
  std::filesystem::path base_dir;  // where relative paths resolve; not serialized

  const TestDefinition* find_test(std::string_view id) const;
  const SuasDescriptor* find_suas(std::string_view id) const;
  std::filesystem::path resolve(const std::string& relative) const;

  friend bool operator==(const Campaign& a, const Campaign& b) {
    return a.schema_version == b.schema_version && a.suas == b.suas && a.environments == b.environments &&
           a.tests == b.tests && a.trials == b.trials;
  }
};

}  // namespace decisive
