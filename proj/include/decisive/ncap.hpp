#pragma once

// Non-contextual autonomy potential: feature encoding, weight schemes, the
// weighted product N_CP, autonomy level N_AL, coordinates and distances.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace decisive::ncap {

enum class Direction { higher_better, lower_better };
std::string_view to_string(Direction d);  // "higher" / "lower"
std::optional<Direction> parse_direction(std::string_view s);

struct Feature {
  std::string name;
  Direction direction = Direction::higher_better;
  std::optional<std::map<std::string, double>> ordinal_map;  // token -> rank
  std::optional<double> degree;  // degree of autonomy n, weight 2^-n
  std::optional<double> weight;  // explicit weight before normalization
  friend bool operator==(const Feature&, const Feature&) = default;
};

struct Absent {
  friend bool operator==(Absent, Absent) { return true; }
};
using FeatureValue = std::variant<Absent, double, std::string>;

struct AutonomyCapabilities {
  bool perception = false;
  bool modeling = false;
  bool planning = false;
  bool execution = false;
  friend bool operator==(const AutonomyCapabilities&, const AutonomyCapabilities&) = default;
};

int autonomy_level(const AutonomyCapabilities& caps);

struct SystemFeatures {
  std::string id;
  std::map<std::string, FeatureValue> values;
  std::optional<AutonomyCapabilities> capabilities;
  std::optional<int> n_al;  // overrides capabilities when given
  friend bool operator==(const SystemFeatures&, const SystemFeatures&) = default;
};

struct FeatureTable {
  std::vector<Feature> features;
  std::vector<SystemFeatures> systems;
  friend bool operator==(const FeatureTable&, const FeatureTable&) = default;
};

struct EncodedMatrix {
  std::vector<std::string> system_ids;
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> values;  // [system][feature], all > 0
  std::vector<std::string> notes;           // one per Absent replacement
};

/// Ordinal tokens become ranks; Absent becomes the smallest encoded value of
/// that feature in the cohort (1 for an ordinal feature nobody reports).
EncodedMatrix encode_features(const FeatureTable& table);

enum class WeightKind { uniform, degree, explicit_weights };

struct WeightScheme {
  WeightKind kind = WeightKind::uniform;
  std::map<std::string, double> per_feature;  // n (degree) or w (explicit); falls back to the sheet
};

/// Normalized so that sum |w_i| = 1, aligned with table.features.
std::vector<double> normalized_weights(const FeatureTable& table, const WeightScheme& scheme);

/// prod phi_i^(s_i w_i), s_i = -1 for lower-is-better features.
double weighted_product(const std::vector<double>& values, const std::vector<double>& weights,
                        const std::vector<Direction>& directions);

struct Coordinate {
  std::string id;
  int n_al = 0;
  double n_cp = 0.0;
};

struct NcapEntry {
  std::string id;
  int n_al = 0;
  double n_cp = 0.0;
  double absolute_distance = 0.0;
  double relative_distance = 0.0;
  int rank = 0;  // 1 = largest absolute distance
};

struct NcapResult {
  std::vector<NcapEntry> entries;  // input order
  std::string best_id;
  std::vector<std::string> warnings;
};

NcapResult autonomy_distances(const std::vector<Coordinate>& coords);

/// encode -> weights -> N_CP -> distances. Every system needs n_al or capabilities.
NcapResult evaluate(const FeatureTable& table, const WeightScheme& scheme);

}  // namespace decisive::ncap
