#pragma once

// SEEV attention allocation, probability of attending, virtual proportion,
// SAGAT scoring, OSA aggregation and the trust-survey pipeline.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decisive/stats.hpp"

namespace decisive::hf {

struct SeParams {
  std::string se_id;
  double saliency = 1.0;
  double effort = 1.0;
  double expectancy = 1.0;
  double value = 1.0;
};

/// A_i = beta Sa V / E, f_i = A_i / sum A.
std::vector<double> attention_allocation(const std::vector<SeParams>& params);

struct SeProperties {
  std::string se_id;
  double s = 0.0;   // salience
  double ef = 0.0;  // effort
  double ex = 0.0;  // expectancy
  double v = 0.0;   // value
};

struct SeevWeights {
  double s = 1.0;
  double ef = 1.0;
  double ex = 1.0;
  double v = 1.0;
};

struct AttendResult {
  std::vector<double> p;  // aligned with input
  std::vector<std::string> warnings;
};

/// P = s S - ef EF + ex EX + v V, clamped at 0 with a warning.
AttendResult probability_attending(const std::vector<SeProperties>& props, const SeevWeights& w);

enum class VpMode { least_squares, two_point };

/// Line through (correct_rate, proportion) pairs evaluated at missing_rate.
/// two_point uses the nearest present rates on either side (or the two
/// nearest when missing_rate is outside them).
double virtual_proportion(const std::vector<std::pair<double, double>>& present, double missing_rate,
                          VpMode mode = VpMode::least_squares);

std::vector<double> renormalize(std::vector<double> v);

enum class Perception { undetected, detected, comprehended };
double perception_value(Perception p);  // 0 / 0.5 / 1
std::string_view to_string(Perception p);
std::optional<Perception> parse_perception(std::string_view s);

struct SagatResponse {
  std::string participant;
  std::string question_id;
  std::string se_id;
  int sa_level = 1;
  bool correct = false;
  Perception perception = Perception::undetected;
  friend bool operator==(const SagatResponse&, const SagatResponse&) = default;
};

struct SagatScores {
  std::map<std::string, double> correct_rate;                              // per SE
  std::map<std::string, std::map<std::string, double>> perception;         // participant -> SE -> p
};

/// Per (participant, SE) the highest perception across that SE's questions.
SagatScores sagat_scores(const std::vector<SagatResponse>& responses);

/// sum w_i p_i with w renormalized to sum 1.
double osa(const std::vector<double>& weights, const std::vector<double>& p);

enum class WeightsModel { aam, mds };  // f_i, or normalized P(SE)

struct OsaGroupSummary {
  std::string group;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t participants = 0;
};

/// One OSA per participant per group (weights restricted to the group's SEs
/// and renormalized), then mean and sample std across participants.
/// An SE a participant was never asked about counts as undetected.
std::vector<OsaGroupSummary> osa_groups(const std::map<std::string, double>& se_weights,
                                        const SagatScores& scores,
                                        const std::vector<std::pair<std::string, std::vector<std::string>>>& groups);

// ---------------------------------------------------------------------------
// Trust

enum class Instrument { ctpa, hctm };
std::string_view to_string(Instrument i);
std::optional<Instrument> parse_instrument(std::string_view s);
inline constexpr int kCtpaItems = 9;
inline constexpr int kHctmItems = 12;

struct SurveyRow {
  std::string participant_id;
  Instrument instrument = Instrument::ctpa;
  std::string item_id;
  int score = 1;  // 1..7
  bool manip_pass = true;
  std::string condition;
  friend bool operator==(const SurveyRow&, const SurveyRow&) = default;
};

struct SurveyDataset {
  std::vector<SurveyRow> rows;
  friend bool operator==(const SurveyDataset&, const SurveyDataset&) = default;
};

struct Preference {
  std::string participant_id;
  std::string preferred;
  std::string reason;
};

struct TrustItemResult {
  Instrument instrument = Instrument::ctpa;
  std::string item_id;
  double mean_a = 0.0;
  double mean_b = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::size_t removed_a = 0;
  std::size_t removed_b = 0;
  stats::MannWhitneyResult mw;
  std::optional<stats::WelchResult> welch;
};

struct TrustReport {
  std::vector<TrustItemResult> items;              // first-appearance order
  std::vector<std::string> excluded_participants;  // failed manipulation check
  std::vector<std::string> warnings;
  std::map<std::string, int> preference_counts;
  std::vector<Preference> preferences;
};

TrustReport trust_pipeline(const SurveyDataset& data, const std::string& condition_a,
                           const std::string& condition_b, const std::vector<Preference>& preferences = {});

}  // namespace decisive::hf
