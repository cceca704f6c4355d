#pragma once

// Parsers and writers for every on-disk input. Each parser either returns a
// value with a ParseReport or throws decisive::Error naming the location.
// The *_text variants take file contents directly.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "decisive/campaign.hpp"
#include "decisive/cfis.hpp"
#include "decisive/core.hpp"
#include "decisive/field.hpp"
#include "decisive/human_factors.hpp"
#include "decisive/mapping.hpp"
#include "decisive/ncap.hpp"

namespace decisive::ingest {

struct Warning {
  std::string where;  // "line 7", "trials[2]", ...
  std::string message;
  friend bool operator==(const Warning&, const Warning&) = default;
};

struct ParseReport {
  std::string source;
  std::vector<Warning> warnings;
  std::map<std::string, std::size_t> counts;

  void warn(std::string where, std::string message) { warnings.push_back({std::move(where), std::move(message)}); }
};

template <class T>
struct Parsed {
  T value;
  ParseReport report;
};

namespace fs = std::filesystem;

// Telemetry CSV: t,x,y,z[,vx,vy,vz][,ax,ay,az]
Parsed<Trajectory> parse_telemetry_text(std::string_view text, const std::string& source = "telemetry");
Parsed<Trajectory> parse_telemetry(const fs::path& path);
std::string write_telemetry(const Trajectory& traj);

// Campaign manifest JSON. With check_files, referenced telemetry and
// fiducial files must exist relative to base_dir.
Parsed<Campaign> parse_campaign_text(std::string_view text, const fs::path& base_dir,
                                     const std::string& source = "campaign", bool check_files = true);
Parsed<Campaign> parse_campaign(const fs::path& path);
std::string write_campaign(const Campaign& c);

// Survey CSV: participant_id,instrument,item_id,score,manip_pass,condition
Parsed<hf::SurveyDataset> parse_survey_text(std::string_view text, const std::string& source = "survey");
Parsed<hf::SurveyDataset> parse_survey(const fs::path& path);
std::string write_survey(const hf::SurveyDataset& d);

// SAGAT CSV: participant_id,question_id,se_id,sa_level,correct[,perception]
Parsed<std::vector<hf::SagatResponse>> parse_sagat_text(std::string_view text, const std::string& source = "sagat");
Parsed<std::vector<hf::SagatResponse>> parse_sagat(const fs::path& path);
std::string write_sagat(const std::vector<hf::SagatResponse>& rows);

// Preferences CSV: participant_id,preferred,reason
Parsed<std::vector<hf::Preference>> parse_preferences_text(std::string_view text,
                                                           const std::string& source = "preferences");
Parsed<std::vector<hf::Preference>> parse_preferences(const fs::path& path);

// SEEV parameters CSV: se_id,name,saliency,effort,expectancy,value[,present]
struct SeevEntry {
  hf::SeParams params;
  std::string name;
  bool present = true;  // false: not on the OCU, proportion is virtual
};
Parsed<std::vector<SeevEntry>> parse_seev_text(std::string_view text, const std::string& source = "seev");
Parsed<std::vector<SeevEntry>> parse_seev(const fs::path& path);

// SE groups CSV: group,se_id
using SeGroups = std::vector<std::pair<std::string, std::vector<std::string>>>;
Parsed<SeGroups> parse_groups_text(std::string_view text, const std::string& source = "groups");
Parsed<SeGroups> parse_groups(const fs::path& path);

// Feature sheet JSON
Parsed<ncap::FeatureTable> parse_feature_sheet_text(std::string_view text, const std::string& source = "features");
Parsed<ncap::FeatureTable> parse_feature_sheet(const fs::path& path);
std::string write_feature_sheet(const ncap::FeatureTable& t);

// Flat name -> number JSON object (feature or test weights).
Parsed<std::map<std::string, double>> parse_weights_text(std::string_view text, const std::string& source = "weights");
Parsed<std::map<std::string, double>> parse_weights(const fs::path& path);

// FIS config JSON
struct FisBundle {
  cfis::FisConfig config;
  cfis::AxisInputs ideal;  // inputs that stand for the best possible MC outcome
  friend bool operator==(const FisBundle&, const FisBundle&) = default;
};
Parsed<FisBundle> parse_fis_config_text(std::string_view text, const std::string& source = "fis");
Parsed<FisBundle> parse_fis_config(const fs::path& path);
std::string write_fis_config(const FisBundle& b);

// Fiducial observations CSV: fiducial_id,half,x,y,mapped
Parsed<std::vector<mapping::FiducialObservation>> parse_fiducials_text(std::string_view text,
                                                                       const std::string& source = "fiducials");
Parsed<std::vector<mapping::FiducialObservation>> parse_fiducials(const fs::path& path);
std::string write_fiducials(const std::vector<mapping::FiducialObservation>& obs);

// Checklist criteria JSON: {"field": {"op": "min", "value": 120}, ...}
Parsed<field::ChecklistCriteria> parse_criteria_text(std::string_view text, const std::string& source = "criteria");
Parsed<field::ChecklistCriteria> parse_criteria(const fs::path& path);
std::string write_criteria(const field::ChecklistCriteria& c);

// cFIS scores CSV: suas_id,test_id[,score][,<fis>.<variable>...]
struct ScoreRow {
  std::string suas_id;
  std::string test_id;
  std::optional<double> score;  // precomputed normalized score
  cfis::AxisInputs inputs;
};
Parsed<std::vector<ScoreRow>> parse_scores_text(std::string_view text, const std::string& source = "scores");
Parsed<std::vector<ScoreRow>> parse_scores(const fs::path& path);

}  // namespace decisive::ingest
