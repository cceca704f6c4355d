#include <doctest.h>

#include <random>

#include "decisive/csv.hpp"
#include "decisive/ingest.hpp"
#include "support.hpp"

using namespace decisive;
using namespace decisive::ingest;
using testing::expect_code;
using testing::sample_dir;

namespace {

std::string slurp(const std::filesystem::path& p) { return csv::read_file(p); }

std::optional<std::size_t> error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.line();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("csv basics") {
  auto t = csv::parse("a,b\r\n1,\"x,\"\"y\"\"\"\n\n2,z\n");
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].fields[1] == "x,\"y\"");
  CHECK(t.rows[1].line == 4);
  CHECK(*t.column("b") == 1);
  expect_code(ErrorCode::MalformedInput, [] { csv::parse("a,b\n1\n"); });
  expect_code(ErrorCode::MalformedInput, [] { csv::parse("a\n\"open\n"); });
  CHECK(csv::escape("plain") == "plain");
  CHECK(csv::escape("a,b") == "\"a,b\"");
  CHECK_FALSE(csv::parse_double("1,5"));
  CHECK(csv::parse_bool("true") == true);

  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) / (1 + i);
    CHECK(*csv::parse_double(csv::format_double(v)) == v);
  }
}

TEST_CASE("telemetry parsing") {
  auto p = parse_telemetry_text("t,x,y,z,vx,vy,vz\n0,0,0,1,1,0,0\n0.1,0.1,0,1,1,0,0\n");
  CHECK(p.value.size() == 2);
  CHECK(p.value.has_velocity());
  CHECK(error_line([] { parse_telemetry_text("t,x,y,z\n0,0,0,0\n0.1,0,abc,0\n"); }) == 3);
  CHECK(error_line([] { parse_telemetry_text("t,x,y,z\n0,0,0,0\n0.2,0,0,0\n0.1,0,0,0\n"); }) == 4);
  expect_code(ErrorCode::NonMonotonicTime, [] { parse_telemetry_text("t,x,y,z\n0,0,0,0\n0,0,0,0\n"); });
  expect_code(ErrorCode::MissingColumn, [] { parse_telemetry_text("t,x,y\n0,0,0\n1,0,0\n"); });
  expect_code(ErrorCode::NonNumericField, [] { parse_telemetry_text("t,x,y,z\n0,0,0,0\n1,0,,0\n"); });
  expect_code(ErrorCode::MalformedInput, [] { parse_telemetry_text("t,x,y,z\n0,0,0,0\n"); });
}

TEST_CASE("sample telemetry round trips") {
  for (const auto& e : std::filesystem::directory_iterator(sample_dir() / "telemetry")) {
    CAPTURE(e.path().filename().string());
    const auto a = parse_telemetry(e.path()).value;
    const auto b = parse_telemetry_text(write_telemetry(a)).value;
    CHECK(a == b);
  }
}

TEST_CASE("sample campaign loads and round trips") {
  auto p = parse_campaign(sample_dir() / "campaign.json");
  const auto& c = p.value;
  CHECK(c.suas.size() == 2);
  CHECK(p.report.counts.at("trials") == c.trials.size());
  CHECK(c.find_test("wall-following") != nullptr);
  CHECK(c.resolve("telemetry/x.csv") == sample_dir() / "telemetry" / "x.csv");
  auto again = parse_campaign_text(write_campaign(c), sample_dir()).value;
  CHECK(again == c);
}

TEST_CASE("campaign reference and schema errors") {
  const std::string base = R"({"schema_version": 1, "suas": [{"id": "A"}],
    "environments": [{"id": "lab", "lighting": "lighted", "lux": 300}],
    "tests": [{"id": "t1", "type": "endurance", "environment": "lab"}],
    "trials": [TRIALS]})";
  auto with = [&](const std::string& trials) {
    std::string s = base;
    s.replace(s.find("TRIALS"), 6, trials);
    return s;
  };
  const std::string good = R"({"trial_id": "x", "test_id": "t1", "suas_id": "A", "outcome": "success",
                               "collisions": 0, "rollovers": 0, "laps": 3, "duration_min": 2})";
  CHECK_NOTHROW(parse_campaign_text(with(good), ".", "c", false));
  expect_code(ErrorCode::DuplicateId, [&] { parse_campaign_text(with(good + "," + good), ".", "c", false); });
  std::string dangling = good;
  dangling.replace(dangling.find("\"A\""), 3, "\"Z\"");
  expect_code(ErrorCode::DanglingReference, [&] { parse_campaign_text(with(dangling), ".", "c", false); });
  std::string cat = good;
  cat.replace(cat.find("\"success\""), 9, "\"meh\"");
  expect_code(ErrorCode::UnknownCategory, [&] { parse_campaign_text(with(cat), ".", "c", false); });
  std::string v2 = with(good);
  v2.replace(v2.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
  expect_code(ErrorCode::SchemaVersionUnsupported, [&] { parse_campaign_text(v2, ".", "c", false); });
  std::string dark = with(good);
  dark.replace(dark.find("\"lighted\""), 9, "\"dark\"");
  expect_code(ErrorCode::SchemaMismatch, [&] { parse_campaign_text(dark, ".", "c", false); });
  std::string tele = good;
  tele.insert(tele.size() - 1, R"(, "telemetry": "missing.csv")");
  expect_code(ErrorCode::Io, [&] { parse_campaign_text(with(tele), "/nonexistent", "c", true); });
  auto empty = parse_campaign_text(with(""), ".", "c", false);
  CHECK_FALSE(empty.report.warnings.empty());
  expect_code(ErrorCode::MalformedInput, [] { parse_campaign_text("{\"schema_version\": 1,", ".", "c", false); });
}

TEST_CASE("survey duplicates keep the last row") {
  auto p = parse_survey_text(
      "participant_id,instrument,item_id,score,manip_pass,condition\n"
      "P1,CTPA,C1,3,true,a\nP1,CTPA,C1,6,true,a\nP2,HCTM,H1,5,false,b\n");
  REQUIRE(p.value.rows.size() == 2);
  CHECK(p.value.rows[0].score == 6);
  CHECK(std::count_if(p.report.warnings.begin(), p.report.warnings.end(), [](const Warning& w) {
          return w.message.find("duplicate") != std::string::npos && w.where == "line 3";
        }) == 1);
  expect_code(ErrorCode::ScoreOutOfRange,
              [] { parse_survey_text("participant_id,instrument,item_id,score,manip_pass,condition\nP,CTPA,C1,8,true,a\n"); });
  expect_code(ErrorCode::UnknownInstrument,
              [] { parse_survey_text("participant_id,instrument,item_id,score,manip_pass,condition\nP,XYZ,C1,3,true,a\n"); });
}

TEST_CASE("sample files round trip") {
  const auto survey = parse_survey(sample_dir() / "survey.csv").value;
  CHECK(parse_survey_text(write_survey(survey)).value == survey);
  const auto sagat = parse_sagat(sample_dir() / "sagat.csv").value;
  CHECK(parse_sagat_text(write_sagat(sagat)).value == sagat);
  const auto feats = parse_feature_sheet(sample_dir() / "features.json").value;
  CHECK(parse_feature_sheet_text(write_feature_sheet(feats)).value == feats);
  const auto fid = parse_fiducials(sample_dir() / "fiducials_A.csv").value;
  CHECK(parse_fiducials_text(write_fiducials(fid)).value == fid);
  const auto fis = parse_fis_config(testing::source_dir() / "data" / "fis" / "takeoff_land.json").value;
  CHECK(parse_fis_config_text(write_fis_config(fis)).value == fis);
  field::ChecklistCriteria crit{{"range_m", {field::CriterionOp::min, 120.0}},
                                {"case", {field::CriterionOp::contains, std::string("hard")}}};
  CHECK(parse_criteria_text(write_criteria(crit)).value == crit);
}

TEST_CASE("other sample inputs parse") {
  CHECK(parse_seev(sample_dir() / "seev.csv").value.size() == 10);
  CHECK_FALSE(parse_groups(sample_dir() / "groups.csv").value.empty());
  CHECK(parse_weights(sample_dir() / "weights_user.json").value.size() == 10);
  CHECK_FALSE(parse_preferences(sample_dir() / "preferences.csv").value.empty());
  auto scores = parse_scores(sample_dir() / "takeoff_scores.csv").value;
  REQUIRE(scores.size() == 3);
  CHECK(scores[0].inputs.at("mc").at("completion") == 1.0);
  auto pred = parse_scores(sample_dir() / "predictive_scores.csv").value;
  CHECK(pred.size() == 33);
  auto sagat = parse_sagat(sample_dir() / "sagat.csv");
  CHECK_FALSE(sagat.report.warnings.empty());  // perception derived
}

TEST_CASE("fis config errors carry locations") {
  const std::string text = csv::read_file(testing::source_dir() / "data" / "fis" / "takeoff_land.json");
  std::string bad = text;
  bad.replace(bad.find("[0.5, 1.5, 2.5]"), 15, "[0.5, 2.5, 1.5]");
  expect_code(ErrorCode::MalformedTuple, [&] { parse_fis_config_text(bad); });
  bad = text;
  bad.replace(bad.find("\"Very Good\"}"), 11, "\"Superb\"");
  expect_code(ErrorCode::UnknownTerm, [&] { parse_fis_config_text(bad); });
  auto l = error_line([&] { parse_fis_config_text(text.substr(0, 300)); });
  CHECK(l.has_value());
}

TEST_CASE("parsers are total on mutated input") {
  std::mt19937 rng(72);
  const std::vector<std::pair<std::filesystem::path, std::function<void(std::string_view)>>> cases{
      {sample_dir() / "survey.csv", [](std::string_view s) { parse_survey_text(s); }},
      {sample_dir() / "telemetry" / "oa_A1.csv", [](std::string_view s) { parse_telemetry_text(s); }},
      {sample_dir() / "features.json", [](std::string_view s) { parse_feature_sheet_text(s); }},
      {sample_dir() / "fiducials_A.csv", [](std::string_view s) { parse_fiducials_text(s); }},
      {testing::source_dir() / "data" / "fis" / "takeoff_land.json", [](std::string_view s) { parse_fis_config_text(s); }},
      {sample_dir() / "campaign.json",
       [](std::string_view s) { parse_campaign_text(s, testing::sample_dir(), "c", false); }},
  };
  const std::string junk = ",\"{}[]:0-9xe.\n \t";
  for (const auto& [path, parse] : cases) {
    const std::string orig = slurp(path);
    int ok = 0, errors = 0;
    for (int rep = 0; rep < 150; ++rep) {
      std::string s = orig;
      const int edits = 1 + rep % 4;
      for (int k = 0; k < edits; ++k) {
        const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
        switch (rng() % 3) {
          case 0: s[pos] = junk[rng() % junk.size()]; break;
          case 1: s.erase(pos, 1 + rng() % 8); break;
          default: s.insert(pos, 1, junk[rng() % junk.size()]);
        }
      }
      try {
        parse(s);
        ++ok;
      } catch (const Error&) {
        ++errors;
      } catch (const std::exception& e) {
        FAIL_CHECK("untyped exception from " << path.filename().string() << ": " << e.what());
      }
    }
    CHECK(ok + errors == 150);
  }
}
