#include <doctest.h>

#include <cmath>
#include <random>

#include "decisive/cfis.hpp"
#include "decisive/ingest.hpp"
#include "support.hpp"

using namespace decisive;
using namespace decisive::cfis;
using testing::expect_code;

namespace {

const ingest::FisBundle& shipped() {
  static const auto b = ingest::parse_fis_config(testing::source_dir() / "data" / "fis" / "takeoff_land.json").value;
  return b;
}

std::vector<std::filesystem::path> shipped_configs() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(testing::source_dir() / "data" / "fis"))
    if (e.path().extension() == ".json") out.push_back(e.path());
  return out;
}

LinguisticVariable unit_var(std::string name, std::optional<std::string> source = std::nullopt) {
  return {std::move(name), 0, 1, {{"low", {0, 0, 0.5}}, {"medium", {0, 0.5, 1}}, {"high", {0.5, 1, 1}}}, std::move(source)};
}

// strengths recomputed from the memberships
double oracle_eval(const FisConfig& cfg, const Fis& fis, const std::map<std::string, double>& x, double k = 1.0) {
  double num = 0, den = 0;
  for (const auto& r : fis.rules) {
    double w = 1;
    for (const auto& a : r.antecedents) {
      const auto& v = *std::find_if(fis.inputs.begin(), fis.inputs.end(), [&](auto& i) { return i.name == a.variable; });
      double mu = mf_eval(v.find(a.term)->mf, x.at(v.name), v.lo, v.hi);
      w = std::min(w, a.negated ? 1 - mu : mu);
    }
    num += k * w * *cfg.output_value(r.consequent);
    den += k * w;
  }
  return num / den;
}

}  // namespace

TEST_CASE("triangular membership and shoulders") {
  TriangularMf t{1, 2, 4};
  CHECK(mf_eval(t, 0.5, 0, 5) == 0.0);
  CHECK(mf_eval(t, 1.5, 0, 5) == 0.5);
  CHECK(mf_eval(t, 2, 0, 5) == 1.0);
  CHECK(mf_eval(t, 3, 0, 5) == 0.5);
  CHECK(mf_eval({0, 0, 1}, -2, 0, 3) == 1.0);  // clamped, left shoulder
  CHECK(mf_eval({2, 3, 3}, 9, 0, 3) == 1.0);
  CHECK(mf_eval({2, 3, 3}, 2.5, 0, 3) == 0.5);
}

TEST_CASE("hand-traced rule outcomes") {
  const auto& cfg = shipped().config;
  CHECK(fis_eval(cfg, cfg.system("mc"), {{"crashes", 0}, {"completion", 1}, {"rollovers", 0}}) == 1.0);
  CHECK(fis_eval(cfg, cfg.system("mc"), {{"crashes", 3}, {"completion", 0}, {"rollovers", 3}}) == 0.0);
  const auto& comb = cfg.system("combined");
  CHECK(fis_eval(cfg, comb, {{"mc", 1}, {"ec", 1}}) == 1.0);
  CHECK(fis_eval(cfg, comb, {{"mc", 0}, {"ec", 0}}) == 0.0);
  CHECK(fis_eval(cfg, comb, {{"mc", 0.5}, {"ec", 0.5}}) == 0.5);
}

TEST_CASE("label resolution") {
  const auto& cfg = shipped().config;
  const auto& crashes = cfg.system("mc").inputs[0];
  CHECK(resolve_label(cfg, crashes, "Many") == Antecedent{"crashes", false, "high"});
  CHECK(resolve_label(cfg, crashes, "not many") == Antecedent{"crashes", true, "high"});
  CHECK(resolve_label(cfg, crashes, "Not Low") == Antecedent{"crashes", true, "low"});
  CHECK(resolve_label(cfg, crashes, "MEDIUM") == Antecedent{"crashes", false, "medium"});
  expect_code(ErrorCode::UnknownTerm, [&] { resolve_label(cfg, crashes, "Several"); });
}

TEST_CASE("shipped configs stay in range and cover every variable") {
  for (const auto& path : shipped_configs()) {
    CAPTURE(path.filename().string());
    const auto cfg = ingest::parse_fis_config(path).value.config;
    double lo = 1e9, hi = -1e9;
    for (const auto& [name, v] : cfg.outputs) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (const auto& fis : cfg.systems) {
      const auto rep = sweep(cfg, fis, 10000);
      CHECK(rep.points >= 10000);
      CHECK(rep.min_output >= lo);
      CHECK(rep.max_output <= hi);
      CHECK(rep.min_output >= 0.0);
      CHECK(rep.max_output <= 1.0);
      for (const auto& v : fis.inputs) {
        CAPTURE(v.name);
        CHECK(min_coverage(v, 1000) > 0.0);
      }
    }
  }
}

TEST_CASE("weighted average matches recomputation and is scale free") {
  const auto& cfg = shipped().config;
  std::mt19937 rng(51);
  for (const auto& fis : cfg.systems) {
    for (int rep = 0; rep < 300; ++rep) {
      std::map<std::string, double> x;
      for (const auto& v : fis.inputs) x[v.name] = std::uniform_real_distribution<double>(v.lo, v.hi)(rng);
      const auto r = fis_try_eval(cfg, fis, x);
      if (!r) continue;
      CHECK(*r == doctest::Approx(oracle_eval(cfg, fis, x)).epsilon(1e-12));
      CHECK(*r == doctest::Approx(oracle_eval(cfg, fis, x, 7.5)).epsilon(1e-12));
    }
  }
}

TEST_CASE("serial and parallel batch evaluation agree") {
  const auto& cfg = shipped().config;
  for (const auto& fis : cfg.systems) {
    const auto pts = sweep_grid(fis, 5000);
    CHECK(serial::batch_eval(cfg, fis, pts) == parallel::batch_eval(cfg, fis, pts));
  }
}

TEST_CASE("validation errors") {
  FisConfig cfg;
  cfg.test_id = "t";
  cfg.combined = "c";
  Fis c{"c", {unit_var("a")}, {{{{"a", false, "low"}}, "Bad"}}};
  cfg.systems = {c};
  CHECK_NOTHROW(cfg.validate());

  auto bad = cfg;
  bad.systems[0].inputs[0].terms[1].mf = {0.7, 1.8, 1.7};
  expect_code(ErrorCode::MalformedTuple, [&] { bad.validate(); });
  bad = cfg;
  bad.systems[0].rules[0].antecedents[0].term = "huge";
  expect_code(ErrorCode::UnknownTerm, [&] { bad.validate(); });
  bad = cfg;
  bad.systems[0].rules[0].consequent = "Superb";
  expect_code(ErrorCode::UnknownTerm, [&] { bad.validate(); });
  bad = cfg;
  bad.systems[0].inputs.push_back(unit_var("b", "c"));
  expect_code(ErrorCode::CyclicCascade, [&] { bad.validate(); });
  bad = cfg;
  bad.systems[0].inputs[0].source = "nowhere";
  expect_code(ErrorCode::DanglingReference, [&] { bad.validate(); });
  expect_code(ErrorCode::NoRuleFired, [&] { fis_eval(cfg, cfg.systems[0], {{"a", 1.0}}); });
}

TEST_CASE("cascade with the shipped config") {
  const auto& b = shipped();
  AxisInputs in{{"mc", {{"crashes", 0}, {"completion", 1}, {"rollovers", 0}}},
                {"ec", {{"roll", 5}, {"pitch", 5}, {"lateral", 2.4}, {"vertical", 1.2}}}};
  const auto r = cascade_eval(b.config, in);
  CHECK(r.axis.at("mc") == 1.0);
  CHECK(r.axis.at("ec") == 0.5);
  CHECK(r.combined == doctest::Approx(0.75));
  CHECK_FALSE(r.two_stage);
  const double ideal = ideal_combined(b.config, in, "mc", b.ideal.at("mc"));
  CHECK(normalized_test_score(r.combined, ideal) == 1.0);
  CHECK(normalized_test_score(0.3, 0.6) == 0.5);
  expect_code(ErrorCode::ZeroDenominator, [] { normalized_test_score(0.3, 0.0); });
}

TEST_CASE("two-stage combine with a human interaction axis") {
  FisConfig cfg;
  cfg.combined = "comb";
  const std::vector<Rule> pass{{{{"x", false, "low"}}, "Very Bad"}, {{{"x", false, "medium"}}, "Medium"},
                               {{{"x", false, "high"}}, "Very Good"}};
  cfg.systems.push_back({"mc", {unit_var("x")}, pass});
  cfg.systems.push_back({"ec", {unit_var("x")}, pass});
  cfg.systems.push_back({"hi", {unit_var("x")}, pass});
  Fis comb{"comb", {unit_var("m", "mc"), unit_var("e", "ec")}, {}};
  const char* lv[] = {"low", "medium", "high"};
  const char* out[3][3] = {{"Very Bad", "Bad", "Medium"}, {"Bad", "Medium", "Good"}, {"Medium", "Good", "Very Good"}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) comb.rules.push_back({{{"m", false, lv[i]}, {"e", false, lv[j]}}, out[i][j]});
  cfg.systems.push_back(comb);
  cfg.validate();

  AxisInputs in{{"mc", {{"x", 1.0}}}, {"ec", {{"x", 1.0}}}};
  auto one = cascade_eval(cfg, in);
  CHECK_FALSE(one.two_stage);
  CHECK(one.combined == 1.0);
  in["hi"] = {{"x", 0.0}};
  auto two = cascade_eval(cfg, in);
  CHECK(two.two_stage);
  CHECK(two.axis.at("hi") == 0.0);
  CHECK(two.combined == 0.5);  // combine(1, 0)
}

TEST_CASE("predictive mission scores") {
  using S = std::optional<double>;
  struct Row {
    std::vector<S> s;
    double result;
  };
  const S m = std::nullopt;
  const std::vector<Row> rows{{{0.90, 1.0, 0.71, 0.87, 0.76, 0.73}, 0.82}, {{1, 1, 1, 1, 0.5, 0.76}, 0.85},
                              {{0.84, 1, 1, 0.87, m, m}, 0.92},           {{0.83, 0.83, 1, 1, 0.5, 0.79}, 0.80},
                              {{m, m, 0.75, 0.97, 0.65, 0.75}, 0.77},     {{m, m, 0.99, 0.91, m, m}, 0.95},
                              {{0.80, 1.0, 0.82, 0.89, m, 0.85}, 0.87}};
  const char* tests[] = {"corridor", "aperture", "takeoff", "landing", "endurance", "room_clearing"};
  for (const auto& r : rows) {
    std::map<std::string, S> sc;
    double logsum = 0;
    int n = 0;
    for (int i = 0; i < 6; ++i) {
      sc[tests[i]] = r.s[i];
      if (r.s[i]) {
        logsum += std::log(*r.s[i]);
        ++n;
      }
    }
    const double p = predictive_score(sc);
    CHECK(std::abs(p - r.result) <= 0.01);
    CHECK(p == doctest::Approx(std::exp(logsum / n)).epsilon(1e-12));
  }
  expect_code(ErrorCode::AllTestsMissing, [] { predictive_score({{"a", std::nullopt}}); });
  expect_code(ErrorCode::NonPositiveScore, [] { predictive_score({{"a", 0.0}}); });
}

TEST_CASE("predictive score lies between the included scores") {
  std::mt19937 rng(52);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int rep = 0; rep < 300; ++rep) {
    std::map<std::string, std::optional<double>> sc;
    std::map<std::string, double> w;
    double lo = 1, hi = 0;
    for (int i = 0; i < 5; ++i) {
      const std::string id = "t" + std::to_string(i);
      if (i > 0 && rep % (i + 2) == 0) {
        sc[id] = std::nullopt;
      } else {
        const double s = u(rng);
        sc[id] = s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      w[id] = u(rng);
    }
    const double p = predictive_score(sc, w);
    CHECK(p >= lo - 1e-12);
    CHECK(p <= hi + 1e-12);
  }
}
