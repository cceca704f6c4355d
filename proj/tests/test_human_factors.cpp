#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "decisive/human_factors.hpp"
#include "support.hpp"

using namespace decisive;
using namespace decisive::hf;
using testing::expect_code;

namespace {

const std::vector<double> kTable4A{0.116, 0.125, 0.135, 0.143, 0.112, 0.114, 0.054, 0.051, 0.051, 0.099};
const std::vector<double> kTable4B{0.128, 0.138, 0.142, 0.127, 0.106, 0.124, 0.054, 0.052, 0.053, 0.076};

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("attention allocation is a probability vector") {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> u(0.1, 5);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<SeParams> p;
    const int n = 1 + rep % 12;
    for (int i = 0; i < n; ++i) p.push_back({"se" + std::to_string(i), u(rng), u(rng), u(rng), u(rng)});
    const auto f = attention_allocation(p);
    CHECK(std::abs(sum(f) - 1.0) <= 1e-12);
    for (double x : f) {
      CHECK(x > 0.0);
      CHECK(x <= 1.0);
    }
    // ratio check against the raw products
    const double r0 = p[0].saliency * p[0].expectancy * p[0].value / p[0].effort;
    const double rl = p.back().saliency * p.back().expectancy * p.back().value / p.back().effort;
    CHECK(f[0] / f.back() == doctest::Approx(r0 / rl));
  }
  expect_code(ErrorCode::NonPositiveParam, [] { attention_allocation({{"x", 1, 0, 1, 1}}); });
}

TEST_CASE("published attention columns sum to one") {
  CHECK(std::abs(sum(kTable4A) - 1.0) < 5e-4);
  CHECK(std::abs(sum(kTable4B) - 1.0) < 5e-4);
  std::vector<SeParams> p;
  for (std::size_t i = 0; i < kTable4A.size(); ++i) p.push_back({"se" + std::to_string(i), kTable4A[i], 1, 1, 1});
  const auto f = attention_allocation(p);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i] == doctest::Approx(kTable4A[i]).epsilon(1e-3));
}

TEST_CASE("probability of attending") {
  auto r = probability_attending({{"a", 2, 1, 1, 1}, {"b", 0, 5, 1, 1}}, {});
  CHECK(r.p[0] == 3.0);
  CHECK(r.p[1] == 0.0);
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("virtual proportion") {
  // points exactly on y = 0.2 - 0.1 x
  std::vector<std::pair<double, double>> pts{{0.2, 0.18}, {0.5, 0.15}, {0.9, 0.11}};
  CHECK(virtual_proportion(pts, 0.7) == doctest::Approx(0.13));
  CHECK(virtual_proportion(pts, 0.7, VpMode::two_point) == doctest::Approx(0.13));
  std::vector<std::pair<double, double>> bent{{0.0, 0.0}, {0.5, 0.5}, {1.0, 0.0}};
  CHECK(virtual_proportion(bent, 0.25, VpMode::two_point) == doctest::Approx(0.25));
  CHECK(virtual_proportion(bent, 0.25) == doctest::Approx(1.0 / 6.0));
  expect_code(ErrorCode::DegenerateFit, [] { virtual_proportion({{0.5, 0.1}, {0.5, 0.2}}, 0.3); });

  // followed by renormalization the vector is a probability vector again
  std::mt19937 rng(62);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<std::pair<double, double>> present;
    std::vector<double> w;
    for (int i = 0; i < 6; ++i) {
      present.push_back({u(rng), u(rng) / 6});
      w.push_back(present.back().second);
    }
    w.push_back(std::max(0.0, virtual_proportion(present, u(rng))));
    const auto r = renormalize(w);
    CHECK(std::abs(sum(r) - 1.0) <= 1e-12);
    for (double x : r) CHECK(x >= 0.0);
  }
}

TEST_CASE("SAGAT scoring keeps the best perception") {
  std::vector<SagatResponse> r{{"P1", "q1", "alt", 1, true, Perception::detected},
                               {"P1", "q2", "alt", 2, true, Perception::comprehended},
                               {"P1", "q3", "bat", 1, false, Perception::undetected},
                               {"P2", "q1", "alt", 1, false, Perception::undetected}};
  auto s = sagat_scores(r);
  CHECK(s.correct_rate.at("alt") == doctest::Approx(2.0 / 3.0));
  CHECK(s.correct_rate.at("bat") == 0.0);
  CHECK(s.perception.at("P1").at("alt") == 1.0);
  CHECK(s.perception.at("P2").at("alt") == 0.0);

  auto g = osa_groups({{"alt", 0.75}, {"bat", 0.25}}, s, {{"all", {"alt", "bat"}}});
  REQUIRE(g.size() == 1);
  CHECK(g[0].participants == 2);
  CHECK(g[0].mean == doctest::Approx(0.375));
}

TEST_CASE("OSA stays in the unit interval") {
  std::mt19937 rng(63);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<double> w(8), p(8);
    for (auto& x : w) x = u(rng) + 1e-3;
    for (auto& x : p) x = u(rng);
    const double o = osa(w, p);
    CHECK(o >= 0.0);
    CHECK(o <= 1.0);
  }
  CHECK(osa({1, 1}, {0, 1}) == 0.5);
  expect_code(ErrorCode::LengthMismatch, [] { osa({1}, {0, 1}); });
}

TEST_CASE("trust pipeline") {
  SurveyDataset d;
  const int scores_a[] = {4, 4, 5, 4, 4, 3, 4, 1};
  const int scores_b[] = {6, 6, 5, 7, 6, 6, 5, 6};
  for (int i = 0; i < 8; ++i) {
    d.rows.push_back({"A" + std::to_string(i), Instrument::ctpa, "C1", scores_a[i], true, "manual"});
    d.rows.push_back({"B" + std::to_string(i), Instrument::ctpa, "C1", scores_b[i], true, "assisted"});
  }
  d.rows.push_back({"X", Instrument::ctpa, "C1", 7, false, "manual"});
  auto r = trust_pipeline(d, "manual", "assisted", {{"A0", "assisted", ""}, {"X", "manual", ""}, {"B1", "assisted", ""}});
  REQUIRE(r.items.size() == 1);
  CHECK(r.excluded_participants == std::vector<std::string>{"X"});
  CHECK(r.items[0].removed_a == 1);  // the 1 is an outlier
  CHECK(r.items[0].n_a == 7);
  CHECK(r.items[0].mean_a == doctest::Approx(4.0));
  CHECK(r.items[0].mw.u_a + r.items[0].mw.u_b == 7.0 * r.items[0].n_b);
  CHECK(r.preference_counts.at("assisted") == 2);
  CHECK_FALSE(r.preference_counts.count("manual"));
  CHECK_FALSE(r.warnings.empty());  // 1 of 8 removed
  expect_code(ErrorCode::EmptyCondition, [&] { trust_pipeline(d, "manual", "night"); });
}
