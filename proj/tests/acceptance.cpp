// Acceptance checks, one PASS/FAIL line per criterion.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "decisive/cfis.hpp"
#include "decisive/cli.hpp"
#include "decisive/collision.hpp"
#include "decisive/csv.hpp"
#include "decisive/human_factors.hpp"
#include "decisive/ingest.hpp"
#include "decisive/mapping.hpp"
#include "decisive/nav.hpp"
#include "decisive/ncap.hpp"
#include "decisive/report.hpp"
#include "decisive/stats.hpp"

namespace fs = std::filesystem;
using namespace decisive;

namespace {

const fs::path kRoot = DECISIVE_SOURCE_DIR;
const fs::path kGolden = DECISIVE_GOLDEN_DIR;
const fs::path kSample = kRoot / "data" / "sample";

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(12);
    s << what << ": got " << got << ", want " << want << " +/- " << tol;
    expect(std::abs(got - want) <= tol, s.str());
  }
};

bool within(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---------------------------------------------------------------------------

void ncap_example(Check& c) {
  const auto table = ingest::parse_feature_sheet(kSample / "features.json").value;
  const auto uni = ncap::evaluate(table, {});
  c.near(uni.entries[0].n_cp, 2.48, 0.01, "N_CP(A) uniform");
  c.near(uni.entries[1].relative_distance, 2.01, 0.01, "relative distance B, uniform");
  const auto w = ingest::parse_weights(kSample / "weights_user.json").value;
  const auto user = ncap::evaluate(table, {ncap::WeightKind::explicit_weights, w});
  c.near(user.entries[0].relative_distance, 2.49, 0.01, "relative distance A, user weights");
}

void predictive_rows(Check& c) {
  const auto rows = ingest::parse_scores(kSample / "predictive_scores.csv").value;
  std::map<std::string, std::map<std::string, std::optional<double>>> by_suas;
  for (const auto& r : rows) by_suas[r.suas_id][r.test_id] = r.score;
  const std::map<std::string, double> want{{"A", 0.82}, {"B", 0.85}, {"C", 0.92}, {"D", 0.80},
                                           {"E", 0.77}, {"F", 0.95}, {"G", 0.87}};
  c.expect(by_suas.size() == 7, "seven sUAS rows");
  for (const auto& [id, v] : want) {
    c.expect(by_suas.count(id) == 1, "row " + id + " present");
    if (by_suas.count(id)) c.near(cfis::predictive_score(by_suas[id]), v, 0.01, "predictive score " + id);
  }
}

void completion_examples(Check& c) {
  c.near(stats::completion_confidence(10, 0, 0.85), 0.803, 0.001, "confidence (10, 0, 0.85)");
  c.near(stats::completion_confidence(5, 0, 0.70), 0.832, 0.001, "confidence (5, 0, 0.70)");
}

void collision_numerics(Check& c) {
  {
    std::vector<PoseSample> s;
    for (int i = 0; i <= 20; ++i) {
      const double t = i / 20.0;
      s.push_back({t, {2.0 * t - 0.5 * 1.96 * t * t, 0, 1}, {}, {}});
    }
    c.near(collision::masi(Trajectory(s)).masi, 0.2, 1e-6, "MASI at 1.96 m/s^2");
  }
  {
    std::vector<PoseSample> s;
    double x = 0;
    for (int i = 0; i <= 40; ++i) {
      const double t = i / 20.0;
      const double v = i <= 20 ? 1.0 : 0.5;
      s.push_back({t, {x, 0, 1}, Vec3{v, 0, 0}, {}});
      x += v / 20.0;
    }
    c.near(collision::max_delta_v(Trajectory(s), 1.0), 0.5, 1e-6, "Max Delta-V of a 0.5 m/s step");
  }
  const auto oa = collision::aggregate_oa({{true, 0, 0, 1.1},
                                           {true, 0, 0, 0.6},
                                           {false, 0.32, 0.5, 0.8},
                                           {false, 0.24, 0.2, 0.8},
                                           {false, 0.26, 0.8, 0.9}});
  c.near(oa.mean_min_distance, 0.164, 1e-12, "mean minimum distance");
  c.near(oa.mean_min_ttc, 0.3, 1e-12, "mean minimum TTC");
  const auto sev = collision::aggregate_severity({0.17, 0.2, 0.14, 0.15, 0.16}, {0.7, 0.8, 1.2, 0.8, 1.1});
  c.near(sev.mean_masi, 0.164, 1e-12, "mean MASI");
  c.near(sev.mean_delta_v, 0.92, 1e-12, "mean Max Delta-V");
}

double dense_distance(Vec3 p, const std::vector<Vec3>& v) {
  double best = 1e300;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double len = (v[i + 1] - v[i]).norm();
    const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.001)));
    for (int k = 0; k <= steps; ++k)
      best = std::min(best, (p - (v[i] + (static_cast<double>(k) / steps) * (v[i + 1] - v[i]))).norm());
  }
  return best;
}

void path_deviation(Check& c) {
  nav::ReferencePath line({{0, 0, 1}, {10, 0, 1}});
  for (double off : {0.0, 0.1, 0.25, 1.3}) {
    std::vector<PoseSample> s;
    for (int i = 0; i < 100; ++i) s.push_back({i * 0.1, {i * 0.1, 0, 1 + off}, {}, {}});
    c.near(nav::average_deviation(Trajectory(s), line), off, 1e-9, "AD of a constant offset");
  }
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> u(-5, 5);
  int bad = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<Vec3> v;
    for (int i = 0; i < 2 + rep % 4; ++i) v.push_back({u(rng), u(rng), u(rng) * 0.2});
    const Vec3 p{u(rng), u(rng), u(rng)};
    if (!within(nav::point_path_deviation(p, nav::ReferencePath(v)), dense_distance(p, v), 1e-3)) ++bad;
  }
  c.expect(bad == 0, std::to_string(bad) + " of 1000 random cases off the dense oracle");
}

double pair_u(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0;
  for (double x : a)
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  return u;
}

void mann_whitney(Check& c) {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> val(1, 7);
  int mismatched = 0, sums = 0;
  for (int n1 = 1; n1 <= 6; ++n1)
    for (int n2 = 1; n2 <= 6; ++n2)
      for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> a(n1), b(n2), pool;
        for (auto& x : a) x = val(rng);
        for (auto& x : b) x = val(rng);
        pool = a;
        pool.insert(pool.end(), b.begin(), b.end());
        const double obs = pair_u(a, b);
        double lo = 0, hi = 0, total = 0;
        for (unsigned mask = 0; mask < (1u << (n1 + n2)); ++mask) {
          if (__builtin_popcount(mask) != n1) continue;
          std::vector<double> x, y;
          for (int i = 0; i < n1 + n2; ++i) (mask >> i & 1u ? x : y).push_back(pool[i]);
          const double uu = pair_u(x, y);
          total += 1;
          lo += uu <= obs;
          hi += uu >= obs;
        }
        const auto r = stats::mann_whitney(a, b);
        if (!r.exact || !within(r.p_two_sided, std::min(1.0, 2 * std::min(lo, hi) / total), 1e-12)) ++mismatched;
        if (r.u_a + r.u_b != n1 * n2) ++sums;
      }
  c.expect(mismatched == 0, std::to_string(mismatched) + " exact p values differ from enumeration");
  c.expect(sums == 0, std::to_string(sums) + " cases with U1 + U2 != n1 n2");
}

void fis_properties(Check& c) {
  int configs = 0;
  for (const auto& e : fs::directory_iterator(kRoot / "data" / "fis")) {
    if (e.path().extension() != ".json") continue;
    ++configs;
    const auto cfg = ingest::parse_fis_config(e.path()).value.config;
    for (const auto& fis : cfg.systems) {
      const auto rep = cfis::sweep(cfg, fis, 10000);
      c.expect(rep.points >= 10000, fis.id + ": sweep has fewer than 10^4 points");
      c.expect(rep.min_output >= 0.0 && rep.max_output <= 1.0, fis.id + ": output leaves [0,1]");
      for (const auto& v : fis.inputs)
        c.expect(cfis::min_coverage(v, 1000) > 0.0, fis.id + "." + v.name + ": coverage gap");
    }
    if (cfg.find_system("mc")) {
      const auto& mc = cfg.system("mc");
      c.expect(cfis::fis_eval(cfg, mc, {{"crashes", 0}, {"completion", 1}, {"rollovers", 0}}) == 1.0, "MC best case");
      c.expect(cfis::fis_eval(cfg, mc, {{"crashes", 3}, {"completion", 0}, {"rollovers", 3}}) == 0.0, "MC worst case");
    }
    const auto& comb = cfg.system(cfg.combined);
    c.expect(cfis::fis_eval(cfg, comb, {{"mc", 0.5}, {"ec", 0.5}}) == 0.5, "combined medium case");
  }
  c.expect(configs > 0, "no shipped FIS configs");
}

void attention(Check& c) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(0.1, 5);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<hf::SeParams> p;
    for (int i = 0; i < 10; ++i) p.push_back({"se", u(rng), u(rng), u(rng), u(rng)});
    const auto f = hf::attention_allocation(p);
    double s = 0;
    for (double x : f) s += x;
    c.expect(within(s, 1.0, 1e-12), "attention allocation sum");
    std::vector<double> pv(10);
    for (auto& x : pv) x = u(rng) / 5;
    const double o = hf::osa(f, pv);
    c.expect(o >= 0.0 && o <= 1.0, "OSA outside [0,1]");
  }
  const std::vector<double> a{0.116, 0.125, 0.135, 0.143, 0.112, 0.114, 0.054, 0.051, 0.051, 0.099};
  const std::vector<double> b{0.128, 0.138, 0.142, 0.127, 0.106, 0.124, 0.054, 0.052, 0.053, 0.076};
  double sa = 0, sb = 0;
  for (double x : a) sa += x;
  for (double x : b) sb += x;
  c.expect(report::format_number(sa, 3) == "1.000", "Table 4 column A sums to " + report::format_number(sa, 3));
  c.expect(report::format_number(sb, 3) == "1.000", "Table 4 column B sums to " + report::format_number(sb, 3));
}

void mapping_checks(Check& c) {
  const std::vector<std::tuple<double, int, std::string>> fid{{11, 2, "M"}, {8, 2, "L"},  {35, 7, "H"}, {5, 2, "L"},
                                                              {12, 3, "M"}, {7, 2, "L"},  {27, 5, "H"}, {7, 2, "L"},
                                                              {16, 3, "M"}, {10, 2, "L"}};
  for (std::size_t i = 0; i < fid.size(); ++i) {
    const auto& [t, n, r] = fid[i];
    c.expect(mapping::to_string(mapping::difficulty_rating(t, n)) == r,
             std::string("fiducial ") + char('A' + i) + " rating");
  }
  std::mt19937 rng(88);
  std::uniform_real_distribution<double> u(0, 25);
  std::normal_distribution<double> noise(0, 0.2);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<mapping::FiducialGroundTruth> truth;
    std::vector<mapping::FiducialObservation> exact, noisy;
    std::vector<Vec2> gt, mp;
    for (int i = 0; i < 6; ++i) {
      const std::string id(1, char('A' + i));
      const Vec2 g{u(rng), u(rng)};
      truth.push_back({id, g, 5, 2});
      exact.push_back({id, 1, Vec2{g.x * 4.5, g.y * 4.5}, mapping::MappedState::complete});
      mp.push_back({g.x * 2 + noise(rng), g.y * 2 + noise(rng)});
      gt.push_back(g);
      noisy.push_back({id, 1, mp.back(), mapping::MappedState::complete});
    }
    c.expect(mapping::global_error(exact, truth).error_cm <= 1e-9, "scaled identical map has error");
    std::vector<double> dm, dg;
    for (std::size_t i = 0; i < mp.size(); ++i)
      for (std::size_t j = i + 1; j < mp.size(); ++j) {
        dm.push_back(std::hypot(mp[i].x - mp[j].x, mp[i].y - mp[j].y));
        dg.push_back(std::hypot(gt[i].x - gt[j].x, gt[i].y - gt[j].y));
      }
    auto sse = [&](double s) {
      double e = 0;
      for (std::size_t k = 0; k < dm.size(); ++k) e += (s * dm[k] - dg[k]) * (s * dm[k] - dg[k]);
      return e;
    };
    double lo = 0, hi = 100;
    for (int it = 0; it < 300; ++it) {
      const double x1 = lo + (hi - lo) / 3, x2 = hi - (hi - lo) / 3;
      if (sse(x1) < sse(x2)) hi = x2;
      else lo = x1;
    }
    double err = 0;
    for (std::size_t k = 0; k < dm.size(); ++k) err += std::abs((lo + hi) / 2 * dm[k] - dg[k]);
    c.near(mapping::global_error(noisy, truth).error_cm, 100 * err / dm.size(), 1e-6, "global error vs brute force");
  }
}

// ---------------------------------------------------------------------------

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

void sample_campaign(Check& c) {
  const fs::path prev = fs::current_path();
  fs::current_path(kSample);
  std::set<std::string> ran_ok;
  std::ifstream cases(kGolden / "cases.txt");
  std::string line;
  int compared = 0;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string name, a;
    std::vector<std::string> args;
    ss >> name;
    while (ss >> a) args.push_back(a);
    if (args.front() == "report")
      for (std::size_t i = 1; i < args.size(); ++i) args[i] = (kGolden / args[i]).string();
    const auto r = cli(args);
    c.expect(r.code == 0, name + " exited " + std::to_string(r.code));
    if (r.code == 0) ran_ok.insert(args.front());
    const fs::path g = kGolden / name;
    c.expect(fs::exists(g) && csv::read_file(g) == r.out, name + " differs from golden");
    c.expect(cli(args).out == r.out, name + " not byte-stable across runs");
    ++compared;
  }
  for (const char* sub : {"validate", "metrics", "ncap", "cfis", "trust", "sa", "plot"})
    c.expect(ran_ok.count(sub) == 1, std::string(sub) + " did not run cleanly");

  // rendered CSV read back gives the same cells as the Markdown
  for (const char* g : {"nav", "collision", "field", "mapping"}) {
    const auto csv_out = cli({"metrics", "--test", g, "--format", "csv", "campaign.json"}).out;
    const auto md_out = cli({"metrics", "--test", g, "campaign.json"}).out;
    std::ostringstream rebuilt;
    bool first = true;
    for (const auto& t : report::parse_csv_document(csv_out)) {
      if (!first) rebuilt << "\n";
      first = false;
      rebuilt << "## " << t.title << "\n\n|";
      for (const auto& h : t.header) rebuilt << " " << h << " |";
      rebuilt << "\n";
      for (const auto& row : t.rows) {
        rebuilt << "|";
        for (const auto& cell : row) rebuilt << " " << cell << " |";
        rebuilt << "\n";
      }
    }
    // drop the alignment rows before comparing
    std::istringstream in(md_out);
    std::ostringstream stripped;
    while (std::getline(in, line))
      if (line.rfind("|---", 0) != 0) stripped << line << "\n";
    c.expect(rebuilt.str() == stripped.str(), std::string(g) + " CSV does not reproduce the rendered values");
  }
  c.expect(compared > 0, "no golden cases");
  fs::current_path(prev);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"NCAP example coordinates and distances", ncap_example},
      {"predictive mission score rows", predictive_rows},
      {"completion confidence examples", completion_examples},
      {"MASI, Max Delta-V and OA/CR averages", collision_numerics},
      {"path deviation offset and dense-sampling oracle", path_deviation},
      {"Mann-Whitney exact p vs enumeration", mann_whitney},
      {"FIS range, hand traces and term coverage", fis_properties},
      {"attention allocation and OSA bounds", attention},
      {"fiducial difficulty and global error", mapping_checks},
      {"sample campaign end to end", sample_campaign},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.failures.empty() ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << "\n";
    for (const auto& f : c.failures) std::cout << "    " << f << "\n";
    if (!c.failures.empty()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
