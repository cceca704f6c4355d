#include "decisive/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "decisive/campaign.hpp"
#include "decisive/cfis.hpp"
#include "decisive/collision.hpp"
#include "decisive/csv.hpp"
#include "decisive/error.hpp"
#include "decisive/field.hpp"
#include "decisive/human_factors.hpp"
#include "decisive/ingest.hpp"
#include "decisive/mapping.hpp"
#include "decisive/nav.hpp"
#include "decisive/ncap.hpp"
#include "decisive/report.hpp"
#include "decisive/stats.hpp"

namespace decisive::cli {

namespace {

using report::Cell;
using report::Empty;
using report::Glyph;
using report::ReportTable;
namespace fs = std::filesystem;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<double> kConfidenceP0 = {0.70, 0.85};

struct Options {
  std::string out_path;
  std::string format = "md";
  bool ascii = false;
  long long seed = 0;
  std::string weights = "uniform";
  std::vector<std::string> fis;
  std::string features;
  std::string scores;
  std::string test_weights;
  std::string seev;
  std::string sagat;
  std::string groups;
  std::string model = "aam";
  std::string survey;
  std::string conditions;
  std::string preferences;
  std::string test;
  std::string kind;
  std::vector<std::string> trials;
  std::vector<std::string> inputs;
};

class Context {
 public:
  Context(std::ostream& out, std::ostream& err, bool color) : out_(out), err_(err), color_(color) {}

  void warn(const std::string& source, const std::string& where, const std::string& msg) {
    err_ << paint("warning", "33") << ": " << source;
    if (!where.empty()) err_ << ": " << where;
    err_ << ": " << msg << '\n';
  }
  void warn(const ingest::ParseReport& r) {
    for (const auto& w : r.warnings) warn(r.source, w.where, w.message);
  }
  void warn_all(const std::string& source, const std::vector<std::string>& msgs) {
    for (const auto& m : msgs) warn(source, "", m);
  }
  void error(const std::string& msg) { err_ << paint("error", "31") << ": " << msg << '\n'; }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::string paint(const std::string& text, const char* code) const {
    return color_ ? "\x1b[" + std::string(code) + "m" + text + "\x1b[0m" : text;
  }
  std::ostream& out_;
  std::ostream& err_;
  bool color_;
};

template <class T>
T take(Context& ctx, ingest::Parsed<T>&& p) {
  ctx.warn(p.report);
  return std::move(p.value);
}

void emit(Context& ctx, const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    ctx.out() << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write '" + o.out_path + "'");
  f << text;
  if (!f) throw Error(ErrorCode::Io, "write to '" + o.out_path + "' failed");
}

report::Format format_of(const Options& o) {
  const auto f = report::parse_format(o.format);
  if (!f) throw Usage("unknown format '" + o.format + "' (md, csv, json)");
  return *f;
}

void emit_tables(Context& ctx, const Options& o, const std::vector<ReportTable>& tables) {
  emit(ctx, o, report::render_document(tables, format_of(o), {o.ascii}));
}

const std::string& single_input(const Options& o, const char* what) {
  if (o.inputs.size() != 1) throw Usage(std::string("expected one ") + what);
  return o.inputs.front();
}

Cell num(std::optional<double> v) { return v ? Cell{*v} : Cell{Empty{}}; }
Cell txt(std::string s) { return Cell{std::move(s)}; }

// ---------------------------------------------------------------------------
// Campaign helpers

struct Loaded {
  Campaign campaign;
  std::map<std::string, Trajectory> telemetry;  // by trial id

  const Trajectory* traj(const TrialRecord& t) const {
    const auto it = telemetry.find(t.trial_id);
    return it == telemetry.end() ? nullptr : &it->second;
  }
};

Loaded load_campaign(Context& ctx, const std::string& path) {
  Loaded l;
  l.campaign = take(ctx, ingest::parse_campaign(path));
  for (const auto& t : l.campaign.trials) {
    if (t.telemetry) l.telemetry.emplace(t.trial_id, take(ctx, ingest::parse_telemetry(l.campaign.resolve(*t.telemetry))));
  }
  return l;
}

using GroupKey = std::pair<std::string, std::string>;  // test id, sUAS id

// Trials of the given types grouped by (test, sUAS) in first-appearance order.
std::vector<std::pair<GroupKey, std::vector<const TrialRecord*>>> group_trials(const Campaign& c,
                                                                               const std::set<TestType>& types) {
  std::vector<std::pair<GroupKey, std::vector<const TrialRecord*>>> out;
  for (const auto& t : c.trials) {
    const auto* def = c.find_test(t.test_id);
    if (!def || !types.count(def->type)) continue;
    const GroupKey key{t.test_id, t.suas_id};
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) { return g.first == key; });
    if (it == out.end()) {
      out.push_back({key, {}});
      it = out.end() - 1;
    }
    it->second.push_back(&t);
  }
  return out;
}

std::optional<ReportTable> completion_table(const Campaign& c, const std::set<TestType>& types) {
  const auto groups = group_trials(c, types);
  if (groups.empty()) return std::nullopt;
  ReportTable t;
  t.title = "Completion";
  t.text("Test").text("sUAS").number("Successes", 0).number("Failures", 0).number("Rate (%)", 1);
  for (double p0 : kConfidenceP0) t.number("Confidence p0=" + report::format_number(p0, 2) + " (%)", 1);
  for (const auto& [key, trials] : groups) {
    int s = 0, f = 0;
    for (const auto* tr : trials) (tr->outcome == Outcome::success ? s : f) += 1;
    const auto r = stats::completion(s, f, kConfidenceP0);
    std::vector<Cell> row{txt(key.first), txt(key.second), double(s), double(f), 100.0 * r.rate};
    for (const auto& [p0, conf] : r.confidence_at) row.push_back(100.0 * conf);
    t.add(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------
// metrics --test nav

std::vector<ReportTable> nav_tables(Context& ctx, const Loaded& l) {
  const auto& c = l.campaign;
  std::vector<ReportTable> tables;

  const std::set<TestType> path_types = {TestType::position_accuracy, TestType::wall_following, TestType::corridor};
  ReportTable flights;
  flights.title = "Path deviation per flight";
  flights.text("Trial").text("Test").text("sUAS").number("AD (m)", 3).number("Max deviation (m)", 3).number("Speed (m/s)", 2);
  ReportTable summary;
  summary.title = "Path deviation";
  summary.text("Test").text("sUAS").number("Flights", 0).number("Mean AD (m)", 3).number("Std AD (m)", 3);
  for (const auto& [key, trials] : group_trials(c, path_types)) {
    const auto* def = c.find_test(key.first);
    if (!def->reference_path) {
      ctx.warn(key.first, "", "no reference path, deviation skipped");
      continue;
    }
    std::vector<double> ads;
    for (const auto* tr : trials) {
      const auto* traj = l.traj(*tr);
      if (!traj) {
        ctx.warn(tr->trial_id, "", "no telemetry, deviation skipped");
        continue;
      }
      const auto series = nav::deviation_series(*traj, *def->reference_path);
      const double ad = nav::average_deviation(*traj, *def->reference_path);
      std::optional<double> speed;
      if (def->path_length_m && tr->duration_min) speed = nav::traversal_speed(*def->path_length_m, *tr->duration_min);
      flights.add({txt(tr->trial_id), txt(key.first), txt(key.second), ad,
                   *std::max_element(series.begin(), series.end()), num(speed)});
      ads.push_back(ad);
    }
    if (ads.empty()) continue;
    const auto s = nav::deviation_summary_from_ads(ads);
    ctx.warn_all(key.first + "/" + key.second, s.warnings);
    summary.add({txt(key.first), txt(key.second), double(ads.size()), s.mean_ad, s.std_ad});
  }
  if (!flights.rows.empty()) {
    tables.push_back(flights);
    tables.push_back(summary);
  }

  ReportTable wp;
  wp.title = "Waypoint landing";
  wp.text("Test").text("sUAS").number("Landings", 0).number("Accuracy (m)", 3).number("Precision (m)", 3)
      .number("Tape accuracy (m)", 3).number("Tape precision (m)", 3);
  for (const auto& [key, trials] : group_trials(c, {TestType::waypoint})) {
    const auto* def = c.find_test(key.first);
    std::vector<double> errs, tape;
    for (const auto* tr : trials) {
      std::optional<Vec3> final_pos = tr->measurements.final_position;
      if (!final_pos) {
        if (const auto* traj = l.traj(*tr)) final_pos = (*traj)[traj->size() - 1].pos;
      }
      if (final_pos && def->waypoint) errs.push_back(nav::waypoint_error(*final_pos, *def->waypoint));
      if (tr->measurements.tape_error_m) tape.push_back(*tr->measurements.tape_error_m);
    }
    if (errs.empty() && tape.empty()) continue;
    std::optional<nav::WaypointSummary> a, b;
    if (!errs.empty()) a = nav::waypoint_summary(errs);
    if (!tape.empty()) b = nav::waypoint_summary(tape);
    wp.add({txt(key.first), txt(key.second), double(trials.size()), num(a ? std::optional(a->accuracy) : std::nullopt),
            num(a ? std::optional(a->precision) : std::nullopt), num(b ? std::optional(b->accuracy) : std::nullopt),
            num(b ? std::optional(b->precision) : std::nullopt)});
  }
  if (!wp.rows.empty()) tables.push_back(wp);

  ReportTable ap;
  ap.title = "Aperture";
  ap.text("Test").text("sUAS").number("Trials", 0);
  const ApertureTier tiers[] = {ApertureTier::A1, ApertureTier::A2, ApertureTier::A3, ApertureTier::B1};
  for (auto tier : tiers) ap.number(std::string(to_string(tier)) + " (%)", 0);
  for (const auto& [key, trials] : group_trials(c, {TestType::aperture})) {
    std::map<ApertureTier, int> counts;
    int n = 0;
    for (const auto* tr : trials) {
      std::optional<ApertureTier> tier = tr->aperture_tier;
      if (const auto& f = tr->measurements.aperture) {
        const auto derived = nav::classify_aperture_trial(f->passed, f->contact, f->ripped);
        if (tier && *tier != derived) {
          throw Error(ErrorCode::InconsistentFlags, "trial '" + tr->trial_id + "' tier " + std::string(to_string(*tier)) +
                                                        " disagrees with its flags (" + std::string(to_string(derived)) + ")");
        }
        tier = derived;
      }
      if (!tier) continue;
      ++counts[*tier];
      ++n;
    }
    if (n == 0) continue;
    std::vector<Cell> row{txt(key.first), txt(key.second), double(n)};
    for (auto tier : tiers) row.push_back(100.0 * counts[tier] / n);
    ap.add(std::move(row));
  }
  if (!ap.rows.empty()) tables.push_back(ap);

  if (auto t = completion_table(c, {TestType::position_accuracy, TestType::wall_following, TestType::waypoint,
                                    TestType::aperture, TestType::corridor})) {
    tables.push_back(*t);
  }
  return tables;
}

// ---------------------------------------------------------------------------
// metrics --test collision

std::vector<ReportTable> collision_tables(Context& ctx, const Loaded& l) {
  const auto& c = l.campaign;
  std::vector<ReportTable> tables;

  ReportTable oa;
  oa.title = "Obstacle avoidance per flight";
  oa.text("Trial").text("Test").text("sUAS").text("Collision").number("Min distance (m)", 3).number("Min TTC (s)", 2)
      .number("Max deceleration (m/s^2)", 2);
  ReportTable oa_sum;
  oa_sum.title = "Obstacle avoidance";
  oa_sum.text("Test").text("sUAS").number("Flights", 0).number("Collisions", 0).number("Mean min distance (m)", 3)
      .number("Mean min TTC (s)", 2).number("Mean max deceleration (m/s^2)", 2);
  for (const auto& [key, trials] : group_trials(c, {TestType::obstacle_avoidance})) {
    const auto* def = c.find_test(key.first);
    std::vector<collision::OaFlight> flights;
    for (const auto* tr : trials) {
      collision::OaFlight f;
      f.collided = tr->collisions > 0;
      const auto* traj = l.traj(*tr);
      if (traj) f.max_decel = collision::masi(*traj).max_decel_mps2;
      if (!f.collided) {
        if (!traj || !def->obstacle) {
          ctx.warn(tr->trial_id, "", "needs telemetry and an obstacle, skipped");
          continue;
        }
        f.min_distance = collision::distance_to_obstacle(*traj, *def->obstacle).min;
        try {
          f.min_ttc = collision::min_ttc(*traj, *def->obstacle);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::AllStationary) throw;
          ctx.warn(tr->trial_id, "", "never closing on the obstacle, TTC is unbounded");
          f.min_ttc = std::numeric_limits<double>::infinity();
        }
      }
      oa.add({txt(tr->trial_id), txt(key.first), txt(key.second), txt(f.collided ? "x" : ""), f.min_distance, f.min_ttc,
              num(f.max_decel)});
      flights.push_back(f);
    }
    if (flights.empty()) continue;
    const auto agg = collision::aggregate_oa(flights);
    oa_sum.add({txt(key.first), txt(key.second), double(agg.flights), double(agg.collisions), agg.mean_min_distance,
                agg.mean_min_ttc, num(agg.mean_max_decel)});
  }
  if (!oa.rows.empty()) {
    tables.push_back(oa);
    tables.push_back(oa_sum);
  }

  ReportTable cr;
  cr.title = "Collision resilience per flight";
  cr.text("Trial").text("Test").text("sUAS").number("Collision time (s)", 2).number("MASI", 3).number("Max Delta-V (m/s)", 2);
  ReportTable cr_sum;
  cr_sum.title = "Collision resilience";
  cr_sum.text("Test").text("sUAS").number("Flights", 0).number("Mean MASI", 3).number("Mean Max Delta-V (m/s)", 2);
  for (const auto& [key, trials] : group_trials(c, {TestType::collision_resilience})) {
    std::vector<double> masis, dvs;
    for (const auto* tr : trials) {
      const auto* traj = l.traj(*tr);
      if (!traj) {
        ctx.warn(tr->trial_id, "", "no telemetry, severity skipped");
        continue;
      }
      auto tc = tr->t_collision_s;
      if (!tc) {
        tc = collision::suggest_collision_time(*traj);
        if (!tc) {
          ctx.warn(tr->trial_id, "", "no collision time recorded or detected, skipped");
          continue;
        }
        ctx.warn(tr->trial_id, "", "collision time not recorded, using detected t = " + report::format_number(*tc, 2) + " s");
      }
      const double m = collision::masi(*traj).masi;
      const double dv = collision::max_delta_v(*traj, *tc);
      cr.add({txt(tr->trial_id), txt(key.first), txt(key.second), *tc, m, dv});
      masis.push_back(m);
      dvs.push_back(dv);
    }
    if (masis.empty()) continue;
    const auto agg = collision::aggregate_severity(masis, dvs);
    cr_sum.add({txt(key.first), txt(key.second), double(masis.size()), agg.mean_masi, agg.mean_delta_v});
  }
  if (!cr.rows.empty()) {
    tables.push_back(cr);
    tables.push_back(cr_sum);
  }

  auto categories = [&](TestType type, collision::CategoryKind kind, const std::string& title) {
    std::map<std::string, std::vector<collision::CategorizedTrial>> by_suas;
    for (const auto& tr : c.trials) {
      const auto* def = c.find_test(tr.test_id);
      if (def->type != type || !def->obstacle) continue;
      if (kind == collision::CategoryKind::oa ? !tr.oa_category : !tr.cr_category) continue;
      by_suas[tr.suas_id].push_back({tr.trial_id, def->obstacle->material, tr.oa_category, tr.cr_category});
    }
    for (const auto& [suas, trials] : by_suas) {
      const auto dist = collision::category_distribution(trials, kind);
      ReportTable t;
      t.title = title + " (" + suas + ")";
      t.text("Obstacle").number("Trials", 0);
      for (const auto& cat : dist.categories) t.number(cat + " (%)", 0);
      for (const auto& row : dist.rows) {
        std::vector<Cell> cells{txt(std::string(collision::obstacle_label(row.obstacle))), double(row.trials)};
        for (double p : row.percent) cells.push_back(p);
        t.add(std::move(cells));
      }
      tables.push_back(std::move(t));
    }
  };
  categories(TestType::obstacle_avoidance, collision::CategoryKind::oa, "OA categories");
  categories(TestType::collision_resilience, collision::CategoryKind::cr, "CR categories");

  if (auto t = completion_table(c, {TestType::obstacle_avoidance, TestType::collision_resilience})) tables.push_back(*t);
  return tables;
}

// ---------------------------------------------------------------------------
// metrics --test field

std::string obstruction_text(const std::vector<Obstruction>& obs) {
  if (obs.empty()) return "none";
  std::string s;
  for (const auto& o : obs) s += (s.empty() ? "" : " + ") + std::to_string(o.count) + " " + o.material;
  return s;
}

std::string nlos_max_text(const field::NlosMax& m) {
  if (m.distance_m <= 0.0) return "0";
  return report::format_number(m.distance_m, 0) + " m, " + obstruction_text(m.obstructions);
}

std::vector<ReportTable> field_tables(Context& ctx, const Loaded& l) {
  const auto& c = l.campaign;
  std::vector<ReportTable> tables;

  ReportTable en;
  en.title = "Endurance";
  en.text("Trial").text("Test").text("sUAS").number("Laps", 0).number("Duration (min)", 1).number("Distance (m)", 0)
      .number("Average speed (m/s)", 2);
  for (const auto& [key, trials] : group_trials(c, {TestType::endurance})) {
    for (const auto* tr : trials) {
      if (!tr->laps || !tr->duration_min) {
        ctx.warn(tr->trial_id, "", "needs laps and duration_min, skipped");
        continue;
      }
      const auto e = field::endurance_metrics(*tr->laps, *tr->duration_min);
      en.add({txt(tr->trial_id), txt(key.first), txt(key.second), double(*tr->laps), *tr->duration_min, e.distance_m,
              e.avg_speed_mps});
    }
  }
  if (!en.rows.empty()) tables.push_back(en);

  ReportTable rc;
  rc.title = "Room clearing";
  rc.text("Trial").text("sUAS").number("Walls (%)", 1).number("Floor (%)", 1).number("Ceiling (%)", 1)
      .number("Overall (%)", 1).number("Mean acuity (mm)", 1).number("Std acuity (mm)", 1).number("Duration (min)", 1);
  for (const auto& tr : c.trials) {
    if (tr.measurements.acuity.empty()) continue;
    const auto s = field::room_clearing_summary(tr.measurements.acuity, tr.duration_min.value_or(0.0));
    ctx.warn_all(tr.trial_id, s.warnings);
    std::vector<Cell> row{txt(tr.trial_id), txt(tr.suas_id)};
    for (const auto& surf : s.surfaces) row.push_back(surf.coverage_pct);
    row.push_back(s.coverage_pct);
    row.push_back(num(s.mean_mm));
    row.push_back(num(s.std_mm));
    row.push_back(num(tr.duration_min));
    rc.add(std::move(row));
  }
  if (!rc.rows.empty()) tables.push_back(rc);

  ReportTable nz;
  nz.title = "Noise";
  nz.text("Trial").text("sUAS").text("Condition").number("Mean (dB)", 1).number("Above ambient (dB)", 1);
  for (const auto& tr : c.trials) {
    const auto& db = tr.measurements.noise_db;
    if (db.empty()) continue;
    const auto amb = db.find("ambient");
    if (amb == db.end()) {
      ctx.warn(tr.trial_id, "", "noise samples without an 'ambient' set, skipped");
      continue;
    }
    std::map<std::string, std::vector<double>> conds;
    for (const auto& [k, v] : db)
      if (k != "ambient") conds[k] = v;
    const auto s = field::noise_summary(amb->second, conds);
    nz.add({txt(tr.trial_id), txt(tr.suas_id), txt("ambient"), s.ambient_db, 0.0});
    for (const auto& cnd : s.conditions) nz.add({txt(tr.trial_id), txt(tr.suas_id), txt(cnd.condition), cnd.mean_db, cnd.delta_db});
  }
  if (!nz.rows.empty()) tables.push_back(nz);

  ReportTable nl;
  nl.title = "NLOS positions";
  nl.text("Trial").text("sUAS").text("Position").number("Distance (m)", 0).text("Obstructions").glyph("Connect").glyph("Fly")
      .number("Latency (ms)", 0);
  ReportTable nm;
  nm.title = "NLOS maximum performance";
  nm.text("Trial").text("sUAS").text("Static max").text("Flying max").number("Latency at static max (ms)", 0);
  for (const auto& tr : c.trials) {
    const auto& pos = tr.measurements.nlos;
    if (pos.empty()) continue;
    for (const auto& p : pos) {
      const Glyph conn = p.connect == field::LinkQuality::good ? Glyph::good
                         : p.connect == field::LinkQuality::bad ? Glyph::bad
                                                                : Glyph::none;
      nl.add({txt(tr.trial_id), txt(tr.suas_id), txt(p.label), p.distance_m, txt(obstruction_text(p.obstructions)), conn,
              p.fly == field::Flyability::possible ? Glyph::good : Glyph::none, num(p.latency_ms)});
    }
    const auto perf = field::nlos_max_performance(pos);
    nm.add({txt(tr.trial_id), txt(tr.suas_id), txt(nlos_max_text(perf.static_max)), txt(nlos_max_text(perf.fly_max)),
            num(perf.static_max.latency_ms)});
  }
  if (!nl.rows.empty()) {
    tables.push_back(nl);
    tables.push_back(nm);
  }

  ReportTable lat;
  lat.title = "Video latency";
  lat.text("Trial").text("sUAS").number("Trials", 0).number("Mean (ms)", 0).number("Std (ms)", 0);
  for (const auto& tr : c.trials) {
    const auto& f = tr.measurements.latency;
    if (!f) continue;
    std::vector<double> ms;
    for (double frames : f->frames) ms.push_back(field::video_latency(frames, f->fps));
    const auto s = field::latency_summary(ms);
    ctx.warn_all(tr.trial_id, s.warnings);
    lat.add({txt(tr.trial_id), txt(tr.suas_id), double(s.trials), s.mean_ms, s.std_ms});
  }
  if (!lat.rows.empty()) tables.push_back(lat);

  ReportTable ck;
  ck.title = "Requirements";
  ck.text("Trial").text("sUAS").text("Field").glyph("Met").text("Note");
  ReportTable ck_sum;
  ck_sum.title = "Requirements met";
  ck_sum.text("Trial").text("Test").text("sUAS").number("Met (%)", 0);
  for (const auto& tr : c.trials) {
    const auto* def = c.find_test(tr.test_id);
    if (def->criteria.empty()) continue;
    const auto r = field::requirements_met(tr.measurements.responses, def->criteria);
    for (const auto& chk : r.checks) {
      ck.add({txt(tr.trial_id), txt(tr.suas_id), txt(chk.field), chk.pass ? Glyph::good : Glyph::none, txt(chk.note)});
    }
    ck_sum.add({txt(tr.trial_id), txt(tr.test_id), txt(tr.suas_id), r.percent});
  }
  if (!ck.rows.empty()) {
    tables.push_back(ck);
    tables.push_back(ck_sum);
  }

  if (auto t = completion_table(c, {TestType::endurance, TestType::takeoff, TestType::landing, TestType::room_clearing,
                                    TestType::noise, TestType::nlos_comms, TestType::nlos_latency, TestType::logistics,
                                    TestType::ocu})) {
    tables.push_back(*t);
  }
  return tables;
}

// ---------------------------------------------------------------------------
// metrics --test mapping

std::vector<ReportTable> mapping_tables(Context& ctx, const Loaded& l) {
  const auto& c = l.campaign;
  std::vector<ReportTable> tables;

  ReportTable res;
  res.title = "Mapping resolution";
  res.text("Trial").text("sUAS").number("Dim Acc (%)", 0).number("FOV coverage (%)", 0).number("Shape accuracy (%)", 0)
      .number("Mean acuity (mm)", 1).number("Std acuity (mm)", 1);
  for (const auto& tr : c.trials) {
    const auto& m = tr.measurements;
    if (!m.dimensions && !m.fov && m.shapes.empty() && m.acuity_mm.empty()) continue;
    std::optional<double> dim, fov, shape, am, as;
    if (m.dimensions) dim = mapping::dimensional_accuracy(m.dimensions->reported, m.dimensions->truth);
    if (m.fov) fov = mapping::fov_coverage(m.fov->visible, m.fov->total);
    if (!m.shapes.empty()) shape = mapping::shape_accuracy_rate(m.shapes);
    if (!m.acuity_mm.empty()) {
      const auto a = mapping::acuity_summary(m.acuity_mm);
      am = a.mean_mm;
      as = a.std_mm;
    }
    res.add({txt(tr.trial_id), txt(tr.suas_id), num(dim), num(fov), num(shape), num(am), num(as)});
  }
  if (!res.rows.empty()) tables.push_back(res);

  ReportTable acc;
  acc.title = "Mapping accuracy";
  acc.text("Trial").text("sUAS").number("Fiducials mapped (%)", 0).number("Global error (cm)", 0).number("Scale", 4);
  for (const auto& tr : c.trials) {
    if (!tr.measurements.fiducials_csv) continue;
    const auto* def = c.find_test(tr.test_id);
    if (def->fiducials.empty()) {
      ctx.warn(tr.trial_id, "", "test has no fiducial ground truth, skipped");
      continue;
    }
    const auto obs = take(ctx, ingest::parse_fiducials(c.resolve(*tr.measurements.fiducials_csv)));
    const auto cov = mapping::fiducial_coverage(obs, def->fiducials);
    const auto g = mapping::global_error(obs, def->fiducials);
    acc.add({txt(tr.trial_id), txt(tr.suas_id), cov, g.error_cm, g.scale});
  }
  if (!acc.rows.empty()) tables.push_back(acc);

  for (const auto& def : c.tests) {
    if (def.fiducials.empty()) continue;
    ReportTable d;
    d.title = "Fiducial difficulty (" + def.id + ")";
    d.text("Fiducial").number("Min traversal (m)", 0).number("Min turns", 0).text("Difficulty");
    for (const auto& f : def.fiducials) {
      d.add({txt(f.fiducial_id), f.min_traversal, double(f.min_turns),
             txt(std::string(mapping::to_string(mapping::difficulty_rating(f.min_traversal, f.min_turns))))});
    }
    tables.push_back(std::move(d));
  }

  if (auto t = completion_table(c, {TestType::mapping_resolution, TestType::mapping_accuracy})) tables.push_back(*t);
  return tables;
}

std::vector<ReportTable> metrics_for(Context& ctx, const Loaded& l, const std::string& group) {
  if (group == "nav") return nav_tables(ctx, l);
  if (group == "collision") return collision_tables(ctx, l);
  if (group == "field") return field_tables(ctx, l);
  if (group == "mapping") return mapping_tables(ctx, l);
  throw Usage("unknown metrics group '" + group + "' (nav, collision, field, mapping)");
}

// ---------------------------------------------------------------------------
// ncap

ncap::WeightScheme weight_scheme(Context& ctx, const std::string& w) {
  ncap::WeightScheme s;
  if (w == "uniform") s.kind = ncap::WeightKind::uniform;
  else if (w == "degree") s.kind = ncap::WeightKind::degree;
  else {
    s.kind = ncap::WeightKind::explicit_weights;
    s.per_feature = take(ctx, ingest::parse_weights(w));
  }
  return s;
}

ncap::NcapResult ncap_result(Context& ctx, const Options& o) {
  if (o.features.empty()) throw Usage("--features is required");
  const auto table = take(ctx, ingest::parse_feature_sheet(o.features));
  const auto scheme = weight_scheme(ctx, o.weights);
  for (const auto& n : ncap::encode_features(table).notes) ctx.warn(o.features, "", n);
  auto r = ncap::evaluate(table, scheme);
  ctx.warn_all(o.features, r.warnings);
  return r;
}

ReportTable ncap_table(const ncap::NcapResult& r) {
  ReportTable t;
  t.title = "NCAP";
  t.text("sUAS").number("N_AL", 0).number("N_CP", 2).number("Absolute distance", 2).number("Relative distance", 2)
      .number("Rank", 0);
  for (const auto& e : r.entries) {
    t.add({txt(e.id), double(e.n_al), e.n_cp, e.absolute_distance, e.relative_distance, double(e.rank)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// cfis

std::vector<ReportTable> cfis_tables(Context& ctx, const Options& o) {
  if (o.scores.empty()) throw Usage("--scores is required");
  std::map<std::string, ingest::FisBundle> bundles;
  for (const auto& path : o.fis) {
    auto b = take(ctx, ingest::parse_fis_config(path));
    const auto id = b.config.test_id;
    if (!bundles.emplace(id, std::move(b)).second) {
      throw Error(ErrorCode::DuplicateId, "two FIS configs for test '" + id + "'");
    }
  }
  const auto rows = take(ctx, ingest::parse_scores(o.scores));
  std::map<std::string, double> weights;
  if (!o.test_weights.empty()) weights = take(ctx, ingest::parse_weights(o.test_weights));

  std::vector<std::string> axes;
  struct Scored {
    const ingest::ScoreRow* row;
    std::optional<cfis::CascadeResult> cascade;
    double normalized;
  };
  std::vector<Scored> scored;
  for (const auto& row : rows) {
    Scored s{&row, std::nullopt, 0.0};
    const auto it = bundles.find(row.test_id);
    if (!row.inputs.empty() && it != bundles.end()) {
      const auto& b = it->second;
      s.cascade = cfis::cascade_eval(b.config, row.inputs);
      double ideal = s.cascade->combined;
      if (!b.ideal.empty()) {
        auto inputs = row.inputs;
        for (const auto& [sys, vars] : b.ideal) inputs[sys] = vars;
        ideal = cfis::cascade_eval(b.config, inputs).combined;
      }
      s.normalized = cfis::normalized_test_score(s.cascade->combined, ideal);
      if (row.score && std::abs(*row.score - s.normalized) > 0.005) {
        ctx.warn(o.scores, row.suas_id + "/" + row.test_id,
                 "recorded score " + report::format_number(*row.score, 2) + " differs from computed " +
                     report::format_number(s.normalized, 2) + "; using the computed value");
      }
      for (const auto& [axis, v] : s.cascade->axis)
        if (std::find(axes.begin(), axes.end(), axis) == axes.end()) axes.push_back(axis);
    } else if (row.score) {
      s.normalized = *row.score;
    } else {
      throw Error(ErrorCode::MalformedInput,
                  "row " + row.suas_id + "/" + row.test_id + " has neither a score nor inputs for a loaded FIS config");
    }
    scored.push_back(s);
  }

  ReportTable per;
  per.title = "Contextual test scores";
  per.text("sUAS").text("Test");
  for (const auto& a : axes) per.number(a, 2);
  per.number("Combined", 2).number("Normalized", 2);
  std::vector<std::string> tests, suas;
  for (const auto& s : scored) {
    std::vector<Cell> cells{txt(s.row->suas_id), txt(s.row->test_id)};
    for (const auto& a : axes) {
      std::optional<double> v;
      if (s.cascade) {
        const auto it = s.cascade->axis.find(a);
        if (it != s.cascade->axis.end()) v = it->second;
      }
      cells.push_back(num(v));
    }
    cells.push_back(num(s.cascade ? std::optional(s.cascade->combined) : std::nullopt));
    cells.push_back(s.normalized);
    per.add(std::move(cells));
    if (std::find(tests.begin(), tests.end(), s.row->test_id) == tests.end()) tests.push_back(s.row->test_id);
    if (std::find(suas.begin(), suas.end(), s.row->suas_id) == suas.end()) suas.push_back(s.row->suas_id);
  }

  ReportTable pred;
  pred.title = "Predictive mission score";
  pred.text("sUAS");
  for (const auto& t : tests) pred.number(t, 2);
  pred.number("Result", 2);
  for (const auto& id : suas) {
    std::map<std::string, std::optional<double>> by_test;
    for (const auto& t : tests) by_test[t] = std::nullopt;
    for (const auto& s : scored)
      if (s.row->suas_id == id) by_test[s.row->test_id] = s.normalized;
    std::vector<Cell> cells{txt(id)};
    for (const auto& t : tests) cells.push_back(num(by_test[t]));
    cells.push_back(cfis::predictive_score(by_test, weights));
    pred.add(std::move(cells));
  }
  return {per, pred};
}

// ---------------------------------------------------------------------------
// sa

std::vector<ReportTable> sa_tables(Context& ctx, const Options& o) {
  if (o.seev.empty()) throw Usage("--seev is required");
  const auto entries = take(ctx, ingest::parse_seev(o.seev));
  std::optional<hf::SagatScores> sagat;
  if (!o.sagat.empty()) sagat = hf::sagat_scores(take(ctx, ingest::parse_sagat(o.sagat)));

  std::vector<hf::SeParams> present;
  for (const auto& e : entries)
    if (e.present) present.push_back(e.params);

  std::vector<double> raw;
  if (o.model == "aam") {
    raw = hf::attention_allocation(present);
  } else if (o.model == "mds") {
    std::vector<hf::SeProperties> props;
    for (const auto& p : present) props.push_back({p.se_id, p.saliency, p.effort, p.expectancy, p.value});
    auto r = hf::probability_attending(props, {});
    ctx.warn_all(o.seev, r.warnings);
    raw = hf::renormalize(r.p);
  } else {
    throw Usage("unknown model '" + o.model + "' (aam, mds)");
  }

  // SEs missing from the display get a virtual proportion from the SAGAT
  // correct-rate line through the present SEs.
  std::map<std::string, double> weight;
  for (std::size_t i = 0; i < present.size(); ++i) weight[present[i].se_id] = raw[i];
  std::set<std::string> virtual_ses;
  for (const auto& e : entries) {
    if (e.present) continue;
    if (!sagat) throw Usage("SE '" + e.params.se_id + "' is not present; --sagat is needed");
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : present) {
      const auto it = sagat->correct_rate.find(p.se_id);
      if (it != sagat->correct_rate.end()) pts.emplace_back(it->second, weight[p.se_id]);
    }
    const auto it = sagat->correct_rate.find(e.params.se_id);
    if (it == sagat->correct_rate.end()) {
      throw Error(ErrorCode::MalformedInput, "no SAGAT questions for virtual SE '" + e.params.se_id + "'");
    }
    weight[e.params.se_id] = std::max(0.0, hf::virtual_proportion(pts, it->second));
    virtual_ses.insert(e.params.se_id);
  }
  {
    std::vector<double> w;
    for (const auto& e : entries) w.push_back(weight[e.params.se_id]);
    w = hf::renormalize(std::move(w));
    for (std::size_t i = 0; i < entries.size(); ++i) weight[entries[i].params.se_id] = w[i];
  }

  std::vector<ReportTable> tables;
  ReportTable at;
  at.title = o.model == "aam" ? "Attention allocation" : "Normalized probability of attending";
  at.text("SE").text("Name").number("Proportion", 3).text("Virtual");
  double total = 0.0;
  for (const auto& e : entries) {
    const double w = weight[e.params.se_id];
    total += w;
    at.add({txt(e.params.se_id), txt(e.name), w, txt(virtual_ses.count(e.params.se_id) ? "*" : "")});
  }
  at.add({txt("Total"), txt(""), total, txt("")});
  tables.push_back(at);

  if (sagat) {
    ReportTable cr;
    cr.title = "SAGAT correct rate";
    cr.text("SE").number("Correct (%)", 1);
    for (const auto& e : entries) {
      const auto it = sagat->correct_rate.find(e.params.se_id);
      cr.add({txt(e.params.se_id), num(it == sagat->correct_rate.end() ? std::nullopt : std::optional(100.0 * it->second))});
    }
    tables.push_back(cr);

    ingest::SeGroups groups;
    if (!o.groups.empty()) groups = take(ctx, ingest::parse_groups(o.groups));
    std::vector<std::string> all;
    for (const auto& e : entries) all.push_back(e.params.se_id);
    if (std::none_of(groups.begin(), groups.end(), [](const auto& g) { return g.first == "Overall"; })) {
      groups.push_back({"Overall", all});
    }
    ReportTable os;
    os.title = "OSA";
    os.text("Group").number("Mean", 2).number("Std", 2).number("Participants", 0);
    for (const auto& g : hf::osa_groups(weight, *sagat, groups)) os.add({txt(g.group), g.mean, g.stddev, double(g.participants)});
    tables.push_back(os);
  }
  return tables;
}

// ---------------------------------------------------------------------------
// trust

std::vector<ReportTable> trust_tables(Context& ctx, const Options& o) {
  if (o.survey.empty()) throw Usage("--survey is required");
  const auto data = take(ctx, ingest::parse_survey(o.survey));
  std::vector<hf::Preference> prefs;
  if (!o.preferences.empty()) prefs = take(ctx, ingest::parse_preferences(o.preferences));
  std::string a, b;
  if (!o.conditions.empty()) {
    const auto comma = o.conditions.find(',');
    if (comma == std::string::npos) throw Usage("--conditions expects A,B");
    a = o.conditions.substr(0, comma);
    b = o.conditions.substr(comma + 1);
  } else {
    for (const auto& r : data.rows) {
      if (a.empty()) a = r.condition;
      else if (r.condition != a) {
        b = r.condition;
        break;
      }
    }
    if (b.empty()) throw Error(ErrorCode::EmptyCondition, "survey has fewer than two conditions");
  }
  const auto rep = hf::trust_pipeline(data, a, b, prefs);
  ctx.warn_all(o.survey, rep.warnings);

  std::vector<ReportTable> tables;
  ReportTable items;
  items.title = "Trust items";
  items.text("Instrument").text("Item").number("n " + a, 0).number("n " + b, 0).number("Mean " + a, 2)
      .number("Mean " + b, 2).number("U", 1).number("p", 3).text("Exact").number("Welch t", 2).number("Welch p", 3);
  for (const auto& r : rep.items) {
    items.add({txt(std::string(hf::to_string(r.instrument))), txt(r.item_id), double(r.n_a), double(r.n_b), r.mean_a,
               r.mean_b, r.mw.u, r.mw.p_two_sided, txt(r.mw.exact ? "yes" : "no"),
               num(r.welch ? std::optional(r.welch->t) : std::nullopt),
               num(r.welch ? std::optional(r.welch->p_two_sided) : std::nullopt)});
  }
  tables.push_back(items);

  ReportTable ex;
  ex.title = "Excluded participants";
  ex.text("Participant").text("Reason");
  for (const auto& p : rep.excluded_participants) ex.add({txt(p), txt("failed manipulation check")});
  tables.push_back(ex);

  if (!prefs.empty()) {
    ReportTable pr;
    pr.title = "Preferences";
    pr.text("Preferred").number("Participants", 0);
    for (const auto& [k, n] : rep.preference_counts) pr.add({txt(k), double(n)});
    tables.push_back(pr);
  }
  return tables;
}

// ---------------------------------------------------------------------------
// validate

std::string counts_text(const ingest::ParseReport& r) {
  std::string s;
  for (const auto& [k, v] : r.counts) s += (s.empty() ? "" : ", ") + std::to_string(v) + " " + k;
  return s;
}

ingest::ParseReport validate_file(Context& ctx, const fs::path& path) {
  const auto text = csv::read_file(path);
  const auto ext = path.extension().string();
  if (ext == ".json") {
    const bool campaign = text.find("\"schema_version\"") != std::string::npos;
    const bool fis = text.find("\"combined\"") != std::string::npos;
    const bool features = text.find("\"features\"") != std::string::npos;
    if (campaign) {
      auto p = ingest::parse_campaign(path);
      for (const auto& t : p.value.trials) {
        if (t.telemetry) ctx.warn(ingest::parse_telemetry(p.value.resolve(*t.telemetry)).report);
        if (t.measurements.fiducials_csv) ctx.warn(ingest::parse_fiducials(p.value.resolve(*t.measurements.fiducials_csv)).report);
      }
      return p.report;
    }
    if (fis) return ingest::parse_fis_config(path).report;
    if (features) return ingest::parse_feature_sheet(path).report;
    if (text.find("\"op\"") != std::string::npos) return ingest::parse_criteria(path).report;
    return ingest::parse_weights(path).report;
  }
  const auto nl = text.find('\n');
  const auto header = csv::parse(text.substr(0, nl == std::string::npos ? text.size() : nl), path.string()).header;
  auto has = [&](const char* h) { return std::find(header.begin(), header.end(), h) != header.end(); };
  if (has("t")) return ingest::parse_telemetry(path).report;
  if (has("instrument")) return ingest::parse_survey(path).report;
  if (has("sa_level")) return ingest::parse_sagat(path).report;
  if (has("saliency")) return ingest::parse_seev(path).report;
  if (has("preferred")) return ingest::parse_preferences(path).report;
  if (has("group")) return ingest::parse_groups(path).report;
  if (has("fiducial_id")) return ingest::parse_fiducials(path).report;
  if (has("suas_id") && has("test_id")) return ingest::parse_scores(path).report;
  throw Error(ErrorCode::MalformedInput, "unrecognized input format", std::nullopt, path.string());
}

int cmd_validate(Context& ctx, const Options& o) {
  if (o.inputs.empty()) throw Usage("nothing to validate");
  std::string text;
  for (const auto& in : o.inputs) {
    const auto rep = validate_file(ctx, in);
    ctx.warn(rep);
    text += "ok: " + in + " (" + counts_text(rep) + ")\n";
  }
  emit(ctx, o, text);
  return 0;
}

// ---------------------------------------------------------------------------
// report

// Decimal places when every non-empty cell of column c is a plain fixed-point
// number that formats back to itself.
std::optional<int> numeric_decimals(const std::vector<std::vector<std::string>>& rows, std::size_t c) {
  std::optional<int> dec;
  for (const auto& row : rows) {
    if (c >= row.size() || row[c].empty()) continue;
    const auto& v = row[c];
    const auto dot = v.find('.');
    const int d = dot == std::string::npos ? 0 : static_cast<int>(v.size() - dot - 1);
    const auto x = csv::parse_double(v);
    if (!x || !std::isfinite(*x) || report::format_number(*x, d) != v) return std::nullopt;
    if (dec && *dec != d) return std::nullopt;
    dec = d;
  }
  return dec;
}

int cmd_report(Context& ctx, const Options& o) {
  const auto& in = single_input(o, "manifest (.json) or rendered report (.csv)");
  if (fs::path(in).extension() == ".csv") {
    std::vector<ReportTable> tables;
    for (const auto& t : report::parse_csv_document(csv::read_file(in), in)) {
      ReportTable r;
      r.title = t.title;
      std::vector<std::optional<int>> decimals;
      for (std::size_t c = 0; c < t.header.size(); ++c) {
        decimals.push_back(numeric_decimals(t.rows, c));
        if (decimals.back()) r.number(t.header[c], *decimals.back());
        else r.text(t.header[c]);
      }
      for (const auto& row : t.rows) {
        std::vector<Cell> cells;
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (row[c].empty()) cells.push_back(Empty{});
          else if (c < decimals.size() && decimals[c]) cells.push_back(*csv::parse_double(row[c]));
          else cells.push_back(row[c]);
        }
        r.add(std::move(cells));
      }
      tables.push_back(std::move(r));
    }
    emit_tables(ctx, o, tables);
    return 0;
  }
  const auto l = load_campaign(ctx, in);
  std::vector<ReportTable> all;
  for (const char* g : {"nav", "collision", "field", "mapping"}) {
    for (auto& t : metrics_for(ctx, l, g)) {
      t.title = std::string(g) + ": " + t.title;
      all.push_back(std::move(t));
    }
  }
  emit_tables(ctx, o, all);
  return 0;
}

// ---------------------------------------------------------------------------
// plot

int cmd_plot(Context& ctx, const Options& o) {
  const auto kind = report::parse_plot_kind(o.kind);
  if (!kind) throw Usage("unknown plot kind '" + o.kind + "' (ncap-scatter, deviation)");
  std::vector<report::PlotSeries> series;
  if (*kind == report::PlotKind::ncap_scatter) {
    for (const auto& e : ncap_result(ctx, o).entries) series.push_back({e.id, {{double(e.n_al), e.n_cp}}});
  } else {
    const auto l = load_campaign(ctx, single_input(o, "manifest"));
    const std::set<std::string> wanted(o.trials.begin(), o.trials.end());
    for (const auto& tr : l.campaign.trials) {
      if (!wanted.empty() && !wanted.count(tr.trial_id)) continue;
      const auto* def = l.campaign.find_test(tr.test_id);
      const auto* traj = l.traj(tr);
      if (!def->reference_path || !traj) continue;
      const auto dev = nav::deviation_series(*traj, *def->reference_path);
      report::PlotSeries s{tr.trial_id + " (" + tr.suas_id + ")", {}};
      for (std::size_t i = 0; i < dev.size(); ++i) s.points.push_back({(*traj)[i].t - traj->start_time(), dev[i]});
      series.push_back(std::move(s));
    }
  }
  emit(ctx, o, report::plot_svg(*kind, series));
  return 0;
}

bool want_color(std::ostream& err) {
  if (std::getenv("DECISIVE_NO_COLOR")) return false;
  return &err == &std::cerr && ::isatty(STDERR_FILENO);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx(out, err, want_color(err));
  Options o;

  CLI::App app{"Analytics for sUAS test-method data", "decisive"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--out", o.out_path, "Write data to PATH instead of standard output");
    sub->add_option("--format", o.format, "md, csv or json")->check(CLI::IsMember({"md", "csv", "json"}));
    sub->add_flag("--ascii", o.ascii, "ok/bad/none instead of the glyphs");
    sub->add_option("--seed", o.seed, "Seed for randomized diagnostics");
  };

  auto* validate = app.add_subcommand("validate", "Parse inputs and report problems");
  common(validate);
  validate->add_option("inputs", o.inputs, "Files to validate")->required();

  auto* metrics = app.add_subcommand("metrics", "Metric tables for one test group");
  common(metrics);
  metrics->add_option("--test", o.test, "nav, collision, field or mapping")
      ->required()
      ->check(CLI::IsMember({"nav", "collision", "field", "mapping"}));
  metrics->add_option("manifest", o.inputs, "Campaign manifest")->required();

  auto* ncap_cmd = app.add_subcommand("ncap", "Non-contextual autonomy potential");
  common(ncap_cmd);
  ncap_cmd->add_option("--features", o.features, "Feature sheet JSON")->required();
  ncap_cmd->add_option("--weights", o.weights, "uniform, degree or a weights JSON file");

  auto* cfis_cmd = app.add_subcommand("cfis", "Contextual autonomy scores");
  common(cfis_cmd);
  cfis_cmd->add_option("--fis", o.fis, "FIS config JSON (repeatable, one per test)");
  cfis_cmd->add_option("--scores", o.scores, "Scores CSV")->required();
  cfis_cmd->add_option("--weights", o.test_weights, "Per-test weights JSON");

  auto* sa = app.add_subcommand("sa", "Attention allocation and operator situation awareness");
  common(sa);
  sa->add_option("--seev", o.seev, "SEEV parameter CSV")->required();
  sa->add_option("--sagat", o.sagat, "SAGAT responses CSV");
  sa->add_option("--groups", o.groups, "SE groups CSV");
  sa->add_option("--model", o.model, "aam or mds")->check(CLI::IsMember({"aam", "mds"}));

  auto* trust = app.add_subcommand("trust", "Trust survey comparison");
  common(trust);
  trust->add_option("--survey", o.survey, "Survey CSV")->required();
  trust->add_option("--conditions", o.conditions, "Two condition labels, A,B");
  trust->add_option("--preferences", o.preferences, "Preferences CSV");

  auto* rep = app.add_subcommand("report", "Every metric group for a manifest, or re-render a CSV report");
  common(rep);
  rep->add_option("input", o.inputs, "Manifest JSON or report CSV")->required();

  auto* plot = app.add_subcommand("plot", "SVG plots");
  common(plot);
  plot->add_option("--kind", o.kind, "ncap-scatter or deviation")
      ->required()
      ->check(CLI::IsMember({"ncap-scatter", "deviation"}));
  plot->add_option("--features", o.features, "Feature sheet JSON (ncap-scatter)");
  plot->add_option("--weights", o.weights, "uniform, degree or a weights JSON file");
  plot->add_option("--trial", o.trials, "Trial ids to draw (deviation)");
  plot->add_option("manifest", o.inputs, "Campaign manifest (deviation)");

  std::vector<const char*> argv{"decisive"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(ctx, o);
    if (metrics->parsed()) {
      const auto l = load_campaign(ctx, single_input(o, "manifest"));
      emit_tables(ctx, o, metrics_for(ctx, l, o.test));
      return 0;
    }
    if (ncap_cmd->parsed()) {
      emit_tables(ctx, o, {ncap_table(ncap_result(ctx, o))});
      return 0;
    }
    if (cfis_cmd->parsed()) {
      emit_tables(ctx, o, cfis_tables(ctx, o));
      return 0;
    }
    if (sa->parsed()) {
      emit_tables(ctx, o, sa_tables(ctx, o));
      return 0;
    }
    if (trust->parsed()) {
      emit_tables(ctx, o, trust_tables(ctx, o));
      return 0;
    }
    if (rep->parsed()) return cmd_report(ctx, o);
    if (plot->parsed()) return cmd_plot(ctx, o);
  } catch (const Error& e) {
    std::string msg = "[" + std::string(to_string(e.code())) + "] ";
    if (!e.where().empty()) msg += e.where() + (e.line() ? ":" + std::to_string(*e.line()) : "") + ": ";
    else if (e.line()) msg += "line " + std::to_string(*e.line()) + ": ";
    ctx.error(msg + e.detail());
    return is_input_error(e.code()) ? 1 : 2;
  } catch (const Usage& e) {
    ctx.error(e.what());
    return 1;
  } catch (const std::exception& e) {
    ctx.error(e.what());
    return 2;
  }
  return 1;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace decisive::cli
