#include "decisive/human_factors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "decisive/core.hpp"
#include "decisive/error.hpp"

namespace decisive::hf {

std::vector<double> attention_allocation(const std::vector<SeParams>& params) {
  if (params.empty()) fail(ErrorCode::EmptyData, "no SEs");
  std::vector<double> a;
  a.reserve(params.size());
  for (const auto& p : params) {
    if (!(p.saliency > 0.0 && p.effort > 0.0 && p.expectancy > 0.0 && p.value > 0.0)) {
      fail(ErrorCode::NonPositiveParam, "SE '" + p.se_id + "' has a non-positive SEEV parameter");
    }
    a.push_back(p.expectancy * p.saliency * p.value / p.effort);
  }
  return renormalize(std::move(a));
}

AttendResult probability_attending(const std::vector<SeProperties>& props, const SeevWeights& w) {
  AttendResult out;
  for (const auto& p : props) {
    const double v = w.s * p.s - w.ef * p.ef + w.ex * p.ex + w.v * p.v;
    if (v < 0.0) {
      out.warnings.push_back("P(" + p.se_id + ") = " + std::to_string(v) + " clamped to 0");
      out.p.push_back(0.0);
    } else {
      out.p.push_back(v);
    }
  }
  return out;
}

double virtual_proportion(const std::vector<std::pair<double, double>>& present, double missing_rate, VpMode mode) {
  if (present.size() < 2) fail(ErrorCode::DegenerateFit, "need at least two present SEs");
  std::vector<std::pair<double, double>> pts = present;
  if (mode == VpMode::two_point) {
    std::sort(pts.begin(), pts.end());
    const auto above = std::lower_bound(pts.begin(), pts.end(), std::make_pair(missing_rate, -std::numeric_limits<double>::infinity()));
    std::size_t hi = static_cast<std::size_t>(above - pts.begin());
    hi = std::clamp<std::size_t>(hi, 1, pts.size() - 1);
    pts = {pts[hi - 1], pts[hi]};
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) fail(ErrorCode::DegenerateFit, "all present correct rates are equal");
  const double m = sxy / sxx;
  return my + m * (missing_rate - mx);
}

std::vector<double> renormalize(std::vector<double> v) {
  double total = 0.0;
  for (double x : v) total += x;
  if (!(total > 0.0)) fail(ErrorCode::ZeroDenominator, "weights sum to zero");
  for (double& x : v) x /= total;
  return v;
}

double perception_value(Perception p) {
  switch (p) {
    case Perception::undetected: return 0.0;
    case Perception::detected: return 0.5;
    case Perception::comprehended: return 1.0;
  }
  return 0.0;
}

std::string_view to_string(Perception p) {
  switch (p) {
    case Perception::undetected: return "undetected";
    case Perception::detected: return "detected";
    case Perception::comprehended: return "comprehended";
  }
  return "?";
}

std::optional<Perception> parse_perception(std::string_view s) {
  if (s == "undetected") return Perception::undetected;
  if (s == "detected") return Perception::detected;
  if (s == "comprehended") return Perception::comprehended;
  return std::nullopt;
}

SagatScores sagat_scores(const std::vector<SagatResponse>& responses) {
  if (responses.empty()) fail(ErrorCode::EmptyData, "no SAGAT responses");
  SagatScores out;
  std::map<std::string, std::pair<int, int>> tally;  // correct, asked
  for (const auto& r : responses) {
    auto& t = tally[r.se_id];
    t.first += r.correct ? 1 : 0;
    t.second += 1;
    auto& cell = out.perception[r.participant];
    const double v = perception_value(r.perception);
    auto it = cell.find(r.se_id);
    if (it == cell.end()) cell[r.se_id] = v;
    else it->second = std::max(it->second, v);
  }
  for (const auto& [se, t] : tally) out.correct_rate[se] = static_cast<double>(t.first) / t.second;
  return out;
}

double osa(const std::vector<double>& weights, const std::vector<double>& p) {
  if (weights.size() != p.size()) fail(ErrorCode::LengthMismatch, "weights and perception vectors differ in length");
  const auto w = renormalize(weights);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * p[i];
  return s;
}

std::vector<OsaGroupSummary> osa_groups(const std::map<std::string, double>& se_weights,
                                        const SagatScores& scores,
                                        const std::vector<std::pair<std::string, std::vector<std::string>>>& groups) {
  std::vector<OsaGroupSummary> out;
  for (const auto& [name, ses] : groups) {
    std::vector<double> w;
    for (const auto& se : ses) {
      const auto it = se_weights.find(se);
      if (it == se_weights.end()) fail(ErrorCode::InvalidArgument, "no weight for SE '" + se + "'");
      w.push_back(it->second);
    }
    std::vector<double> per_participant;
    for (const auto& [participant, cells] : scores.perception) {
      std::vector<double> p;
      for (const auto& se : ses) {
        const auto it = cells.find(se);
        p.push_back(it == cells.end() ? 0.0 : it->second);
      }
      per_participant.push_back(osa(w, p));
    }
    if (per_participant.empty()) fail(ErrorCode::EmptyData, "no participants");
    out.push_back({name, mean(per_participant), sample_stddev(per_participant), per_participant.size()});
  }
  return out;
}

std::string_view to_string(Instrument i) { return i == Instrument::ctpa ? "CTPA" : "HCTM"; }

std::optional<Instrument> parse_instrument(std::string_view s) {
  if (s == "CTPA" || s == "ctpa") return Instrument::ctpa;
  if (s == "HCTM" || s == "hctm") return Instrument::hctm;
  return std::nullopt;
}

TrustReport trust_pipeline(const SurveyDataset& data, const std::string& condition_a,
                           const std::string& condition_b, const std::vector<Preference>& preferences) {
  TrustReport out;
  std::set<std::string> failed;
  for (const auto& r : data.rows)
    if (!r.manip_pass) failed.insert(r.participant_id);
  out.excluded_participants.assign(failed.begin(), failed.end());

  std::set<std::string> in_a, in_b;
  std::vector<std::pair<Instrument, std::string>> items;
  for (const auto& r : data.rows) {
    if (failed.count(r.participant_id)) continue;
    if (r.condition == condition_a) in_a.insert(r.participant_id);
    else if (r.condition == condition_b) in_b.insert(r.participant_id);
    else continue;
    const std::pair<Instrument, std::string> key{r.instrument, r.item_id};
    if (std::find(items.begin(), items.end(), key) == items.end()) items.push_back(key);
  }
  if (in_a.empty()) fail(ErrorCode::EmptyCondition, "condition '" + condition_a + "' has no valid participants");
  if (in_b.empty()) fail(ErrorCode::EmptyCondition, "condition '" + condition_b + "' has no valid participants");

  auto filtered = [&](std::vector<double> v, const std::string& label, std::size_t& removed) {
    if (v.size() < 4) {
      out.warnings.push_back(label + ": fewer than 4 responses, no outlier filtering");
      return v;
    }
    auto f = stats::iqr_filter(v);
    removed = f.removed.size();
    if (f.warning) out.warnings.push_back(label + ": " + f.message);
    return f.kept;
  };

  for (const auto& [inst, item] : items) {
    std::vector<double> a, b;
    for (const auto& r : data.rows) {
      if (failed.count(r.participant_id) || r.instrument != inst || r.item_id != item) continue;
      if (r.condition == condition_a) a.push_back(r.score);
      else if (r.condition == condition_b) b.push_back(r.score);
    }
    const std::string label = std::string(to_string(inst)) + " item " + item;
    if (a.empty() || b.empty()) {
      out.warnings.push_back(label + ": missing responses in one condition, skipped");
      continue;
    }
    TrustItemResult res;
    res.instrument = inst;
    res.item_id = item;
    a = filtered(std::move(a), label + " (" + condition_a + ")", res.removed_a);
    b = filtered(std::move(b), label + " (" + condition_b + ")", res.removed_b);
    res.n_a = a.size();
    res.n_b = b.size();
    res.mean_a = mean(a);
    res.mean_b = mean(b);
    res.mw = stats::mann_whitney(a, b);
    if (a.size() >= 2 && b.size() >= 2) res.welch = stats::welch_t(a, b);
    out.items.push_back(std::move(res));
  }

  for (const auto& p : preferences) {
    if (failed.count(p.participant_id)) continue;
    ++out.preference_counts[p.preferred];
    out.preferences.push_back(p);
  }
  return out;
}

}  // namespace decisive::hf
