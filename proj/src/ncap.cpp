#include "decisive/ncap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "decisive/csv.hpp"
#include "decisive/error.hpp"

namespace decisive::ncap {

std::string_view to_string(Direction d) { return d == Direction::higher_better ? "higher" : "lower"; }

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "higher" || s == "higher_better") return Direction::higher_better;
  if (s == "lower" || s == "lower_better") return Direction::lower_better;
  return std::nullopt;
}

int autonomy_level(const AutonomyCapabilities& caps) {
  return int(caps.perception) + int(caps.modeling) + int(caps.planning) + int(caps.execution);
}

EncodedMatrix encode_features(const FeatureTable& table) {
  EncodedMatrix out;
  const std::size_t nf = table.features.size();
  for (const auto& f : table.features) out.feature_names.push_back(f.name);
  for (const auto& s : table.systems) out.system_ids.push_back(s.id);
  std::vector<std::vector<std::optional<double>>> raw(table.systems.size(), std::vector<std::optional<double>>(nf));

  for (std::size_t si = 0; si < table.systems.size(); ++si) {
    const auto& sys = table.systems[si];
    for (std::size_t fi = 0; fi < nf; ++fi) {
      const auto& f = table.features[fi];
      const auto it = sys.values.find(f.name);
      if (it == sys.values.end() || std::holds_alternative<Absent>(it->second)) continue;
      double v = 0.0;
      if (const auto* d = std::get_if<double>(&it->second)) {
        v = *d;
      } else {
        const auto& token = std::get<std::string>(it->second);
        if (f.ordinal_map) {
          const auto m = f.ordinal_map->find(token);
          if (m == f.ordinal_map->end()) {
            fail(ErrorCode::UnmappedToken, "feature '" + f.name + "' token '" + token + "' has no ordinal rank");
          }
          v = m->second;
        } else if (auto num = csv::parse_double(token)) {
          v = *num;
        } else {
          fail(ErrorCode::UnmappedToken, "feature '" + f.name + "' has token '" + token + "' but no ordinal map");
        }
      }
      if (!(v > 0.0) || !std::isfinite(v)) {
        fail(ErrorCode::NonPositiveValue, "system '" + sys.id + "' feature '" + f.name + "' must be positive");
      }
      raw[si][fi] = v;
    }
  }

  out.values.assign(table.systems.size(), std::vector<double>(nf, 0.0));
  for (std::size_t fi = 0; fi < nf; ++fi) {
    std::optional<double> cohort_min;
    for (const auto& row : raw)
      if (row[fi]) cohort_min = cohort_min ? std::min(*cohort_min, *row[fi]) : *row[fi];
    for (std::size_t si = 0; si < raw.size(); ++si) {
      if (raw[si][fi]) {
        out.values[si][fi] = *raw[si][fi];
        continue;
      }
      const auto& f = table.features[fi];
      double fill = 0.0;
      if (cohort_min) fill = *cohort_min;
      else if (f.ordinal_map) fill = 1.0;
      else fail(ErrorCode::NonPositiveValue, "feature '" + f.name + "' has no value in any system");
      out.values[si][fi] = fill;
      out.notes.push_back("system '" + table.systems[si].id + "' feature '" + f.name + "' absent, using " +
                          csv::format_double(fill));
    }
  }
  return out;
}

std::vector<double> normalized_weights(const FeatureTable& table, const WeightScheme& scheme) {
  const std::size_t nf = table.features.size();
  if (nf == 0) fail(ErrorCode::EmptyData, "feature table has no features");
  std::vector<double> w(nf, 1.0);
  for (std::size_t i = 0; i < nf; ++i) {
    const auto& f = table.features[i];
    const auto it = scheme.per_feature.find(f.name);
    switch (scheme.kind) {
      case WeightKind::uniform: break;
      case WeightKind::degree: {
        std::optional<double> n = it != scheme.per_feature.end() ? std::optional(it->second) : f.degree;
        if (!n) fail(ErrorCode::InvalidArgument, "feature '" + f.name + "' has no degree of autonomy");
        w[i] = std::exp2(-*n);
        break;
      }
      case WeightKind::explicit_weights: {
        std::optional<double> v = it != scheme.per_feature.end() ? std::optional(it->second) : f.weight;
        if (!v) fail(ErrorCode::InvalidArgument, "feature '" + f.name + "' has no weight");
        w[i] = *v;
        break;
      }
    }
  }
  double total = 0.0;
  for (double x : w) {
    if (!std::isfinite(x)) fail(ErrorCode::DomainError, "weight is not finite");
    total += std::abs(x);
  }
  if (total == 0.0) fail(ErrorCode::ZeroDenominator, "weights sum to zero");
  for (double& x : w) x /= total;
  return w;
}

double weighted_product(const std::vector<double>& values, const std::vector<double>& weights,
                        const std::vector<Direction>& directions) {
  if (values.size() != weights.size() || values.size() != directions.size()) {
    fail(ErrorCode::LengthMismatch, "values, weights and directions differ in length");
  }
  double log_p = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) fail(ErrorCode::DomainError, "weighted product needs positive values");
    const double s = directions[i] == Direction::lower_better ? -1.0 : 1.0;
    log_p += s * weights[i] * std::log(values[i]);
  }
  return std::exp(log_p);
}

NcapResult autonomy_distances(const std::vector<Coordinate>& coords) {
  if (coords.empty()) fail(ErrorCode::EmptyData, "no systems");
  NcapResult out;
  for (const auto& c : coords) {
    if (c.n_al < 0 || c.n_al > 4) fail(ErrorCode::DomainError, "N_AL must lie in 0..4");
    out.entries.push_back({c.id, c.n_al, c.n_cp, std::hypot(double(c.n_al), c.n_cp), 0.0, 0});
  }
  std::vector<std::size_t> order(out.entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto& a = out.entries[i];
    const auto& b = out.entries[j];
    if (a.absolute_distance != b.absolute_distance) return a.absolute_distance > b.absolute_distance;
    if (a.n_al != b.n_al) return a.n_al > b.n_al;
    return a.id < b.id;
  });
  for (std::size_t r = 0; r < order.size(); ++r) out.entries[order[r]].rank = static_cast<int>(r) + 1;
  const auto& best = out.entries[order.front()];
  out.best_id = best.id;
  if (order.size() > 1 && out.entries[order[1]].absolute_distance == best.absolute_distance) {
    out.warnings.push_back("tie on best absolute distance; '" + best.id + "' chosen by N_AL then id");
  }
  for (auto& e : out.entries) {
    e.relative_distance = std::hypot(double(e.n_al - best.n_al), e.n_cp - best.n_cp);
  }
  return out;
}

NcapResult evaluate(const FeatureTable& table, const WeightScheme& scheme) {
  const auto enc = encode_features(table);
  const auto w = normalized_weights(table, scheme);
  std::vector<Direction> dirs;
  for (const auto& f : table.features) dirs.push_back(f.direction);
  std::vector<Coordinate> coords;
  for (std::size_t si = 0; si < table.systems.size(); ++si) {
    const auto& s = table.systems[si];
    int n_al = 0;
    if (s.n_al) n_al = *s.n_al;
    else if (s.capabilities) n_al = autonomy_level(*s.capabilities);
    else fail(ErrorCode::InvalidArgument, "system '" + s.id + "' has neither n_al nor capabilities");
    coords.push_back({s.id, n_al, weighted_product(enc.values[si], w, dirs)});
  }
  auto out = autonomy_distances(coords);
  out.warnings.insert(out.warnings.begin(), enc.notes.begin(), enc.notes.end());
  return out;
}

}  // namespace decisive::ncap
