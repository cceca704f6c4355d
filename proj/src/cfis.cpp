#include "decisive/cfis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "decisive/error.hpp"

namespace decisive::cfis {

double mf_eval(const TriangularMf& mf, double x, double lo, double hi) {
  x = std::clamp(x, lo, hi);
  if (mf.a == mf.b && x <= mf.b) return 1.0;
  if (mf.b == mf.c && x >= mf.b) return 1.0;
  if (x < mf.a || x > mf.c) return 0.0;
  if (x == mf.b) return 1.0;
  if (x < mf.b) return (x - mf.a) / (mf.b - mf.a);
  return (mf.c - x) / (mf.c - mf.b);
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool iequals(std::string_view a, std::string_view b) { return lower(a) == lower(b); }

// Rules resolved to indices for the hot loop.
struct Compiled {
  struct Lit {
    std::size_t var;
    std::size_t term;
    bool negated;
  };
  struct CRule {
    std::vector<Lit> lits;
    double out;
  };
  std::vector<const LinguisticVariable*> vars;
  std::vector<CRule> rules;

  Compiled(const FisConfig& cfg, const Fis& fis) {
    for (const auto& v : fis.inputs) vars.push_back(&v);
    for (const auto& r : fis.rules) {
      CRule cr{{}, 0.0};
      const auto out = cfg.output_value(r.consequent);
      if (!out) fail(ErrorCode::UnknownTerm, "rule consequent '" + r.consequent + "' is not an output level");
      cr.out = *out;
      for (const auto& a : r.antecedents) {
        std::size_t vi = 0;
        while (vi < fis.inputs.size() && fis.inputs[vi].name != a.variable) ++vi;
        if (vi == fis.inputs.size()) fail(ErrorCode::UnknownTerm, "rule references unknown variable '" + a.variable + "'");
        const auto& terms = fis.inputs[vi].terms;
        std::size_t ti = 0;
        while (ti < terms.size() && terms[ti].name != a.term) ++ti;
        if (ti == terms.size()) {
          fail(ErrorCode::UnknownTerm, "variable '" + a.variable + "' has no term '" + a.term + "'");
        }
        cr.lits.push_back({vi, ti, a.negated});
      }
      rules.push_back(std::move(cr));
    }
  }

  std::optional<double> eval(const double* x) const {
    double num = 0.0, den = 0.0;
    for (const auto& r : rules) {
      double w = 1.0;
      for (const auto& l : r.lits) {
        const auto* v = vars[l.var];
        double mu = mf_eval(v->terms[l.term].mf, x[l.var], v->lo, v->hi);
        if (l.negated) mu = 1.0 - mu;
        w = std::min(w, mu);
      }
      num += w * r.out;
      den += w;
    }
    if (den == 0.0) return std::nullopt;
    return num / den;
  }
};

std::vector<double> gather(const Fis& fis, const std::map<std::string, double>& inputs) {
  std::vector<double> x;
  for (const auto& v : fis.inputs) {
    const auto it = inputs.find(v.name);
    if (it == inputs.end()) fail(ErrorCode::InvalidArgument, "FIS '" + fis.id + "' missing input '" + v.name + "'");
    if (!std::isfinite(it->second)) fail(ErrorCode::DomainError, "input '" + v.name + "' is not finite");
    x.push_back(it->second);
  }
  return x;
}

}  // namespace

const Term* LinguisticVariable::find(std::string_view term) const {
  for (const auto& t : terms)
    if (iequals(t.name, term)) return &t;
  return nullptr;
}

std::vector<std::pair<std::string, double>> FisConfig::default_outputs() {
  return {{"Very Bad", 0.0}, {"Bad", 0.25}, {"Medium", 0.5}, {"Good", 0.75}, {"Very Good", 1.0}};
}

const Fis* FisConfig::find_system(std::string_view id) const {
  for (const auto& s : systems)
    if (s.id == id) return &s;
  return nullptr;
}

const Fis& FisConfig::system(std::string_view id) const {
  const auto* s = find_system(id);
  if (!s) fail(ErrorCode::DanglingReference, "no FIS with id '" + std::string(id) + "'");
  return *s;
}

std::optional<double> FisConfig::output_value(std::string_view level) const {
  for (const auto& [name, v] : outputs)
    if (iequals(name, level)) return v;
  return std::nullopt;
}

void FisConfig::validate() const {
  if (outputs.empty()) fail(ErrorCode::MalformedInput, "no output levels");
  for (const auto& [name, v] : outputs) {
    if (!(v >= 0.0 && v <= 1.0)) fail(ErrorCode::MalformedInput, "output level '" + name + "' outside [0,1]");
  }
  if (systems.empty()) fail(ErrorCode::MalformedInput, "no FIS defined");
  std::set<std::string> ids;
  for (const auto& s : systems) {
    if (!ids.insert(s.id).second) fail(ErrorCode::DuplicateId, "duplicate FIS id '" + s.id + "'");
  }
  if (!find_system(combined)) fail(ErrorCode::DanglingReference, "combined FIS '" + combined + "' not defined");
  for (const auto& s : systems) {
    if (s.inputs.empty()) fail(ErrorCode::MalformedInput, "FIS '" + s.id + "' has no inputs");
    if (s.rules.empty()) fail(ErrorCode::MalformedInput, "FIS '" + s.id + "' has no rules");
    for (const auto& v : s.inputs) {
      if (!(v.lo < v.hi)) fail(ErrorCode::MalformedTuple, "variable '" + v.name + "' range is empty");
      if (v.terms.empty()) fail(ErrorCode::MalformedInput, "variable '" + v.name + "' has no terms");
      for (const auto& t : v.terms) {
        const auto& m = t.mf;
        if (!(m.a <= m.b && m.b <= m.c)) {
          fail(ErrorCode::MalformedTuple, "variable '" + v.name + "' term '" + t.name + "' needs a <= b <= c");
        }
        if (m.a < v.lo || m.c > v.hi) {
          fail(ErrorCode::MalformedTuple, "variable '" + v.name + "' term '" + t.name + "' leaves the range");
        }
      }
      if (v.source && !find_system(*v.source)) {
        fail(ErrorCode::DanglingReference, "input '" + v.name + "' sourced from unknown FIS '" + *v.source + "'");
      }
    }
    Compiled check(*this, s);
    (void)check;
  }
  (void)evaluation_order();
}

std::vector<std::string> FisConfig::evaluation_order() const {
  std::vector<std::string> order;
  std::map<std::string, int> state;  // 1 visiting, 2 done
  std::function<void(const Fis&)> visit = [&](const Fis& f) {
    auto& st = state[f.id];
    if (st == 2) return;
    if (st == 1) fail(ErrorCode::CyclicCascade, "cascade cycle through FIS '" + f.id + "'");
    st = 1;
    for (const auto& v : f.inputs)
      if (v.source) visit(system(*v.source));
    state[f.id] = 2;
    order.push_back(f.id);
  };
  for (const auto& s : systems) visit(s);
  // combined last
  std::stable_partition(order.begin(), order.end(), [&](const std::string& id) { return id != combined; });
  return order;
}

Antecedent resolve_label(const FisConfig& cfg, const LinguisticVariable& var, std::string_view label) {
  auto bare = [&](std::string_view name, bool negated) -> std::optional<Antecedent> {
    if (const auto* t = var.find(name)) return Antecedent{var.name, negated, t->name};
    return std::nullopt;
  };
  for (const auto& [key, h] : cfg.hedges) {
    if (iequals(key, label)) {
      if (auto a = bare(h.term, h.negated)) return *a;
      fail(ErrorCode::UnknownTerm, "hedge '" + key + "' names unknown term '" + h.term + "' of '" + var.name + "'");
    }
  }
  if (auto a = bare(label, false)) return *a;
  const std::string l = lower(label);
  if (l.rfind("not ", 0) == 0) {
    if (auto a = bare(std::string_view(label).substr(4), true)) return *a;
  }
  fail(ErrorCode::UnknownTerm, "'" + std::string(label) + "' is not a term of '" + var.name + "'");
}

std::optional<double> fis_try_eval(const FisConfig& cfg, const Fis& fis, const std::map<std::string, double>& inputs) {
  const Compiled c(cfg, fis);
  const auto x = gather(fis, inputs);
  return c.eval(x.data());
}

double fis_eval(const FisConfig& cfg, const Fis& fis, const std::map<std::string, double>& inputs) {
  const auto r = fis_try_eval(cfg, fis, inputs);
  if (!r) fail(ErrorCode::NoRuleFired, "no rule of FIS '" + fis.id + "' fired");
  return *r;
}

namespace {

double eval_with_sources(const FisConfig& cfg, const Fis& fis, const AxisInputs& inputs,
                         const std::map<std::string, double>& outputs) {
  std::map<std::string, double> x;
  const auto it = inputs.find(fis.id);
  for (const auto& v : fis.inputs) {
    if (v.source) {
      x[v.name] = outputs.at(*v.source);
    } else if (it != inputs.end() && it->second.count(v.name)) {
      x[v.name] = it->second.at(v.name);
    } else {
      fail(ErrorCode::InvalidArgument, "FIS '" + fis.id + "' missing input '" + v.name + "'");
    }
  }
  return fis_eval(cfg, fis, x);
}

}  // namespace

CascadeResult cascade_eval(const FisConfig& cfg, const AxisInputs& inputs) {
  CascadeResult out;
  std::map<std::string, double> outputs;
  const Fis& comb = cfg.system(cfg.combined);

  // Only systems the combined FIS depends on.
  std::set<std::string> needed{cfg.combined};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& s : cfg.systems) {
      if (!needed.count(s.id)) continue;
      for (const auto& v : s.inputs)
        if (v.source && needed.insert(*v.source).second) grew = true;
    }
  }
  for (const auto& id : cfg.evaluation_order()) {
    if (!needed.count(id)) continue;
    outputs[id] = eval_with_sources(cfg, cfg.system(id), inputs, outputs);
  }
  out.combined = outputs.at(cfg.combined);
  outputs.erase(cfg.combined);
  out.axis = outputs;

  const Fis* hi = cfg.find_system("hi");
  if (hi && !needed.count("hi") && inputs.count("hi")) {
    const double hi_score = eval_with_sources(cfg, *hi, inputs, outputs);
    out.axis["hi"] = hi_score;
    std::map<std::string, double> x;
    for (const auto& v : comb.inputs) {
      if (v.source == std::optional<std::string>("mc")) x[v.name] = out.combined;
      else if (v.source == std::optional<std::string>("ec")) x[v.name] = hi_score;
      else fail(ErrorCode::InvalidArgument, "two-stage combine needs combined inputs fed by 'mc' and 'ec'");
    }
    out.combined = fis_eval(cfg, comb, x);
    out.two_stage = true;
  }
  return out;
}

double normalized_test_score(double combined, double combined_at_ideal_mc) {
  if (!(combined_at_ideal_mc > 0.0)) fail(ErrorCode::ZeroDenominator, "ideal combined score is zero");
  return std::min(1.0, combined / combined_at_ideal_mc);
}

double ideal_combined(const FisConfig& cfg, const AxisInputs& inputs, const std::string& mc_id,
                      const std::map<std::string, double>& ideal) {
  AxisInputs copy = inputs;
  copy[mc_id] = ideal;
  return cascade_eval(cfg, copy).combined;
}

double predictive_score(const std::map<std::string, std::optional<double>>& scores,
                        const std::map<std::string, double>& weights) {
  double wsum = 0.0, log_p = 0.0;
  std::vector<std::pair<double, double>> present;  // (score, weight)
  for (const auto& [test, s] : scores) {
    if (!s) continue;
    if (!(*s > 0.0)) fail(ErrorCode::NonPositiveScore, "test '" + test + "' score must be positive");
    if (*s > 1.0) fail(ErrorCode::DomainError, "test '" + test + "' score exceeds 1");
    double w = 1.0;
    if (!weights.empty()) {
      const auto it = weights.find(test);
      if (it == weights.end()) fail(ErrorCode::InvalidArgument, "no weight for test '" + test + "'");
      w = it->second;
      if (w < 0.0) fail(ErrorCode::DomainError, "negative weight for test '" + test + "'");
    }
    present.emplace_back(*s, w);
    wsum += w;
  }
  if (present.empty()) fail(ErrorCode::AllTestsMissing, "no test scores present");
  if (wsum == 0.0) fail(ErrorCode::ZeroDenominator, "weights of the present tests sum to zero");
  for (const auto& [s, w] : present) log_p += (w / wsum) * std::log(s);
  return std::exp(log_p);
}

std::vector<std::vector<double>> sweep_grid(const Fis& fis, std::size_t min_points) {
  const std::size_t k = fis.inputs.size();
  std::size_t m = 2;
  auto total = [&](std::size_t per) {
    std::size_t t = 1;
    for (std::size_t i = 0; i < k; ++i) t *= per;
    return t;
  };
  while (total(m) < min_points) ++m;
  std::vector<std::vector<double>> pts;
  pts.reserve(total(m));
  std::vector<std::size_t> idx(k, 0);
  for (std::size_t n = 0, N = total(m); n < N; ++n) {
    std::vector<double> x(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& v = fis.inputs[i];
      x[i] = v.lo + (v.hi - v.lo) * static_cast<double>(idx[i]) / static_cast<double>(m - 1);
    }
    pts.push_back(std::move(x));
    for (std::size_t i = 0; i < k && ++idx[i] == m; ++i) idx[i] = 0;
  }
  return pts;
}

namespace serial {
std::vector<std::optional<double>> batch_eval(const FisConfig& cfg, const Fis& fis,
                                              const std::vector<std::vector<double>>& points) {
  const Compiled c(cfg, fis);
  std::vector<std::optional<double>> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = c.eval(points[i].data());
  return out;
}
}  // namespace serial

namespace parallel {
std::vector<std::optional<double>> batch_eval(const FisConfig& cfg, const Fis& fis,
                                              const std::vector<std::vector<double>>& points) {
  const Compiled c(cfg, fis);
  std::vector<std::optional<double>> out(points.size());
  const auto n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) out[i] = c.eval(points[i].data());
  return out;
}
}  // namespace parallel

SweepReport sweep(const FisConfig& cfg, const Fis& fis, std::size_t min_points) {
  const auto pts = sweep_grid(fis, min_points);
  const auto res = parallel::batch_eval(cfg, fis, pts);
  SweepReport out;
  out.points = pts.size();
  out.min_output = std::numeric_limits<double>::infinity();
  out.max_output = -std::numeric_limits<double>::infinity();
  for (const auto& r : res) {
    if (!r) {
      ++out.no_rule;
      continue;
    }
    out.min_output = std::min(out.min_output, *r);
    out.max_output = std::max(out.max_output, *r);
  }
  return out;
}

double min_coverage(const LinguisticVariable& var, std::size_t points) {
  double worst = 1.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = var.lo + (var.hi - var.lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    double best = 0.0;
    for (const auto& t : var.terms) best = std::max(best, mf_eval(t.mf, x, var.lo, var.hi));
    worst = std::min(worst, best);
  }
  return worst;
}

}  // namespace decisive::cfis
