#pragma once

// Contextual autonomy: triangular membership, hedged linguistic rules,
// zero-order weighted-average inference, axis cascade, normalized per-test
// score and the predictive mission score.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace decisive::cfis {

struct TriangularMf {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  friend bool operator==(const TriangularMf&, const TriangularMf&) = default;
};

/// x is clamped to [lo, hi] first. a == b is a left shoulder (1 for x <= b),
/// b == c a right shoulder (1 for x >= b).
double mf_eval(const TriangularMf& mf, double x, double lo, double hi);

struct Term {
  std::string name;
  TriangularMf mf;
  friend bool operator==(const Term&, const Term&) = default;
};

struct LinguisticVariable {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<Term> terms;
  std::optional<std::string> source;  // id of the FIS whose output feeds this input

  const Term* find(std::string_view term) const;
  friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;
};

struct Antecedent {
  std::string variable;
  bool negated = false;  // Not(term) = 1 - mu
  std::string term;
  friend bool operator==(const Antecedent&, const Antecedent&) = default;
};

struct Rule {
  std::vector<Antecedent> antecedents;
  std::string consequent;  // output level name
  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Fis {
  std::string id;
  std::vector<LinguisticVariable> inputs;
  std::vector<Rule> rules;
  friend bool operator==(const Fis&, const Fis&) = default;
};

struct Hedge {
  bool negated = false;
  std::string term;
  friend bool operator==(const Hedge&, const Hedge&) = default;
};

struct FisConfig {
  std::string test_id;
  std::vector<std::pair<std::string, double>> outputs = default_outputs();
  std::map<std::string, Hedge> hedges;  // label -> (negated, term), e.g. "Many" -> Is(high)
  std::vector<Fis> systems;
  std::string combined;  // id of the final FIS

  static std::vector<std::pair<std::string, double>> default_outputs();

  const Fis& system(std::string_view id) const;
  const Fis* find_system(std::string_view id) const;
  std::optional<double> output_value(std::string_view level) const;

  /// Throws MalformedTuple, UnknownTerm, DanglingReference or CyclicCascade.
  void validate() const;
  /// Dependency order ending at `combined`.
  std::vector<std::string> evaluation_order() const;

  friend bool operator==(const FisConfig&, const FisConfig&) = default;
};

/// Resolves a rule label such as "Low", "Not Low" or "Many" against the
/// declared hedges, then the "Not " prefix, then the bare term name.
/// Matching is case-insensitive; the returned term is the declared spelling.
Antecedent resolve_label(const FisConfig& cfg, const LinguisticVariable& var, std::string_view label);

/// Rule strength = min over antecedents, output = sum w c / sum w.
/// Throws NoRuleFired when every strength is zero.
double fis_eval(const FisConfig& cfg, const Fis& fis, const std::map<std::string, double>& inputs);

/// Same as fis_eval but returns nullopt where no rule fires.
std::optional<double> fis_try_eval(const FisConfig& cfg, const Fis& fis, const std::map<std::string, double>& inputs);

using AxisInputs = std::map<std::string, std::map<std::string, double>>;  // system id -> variable -> value

struct CascadeResult {
  std::map<std::string, double> axis;  // every evaluated FIS except the combined one
  double combined = 0.0;
  bool two_stage = false;
};

/// Evaluates every FIS feeding `combined`. When an unwired FIS named "hi" has
/// inputs, the combined FIS runs twice: combine(combine(MC, EC), HI), with the
/// first-stage result in the slot fed by "mc" and HI in the slot fed by "ec".
CascadeResult cascade_eval(const FisConfig& cfg, const AxisInputs& inputs);

/// combined / combined_at_ideal_mc, capped at 1.
double normalized_test_score(double combined, double combined_at_ideal_mc);

/// Replaces the inputs of FIS `mc_id` with `ideal` and re-runs the cascade.
double ideal_combined(const FisConfig& cfg, const AxisInputs& inputs, const std::string& mc_id,
                      const std::map<std::string, double>& ideal);

/// Absent tests are dropped and the remaining weights renormalized; combined
/// by the weighted product (geometric mean for equal weights). Empty weights
/// mean equal weights.
double predictive_score(const std::map<std::string, std::optional<double>>& scores,
                        const std::map<std::string, double>& weights = {});

// ---------------------------------------------------------------------------
// Sweeps

struct SweepReport {
  std::size_t points = 0;
  std::size_t no_rule = 0;
  double min_output = 0.0;
  double max_output = 0.0;
};

/// Full grid over every input range with at least `min_points` points in total.
/// Uses the OpenMP batch evaluator.
SweepReport sweep(const FisConfig& cfg, const Fis& fis, std::size_t min_points = 10000);

/// Evaluates many input vectors (ordered like fis.inputs). nullopt where no
/// rule fires.
namespace serial {
std::vector<std::optional<double>> batch_eval(const FisConfig& cfg, const Fis& fis,
                                              const std::vector<std::vector<double>>& points);
}
namespace parallel {
std::vector<std::optional<double>> batch_eval(const FisConfig& cfg, const Fis& fis,
                                              const std::vector<std::vector<double>>& points);
}

std::vector<std::vector<double>> sweep_grid(const Fis& fis, std::size_t min_points);

/// Smallest max-term membership over an evenly spaced sweep of the range.
double min_coverage(const LinguisticVariable& var, std::size_t points = 1000);

}  // namespace decisive::cfis
