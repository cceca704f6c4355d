#pragma once

// Completion-rate confidence, Tukey quartiles / IQR filtering, Mann-Whitney U
// and a Welch t convenience column.

#include <string>
#include <utility>
#include <vector>

namespace decisive::stats {

/// 1 - sum_{k=0..f} C(n,k) (1-p0)^k p0^(n-k), n = s + f.
double completion_confidence(int successes, int failures, double p0);

struct CompletionResult {
  int successes = 0;
  int failures = 0;
  double rate = 0.0;
  std::vector<std::pair<double, double>> confidence_at;  // (p0, confidence)
};

CompletionResult completion(int successes, int failures, const std::vector<double>& p0s = {});

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

/// Linear interpolation at 1-based positions (n+1)/4, (n+1)/2, 3(n+1)/4,
/// clamped to the sample ends.
Quartiles quartiles(std::vector<double> values);

struct IqrResult {
  std::vector<double> kept;     // input order
  std::vector<double> removed;  // input order
  double lower_fence = 0.0;
  double upper_fence = 0.0;
  bool warning = false;         // removed more than 10% of the input
  std::string message;
};

IqrResult iqr_filter(const std::vector<double>& values);

struct MannWhitneyResult {
  double u = 0.0;    // min(u_a, u_b)
  double u_a = 0.0;
  double u_b = 0.0;
  double p_two_sided = 1.0;
  bool exact = false;
};

/// Exact null distribution over midranks when min(|a|,|b|) <= 8 and
/// |a|+|b| <= kExactPooledLimit, otherwise normal approximation with tie and
/// continuity correction.
inline constexpr std::size_t kExactSmallSide = 8;
inline constexpr std::size_t kExactPooledLimit = 100;
MannWhitneyResult mann_whitney(const std::vector<double>& a, const std::vector<double>& b);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 1.0;
};

WelchResult welch_t(const std::vector<double>& a, const std::vector<double>& b);

struct Descriptive {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Descriptive describe(const std::vector<double>& v);

}  // namespace decisive::stats
