#include "decisive/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "decisive/core.hpp"
#include "decisive/error.hpp"

namespace decisive::stats {

double completion_confidence(int successes, int failures, double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) fail(ErrorCode::InvalidP0, "p0 must lie strictly between 0 and 1");
  if (successes < 0 || failures < 0) fail(ErrorCode::InvalidArgument, "trial counts must be non-negative");
  const int n = successes + failures;
  if (n < 1) fail(ErrorCode::InvalidArgument, "need at least one trial");
  const double lq = std::log1p(-p0);
  const double lp = std::log(p0);
  double tail = 0.0;
  for (int k = 0; k <= failures; ++k) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    tail += std::exp(lc + k * lq + (n - k) * lp);
  }
  return std::clamp(1.0 - tail, 0.0, 1.0);
}

CompletionResult completion(int successes, int failures, const std::vector<double>& p0s) {
  if (successes < 0 || failures < 0) fail(ErrorCode::InvalidArgument, "trial counts must be non-negative");
  if (successes + failures == 0) fail(ErrorCode::EmptySample, "no trials attempted");
  CompletionResult out{successes, failures, static_cast<double>(successes) / (successes + failures), {}};
  for (double p0 : p0s) out.confidence_at.emplace_back(p0, completion_confidence(successes, failures, p0));
  return out;
}

namespace {

double interpolate_at(const std::vector<double>& sorted, double pos) {
  const auto n = static_cast<double>(sorted.size());
  if (pos <= 1.0) return sorted.front();
  if (pos >= n) return sorted.back();
  const double lo = std::floor(pos);
  const auto i = static_cast<std::size_t>(lo) - 1;
  return sorted[i] + (pos - lo) * (sorted[i + 1] - sorted[i]);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) fail(ErrorCode::EmptySample, "quartiles of an empty sample");
  std::sort(values.begin(), values.end());
  const double n1 = static_cast<double>(values.size()) + 1.0;
  return {interpolate_at(values, n1 / 4.0), interpolate_at(values, n1 / 2.0), interpolate_at(values, 3.0 * n1 / 4.0)};
}

IqrResult iqr_filter(const std::vector<double>& values) {
  if (values.size() < 4) fail(ErrorCode::TooFewValues, "IQR filtering needs at least 4 values");
  const auto q = quartiles(values);
  const double r = q.q3 - q.q1;
  IqrResult out;
  out.lower_fence = q.q1 - 1.5 * r;
  out.upper_fence = q.q3 + 1.5 * r;
  for (double v : values) {
    if (v < out.lower_fence || v > out.upper_fence) out.removed.push_back(v);
    else out.kept.push_back(v);
  }
  if (out.removed.size() * 10 > values.size()) {
    out.warning = true;
    out.message = "IQR filter removed " + std::to_string(out.removed.size()) + " of " +
                  std::to_string(values.size()) + " values (more than 10%)";
  }
  return out;
}

MannWhitneyResult mann_whitney(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptySample, "Mann-Whitney needs two non-empty samples");
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  std::vector<std::pair<double, bool>> pooled;  // (value, from_a)
  pooled.reserve(n);
  for (double v : a) pooled.emplace_back(v, true);
  for (double v : b) pooled.emplace_back(v, false);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i].first < pooled[j].first; });

  // Doubled midranks stay integral.
  std::vector<long long> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]].first == pooled[order[i]].first) ++j;
    const long long r2 = static_cast<long long>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = r2;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  long long sum2_a = 0;
  for (std::size_t i = 0; i < n1; ++i) sum2_a += rank2[i];
  MannWhitneyResult out;
  out.u_a = sum2_a / 2.0 - n1 * (n1 + 1) / 2.0;
  out.u_b = static_cast<double>(n1 * n2) - out.u_a;
  out.u = std::min(out.u_a, out.u_b);

  if (std::min(n1, n2) <= kExactSmallSide && n <= kExactPooledLimit) {
    // Count subsets of the smaller sample's size by doubled rank sum.
    const bool a_small = n1 <= n2;
    const std::size_t m = a_small ? n1 : n2;
    long long observed = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((i < n1) == a_small) observed += rank2[i];
    long long max_sum = 0;
    for (long long r : rank2) max_sum += r;
    const auto width = static_cast<std::size_t>(max_sum + 1);
    std::vector<std::vector<double>> count(m + 1, std::vector<double>(width, 0.0));
    count[0][0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(rank2[i]);
      for (std::size_t k = std::min(m, i + 1); k >= 1; --k) {
        auto& dst = count[k];
        const auto& src = count[k - 1];
        for (std::size_t s = width; s-- > r;) dst[s] += src[s - r];
      }
    }
    double total = 0.0, lower = 0.0, upper = 0.0;
    for (std::size_t s = 0; s < width; ++s) {
      const double c = count[m][s];
      total += c;
      if (static_cast<long long>(s) <= observed) lower += c;
      if (static_cast<long long>(s) >= observed) upper += c;
    }
    out.p_two_sided = std::min(1.0, 2.0 * std::min(lower, upper) / total);
    out.exact = true;
    return out;
  }

  const double nn = static_cast<double>(n);
  const double mu = n1 * n2 / 2.0;
  const double var = n1 * n2 / 12.0 * ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
  if (var <= 0.0) {
    out.p_two_sided = 1.0;
    return out;
  }
  const double z = std::max(0.0, std::abs(out.u_a - mu) - 0.5) / std::sqrt(var);
  out.p_two_sided = std::min(1.0, 2.0 * normal_sf(z));
  return out;
}

WelchResult welch_t(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) fail(ErrorCode::InsufficientSamples, "Welch t needs two values per sample");
  const double va = std::pow(sample_stddev(a), 2) / a.size();
  const double vb = std::pow(sample_stddev(b), 2) / b.size();
  const double diff = mean(a) - mean(b);
  WelchResult out;
  if (va + vb == 0.0) {
    out.t = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    out.df = static_cast<double>(a.size() + b.size() - 2);
    out.p_two_sided = diff == 0.0 ? 1.0 : 0.0;
    return out;
  }
  out.t = diff / std::sqrt(va + vb);
  out.df = (va + vb) * (va + vb) / (va * va / (a.size() - 1.0) + vb * vb / (b.size() - 1.0));
  boost::math::students_t dist(out.df);
  out.p_two_sided = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(out.t))));
  return out;
}

Descriptive describe(const std::vector<double>& v) {
  if (v.empty()) fail(ErrorCode::EmptySample, "empty sample");
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {v.size(), mean(v), sample_stddev(v), *lo, *hi};
}

}  // namespace decisive::stats
