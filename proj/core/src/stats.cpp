#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>

#include "newsgauge/error.hpp"
#include "newsgauge/learn.hpp"
#include "newsgauge/random.hpp"

namespace newsgauge::learn {

double f_survival(double f, double dof_between, double dof_within) {
  if (!(dof_between > 0) || !(dof_within > 0)) throw PreconditionError("f_survival: degrees of freedom must be positive");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  const double x = dof_within / (dof_within + dof_between * f);
  return boost::math::ibeta(dof_within / 2.0, dof_between / 2.0, x);
}

AnovaResult anova_f(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw PreconditionError("anova_f: need at least two groups");
  std::size_t total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw PreconditionError("anova_f: every group needs at least two values");
    total += g.size();
    grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
  }
  const double grand_mean = grand_sum / static_cast<double>(total);
  double ssb = 0.0;
  double ssw = 0.0;
  for (const auto& g : groups) {
    const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    ssb += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
    for (double v : g) ssw += (v - mean) * (v - mean);
  }
  AnovaResult r;
  r.dof_between = static_cast<int>(groups.size()) - 1;
  r.dof_within = static_cast<int>(total - groups.size());
  // Relative guards so that constant columns do not produce round-off F values.
  const double scale = std::max(1.0, grand_mean * grand_mean * static_cast<double>(total));
  if (ssb <= 1e-14 * scale) {
    r.f_statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  if (ssw <= 1e-14 * scale) {
    r.f_statistic = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
    return r;
  }
  r.f_statistic = (ssb / r.dof_between) / (ssw / r.dof_within);
  r.p_value = f_survival(r.f_statistic, r.dof_between, r.dof_within);
  return r;
}

std::string significance_stars(double p_value) {
  if (p_value < 0.005) return "***";
  if (p_value < 0.01) return "**";
  if (p_value < 0.05) return "*";
  return "";
}

double rmse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw PreconditionError("rmse: length mismatch");
  if (a.empty()) throw PreconditionError("rmse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum / static_cast<double>(a.size()));
}

double roc_auc(std::span<const double> scores, std::span<const int> positive) {
  if (scores.size() != positive.size()) throw PreconditionError("roc_auc: length mismatch");
  double pairs = 0.0;
  double wins = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!positive[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (positive[j]) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  if (pairs == 0.0) throw PreconditionError("roc_auc: need both positive and negative examples");
  return wins / pairs;
}

std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw PreconditionError("stratified_folds: k must be at least 2");
  std::vector<int> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::vector<std::size_t> fold(labels.size(), 0);
  Rng rng(seed);
  std::size_t next = 0;
  for (int c : classes) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == c) members.push_back(i);
    }
    rng.shuffle(members.begin(), members.end());
    for (auto i : members) fold[i] = next++ % k;
  }
  return fold;
}

double nearest_rank_percentile(std::vector<double> sample, double percent) {
  if (sample.empty()) throw PreconditionError("nearest_rank_percentile: empty sample");
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  auto rank = static_cast<std::size_t>(std::ceil(percent / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sample.size());
  return sample[rank - 1];
}

}  // namespace newsgauge::learn
