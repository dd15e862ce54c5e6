#pragma once

// Shared learners and statistics: a seeded random forest (CART, gini),
// one-way ANOVA, RMSE and a few evaluation helpers.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace newsgauge::learn {

/// Row-major feature matrix.
using Matrix = std::vector<std::vector<double>>;

struct ForestOptions {
  std::size_t n_trees = 100;
  std::uint64_t seed = 0;
  /// Features drawn per split; defaults to ceil(sqrt(F)).
  std::optional<std::size_t> features_per_split;
};

class Forest {
 public:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // go left when x[feature] <= threshold
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t klass = 0;  // index into classes() for leaves
  };
  using Tree = std::vector<Node>;

  Forest() = default;
  Forest(std::vector<int> classes, std::size_t n_features, std::uint64_t seed, std::vector<Tree> trees);

  /// Unpruned CART trees (min leaf 1) on bootstrap samples. Rows are put in a
  /// canonical order first, so the result does not depend on row order.
  /// Throws PreconditionError for fewer than two classes or ragged input.
  static Forest train(const Matrix& X, std::span<const int> y, const ForestOptions& options = {});

  /// Vote share per class, aligned with classes().
  [[nodiscard]] std::vector<double> predict_proba(std::span<const double> x) const;
  [[nodiscard]] int predict(std::span<const double> x) const;

  [[nodiscard]] const std::vector<int>& classes() const { return classes_; }
  [[nodiscard]] std::size_t n_features() const { return n_features_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] const std::vector<Tree>& trees() const { return trees_; }
  [[nodiscard]] bool trained() const { return !trees_.empty(); }

  friend bool operator==(const Forest& a, const Forest& b);

 private:
  std::vector<int> classes_;
  std::size_t n_features_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Tree> trees_;
};

bool operator==(const Forest::Node& a, const Forest::Node& b);

/// Versioned JSON model file.
void save_forest(const Forest& forest, const std::filesystem::path& path);
Forest load_forest(const std::filesystem::path& path);

/// Replaces missing values (NaN) by the training median of each column and
/// appends one 0/1 "was missing" column per input column that had gaps.
class MedianImputer {
 public:
  MedianImputer() = default;
  static MedianImputer fit(const Matrix& X);

  [[nodiscard]] std::vector<double> transform(std::span<const double> row) const;
  [[nodiscard]] Matrix transform(const Matrix& X) const;

  [[nodiscard]] const std::vector<double>& medians() const { return medians_; }
  [[nodiscard]] const std::vector<std::size_t>& flagged_columns() const { return flagged_; }

  MedianImputer(std::vector<double> medians, std::vector<std::size_t> flagged)
      : medians_(std::move(medians)), flagged_(std::move(flagged)) {}

 private:
  std::vector<double> medians_;
  std::vector<std::size_t> flagged_;
};

struct AnovaResult {
  double f_statistic = 0.0;
  double p_value = 1.0;
  int dof_between = 0;
  int dof_within = 0;
};

/// Classic one-way ANOVA. Requires at least two groups of at least two
/// values. When all values are equal the result is F = 0, p = 1.
AnovaResult anova_f(std::span<const std::vector<double>> groups);

/// Survival function of the F distribution.
double f_survival(double f, double dof_between, double dof_within);

/// Significance marker: "***" for p < 0.005, "**" for p < 0.01, "*" for p < 0.05.
std::string significance_stars(double p_value);

/// Root mean squared difference. Throws on length mismatch or empty input.
double rmse(std::span<const double> a, std::span<const double> b);

/// Area under the ROC curve with ties counted as one half.
double roc_auc(std::span<const double> scores, std::span<const int> positive);

/// Stratified fold assignment (fold index per row), seeded.
std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t k, std::uint64_t seed);

/// Nearest-rank percentile of an unsorted sample: value at rank ceil(p/100 * n).
double nearest_rank_percentile(std::vector<double> sample, double percent);

}  // namespace newsgauge::learn
