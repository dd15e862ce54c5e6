#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "newsgauge/error.hpp"
#include "newsgauge/learn.hpp"
#include "newsgauge/random.hpp"

namespace newsgauge::learn {
namespace {

struct TrainingSet {
  Matrix rows;                   // canonical order
  std::vector<std::int32_t> y;   // class indices
  std::size_t n_classes = 0;
  std::size_t n_features = 0;
};

struct Split {
  std::int32_t feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
};

double weighted_gini(std::span<const std::size_t> counts, std::size_t total) {
  if (total == 0) return 0.0;
  double sq = 0.0;
  for (auto c : counts) sq += static_cast<double>(c) * static_cast<double>(c);
  return static_cast<double>(total) - sq / static_cast<double>(total);
}

std::int32_t majority(std::span<const std::size_t> counts) {
  return static_cast<std::int32_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

class TreeBuilder {
 public:
  TreeBuilder(const TrainingSet& data, std::size_t features_per_split, Rng& rng)
      : data_(data), per_split_(features_per_split), rng_(rng) {}

  Forest::Tree build(std::vector<std::size_t> sample) {
    Forest::Tree tree;
    struct Pending {
      std::int32_t node;
      std::vector<std::size_t> sample;
    };
    std::vector<Pending> stack;
    tree.push_back({});
    stack.push_back({0, std::move(sample)});
    while (!stack.empty()) {
      Pending job = std::move(stack.back());
      stack.pop_back();
      std::vector<std::size_t> counts(data_.n_classes, 0);
      for (auto i : job.sample) ++counts[static_cast<std::size_t>(data_.y[i])];
      const auto klass = majority(counts);
      const bool pure = counts[static_cast<std::size_t>(klass)] == job.sample.size();
      Split split;
      if (!pure) split = best_split(job.sample);
      if (pure || split.feature < 0) {
        tree[static_cast<std::size_t>(job.node)].klass = klass;
        continue;
      }
      std::vector<std::size_t> left;
      std::vector<std::size_t> right;
      const auto f = static_cast<std::size_t>(split.feature);
      for (auto i : job.sample) (data_.rows[i][f] <= split.threshold ? left : right).push_back(i);
      const auto left_id = static_cast<std::int32_t>(tree.size());
      tree.push_back({});
      tree.push_back({});
      auto& node = tree[static_cast<std::size_t>(job.node)];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = left_id;
      node.right = left_id + 1;
      node.klass = klass;
      stack.push_back({left_id + 1, std::move(right)});
      stack.push_back({left_id, std::move(left)});
    }
    return tree;
  }

 private:
  // Draws features in random order; evaluates at least per_split_ of them and
  // keeps drawing past that only while no valid split has been found.
  Split best_split(const std::vector<std::size_t>& sample) {
    std::vector<std::size_t> order(data_.n_features);
    std::iota(order.begin(), order.end(), 0);
    Split best;
    double best_impurity = std::numeric_limits<double>::infinity();
    for (std::size_t drawn = 0; drawn < order.size(); ++drawn) {
      if (drawn >= per_split_ && best.feature >= 0) break;
      std::swap(order[drawn], order[drawn + rng_.index(order.size() - drawn)]);
      const auto f = order[drawn];
      evaluate_feature(sample, f, best, best_impurity);
    }
    return best;
  }

  void evaluate_feature(const std::vector<std::size_t>& sample, std::size_t f, Split& best, double& best_impurity) {
    sorted_.assign(sample.begin(), sample.end());
    std::stable_sort(sorted_.begin(), sorted_.end(),
                     [&](std::size_t a, std::size_t b) { return data_.rows[a][f] < data_.rows[b][f]; });
    std::vector<std::size_t> left(data_.n_classes, 0);
    std::vector<std::size_t> right(data_.n_classes, 0);
    for (auto i : sorted_) ++right[static_cast<std::size_t>(data_.y[i])];
    const std::size_t n = sorted_.size();
    for (std::size_t pos = 0; pos + 1 < n; ++pos) {
      const auto c = static_cast<std::size_t>(data_.y[sorted_[pos]]);
      ++left[c];
      --right[c];
      const double lo = data_.rows[sorted_[pos]][f];
      const double hi = data_.rows[sorted_[pos + 1]][f];
      if (!(lo < hi)) continue;
      const double impurity = weighted_gini(left, pos + 1) + weighted_gini(right, n - pos - 1);
      if (impurity < best_impurity) {
        best_impurity = impurity;
        double mid = lo + (hi - lo) / 2.0;
        if (!(mid < hi)) mid = lo;
        best = {static_cast<std::int32_t>(f), mid, impurity};
      }
    }
  }

  const TrainingSet& data_;
  std::size_t per_split_;
  Rng& rng_;
  std::vector<std::size_t> sorted_;
};

TrainingSet canonical_training_set(const Matrix& X, std::span<const int> y, const std::vector<int>& classes) {
  TrainingSet data;
  data.n_classes = classes.size();
  data.n_features = X.front().size();
  std::vector<std::size_t> order(X.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (X[a] != X[b]) return X[a] < X[b];
    return y[a] < y[b];
  });
  for (auto i : order) {
    data.rows.push_back(X[i]);
    data.y.push_back(static_cast<std::int32_t>(std::lower_bound(classes.begin(), classes.end(), y[i]) - classes.begin()));
  }
  return data;
}

}  // namespace

Forest::Forest(std::vector<int> classes, std::size_t n_features, std::uint64_t seed, std::vector<Tree> trees)
    : classes_(std::move(classes)), n_features_(n_features), seed_(seed), trees_(std::move(trees)) {}

Forest Forest::train(const Matrix& X, std::span<const int> y, const ForestOptions& options) {
  if (X.empty() || X.size() != y.size()) throw PreconditionError("train_forest: need one label per non-empty row");
  const std::size_t n_features = X.front().size();
  if (n_features == 0) throw PreconditionError("train_forest: rows have no features");
  for (const auto& row : X) {
    if (row.size() != n_features) throw PreconditionError("train_forest: ragged feature matrix");
    for (double v : row) {
      if (std::isnan(v)) throw PreconditionError("train_forest: missing value; impute before training");
    }
  }
  std::vector<int> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2) throw PreconditionError("train_forest: need at least two classes");
  if (options.n_trees == 0) throw PreconditionError("train_forest: n_trees must be positive");

  const TrainingSet data = canonical_training_set(X, y, classes);
  const std::size_t per_split = options.features_per_split.value_or(
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_features)))));

  std::vector<Tree> trees;
  trees.reserve(options.n_trees);
  const std::size_t n = data.rows.size();
  for (std::size_t t = 0; t < options.n_trees; ++t) {
    Rng rng(mix_seed(options.seed, t));
    std::vector<std::size_t> bootstrap(n);
    for (auto& i : bootstrap) i = rng.index(n);
    TreeBuilder builder(data, std::max<std::size_t>(1, per_split), rng);
    trees.push_back(builder.build(std::move(bootstrap)));
  }
  return Forest(std::move(classes), n_features, options.seed, std::move(trees));
}

std::vector<double> Forest::predict_proba(std::span<const double> x) const {
  if (!trained()) throw PreconditionError("predict_proba: forest is not trained");
  if (x.size() != n_features_) throw PreconditionError("predict_proba: feature count mismatch");
  std::vector<double> votes(classes_.size(), 0.0);
  for (const auto& tree : trees_) {
    std::size_t node = 0;
    while (tree[node].feature >= 0) {
      const auto& nd = tree[node];
      node = static_cast<std::size_t>(x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right);
    }
    votes[static_cast<std::size_t>(tree[node].klass)] += 1.0;
  }
  for (double& v : votes) v /= static_cast<double>(trees_.size());
  return votes;
}

int Forest::predict(std::span<const double> x) const {
  const auto p = predict_proba(x);
  return classes_[static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin())];
}

bool operator==(const Forest::Node& a, const Forest::Node& b) {
  return a.feature == b.feature && a.threshold == b.threshold && a.left == b.left && a.right == b.right &&
         a.klass == b.klass;
}

bool operator==(const Forest& a, const Forest& b) {
  return a.classes_ == b.classes_ && a.n_features_ == b.n_features_ && a.seed_ == b.seed_ && a.trees_ == b.trees_;
}

// --- imputation -----------------------------------------------------------------

MedianImputer MedianImputer::fit(const Matrix& X) {
  if (X.empty()) throw PreconditionError("MedianImputer::fit: empty matrix");
  const std::size_t F = X.front().size();
  std::vector<double> medians(F, 0.0);
  std::vector<std::size_t> flagged;
  for (std::size_t f = 0; f < F; ++f) {
    std::vector<double> present;
    for (const auto& row : X) {
      if (!std::isnan(row[f])) present.push_back(row[f]);
    }
    if (present.size() < X.size()) flagged.push_back(f);
    if (present.empty()) continue;
    std::sort(present.begin(), present.end());
    const std::size_t m = present.size();
    medians[f] = m % 2 == 1 ? present[m / 2] : (present[m / 2 - 1] + present[m / 2]) / 2.0;
  }
  return MedianImputer(std::move(medians), std::move(flagged));
}

std::vector<double> MedianImputer::transform(std::span<const double> row) const {
  if (row.size() != medians_.size()) throw PreconditionError("MedianImputer: column count mismatch");
  std::vector<double> out(row.begin(), row.end());
  for (std::size_t f = 0; f < out.size(); ++f) {
    if (std::isnan(out[f])) out[f] = medians_[f];
  }
  for (auto f : flagged_) out.push_back(std::isnan(row[f]) ? 1.0 : 0.0);
  return out;
}

Matrix MedianImputer::transform(const Matrix& X) const {
  Matrix out;
  out.reserve(X.size());
  for (const auto& row : X) out.push_back(transform(row));
  return out;
}

}  // namespace newsgauge::learn
