#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "newsgauge/error.hpp"
#include "newsgauge/learn.hpp"
#include "newsgauge/random.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

using namespace newsgauge;
using namespace newsgauge::learn;

namespace {

// Two well separated blobs in two features.
void blobs(Matrix& X, std::vector<int>& y, std::uint64_t seed, std::size_t per_class) {
  Rng rng(seed);
  for (std::size_t i = 0; i < per_class; ++i) {
    X.push_back({rng.uniform(), rng.uniform()});
    y.push_back(0);
    X.push_back({3 + rng.uniform(), 3 + rng.uniform()});
    y.push_back(1);
  }
}

// Textbook one-way ANOVA, written out independently of the library.
double textbook_f(const std::vector<std::vector<double>>& groups) {
  double n = 0, grand = 0;
  for (const auto& g : groups) {
    for (double v : g) {
      grand += v;
      n += 1;
    }
  }
  grand /= n;
  double ssb = 0, ssw = 0;
  for (const auto& g : groups) {
    const double m = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double v : g) ssw += (v - m) * (v - m);
  }
  const double k = static_cast<double>(groups.size());
  return (ssb / (k - 1)) / (ssw / (n - k));
}

}  // namespace

TEST_SUITE("learn") {

TEST_CASE("forest memorizes a separable training set") {
  Matrix X;
  std::vector<int> y;
  blobs(X, y, 1, 40);
  const auto f = Forest::train(X, y, {25, 9, std::nullopt});
  std::size_t right = 0;
  for (std::size_t i = 0; i < X.size(); ++i) right += f.predict(X[i]) == y[i];
  CHECK(right == X.size());
  CHECK(f.classes() == std::vector<int>{0, 1});
}

TEST_CASE("forest probabilities and structure") {
  Matrix X;
  std::vector<int> y;
  blobs(X, y, 2, 30);
  for (std::size_t i = 0; i < 10; ++i) {  // a third class
    X.push_back({-3.0 - 0.1 * static_cast<double>(i), 5.0});
    y.push_back(7);
  }
  const auto f = Forest::train(X, y, {30, 4, std::nullopt});
  for (const auto& row : X) {
    const auto p = f.predict_proba(row);
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
    const auto label = f.predict(row);
    CHECK(std::find(f.classes().begin(), f.classes().end(), label) != f.classes().end());
  }
  for (const auto& tree : f.trees()) {
    for (const auto& node : tree) CHECK(node.feature < static_cast<int>(f.n_features()));
  }
}

TEST_CASE("forest is deterministic and order independent") {
  Matrix X;
  std::vector<int> y;
  blobs(X, y, 3, 25);
  const auto a = Forest::train(X, y, {20, 5, std::nullopt});
  const auto b = Forest::train(X, y, {20, 5, std::nullopt});
  CHECK(a == b);
  std::vector<std::size_t> order(X.size());
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  Matrix Xr;
  std::vector<int> yr;
  for (auto i : order) {
    Xr.push_back(X[i]);
    yr.push_back(y[i]);
  }
  CHECK(Forest::train(Xr, yr, {20, 5, std::nullopt}) == a);
  CHECK_FALSE(Forest::train(X, y, {20, 6, std::nullopt}) == a);
}

TEST_CASE("forest preconditions") {
  const Matrix X{{1.0}, {2.0}};
  const std::vector<int> one{1, 1};
  CHECK_THROWS_AS(Forest::train(X, one), PreconditionError);
  const Matrix ragged{{1.0}, {2.0, 3.0}};
  const std::vector<int> two{0, 1};
  CHECK_THROWS_AS(Forest::train(ragged, two), PreconditionError);
}

TEST_CASE("forest save and load") {
  Matrix X;
  std::vector<int> y;
  blobs(X, y, 4, 10);
  const auto f = Forest::train(X, y, {5, 1, std::nullopt});
  const fixture::TempDir dir("forest");
  save_forest(f, dir.path() / "f.json");
  CHECK(load_forest(dir.path() / "f.json") == f);
}

TEST_CASE("median imputer") {
  const double nan = std::nan("");
  const Matrix X{{1.0, nan}, {3.0, 4.0}, {2.0, 8.0}};
  const auto imp = MedianImputer::fit(X);
  CHECK(imp.medians() == std::vector<double>{2.0, 6.0});
  CHECK(imp.flagged_columns() == std::vector<std::size_t>{1});
  CHECK(imp.transform(std::vector<double>{nan, nan}) == std::vector<double>{2.0, 6.0, 1.0});
  CHECK(imp.transform(std::vector<double>{5.0, 1.0}) == std::vector<double>{5.0, 1.0, 0.0});
}

TEST_CASE("anova against the textbook formula") {
  const std::vector<std::vector<double>> groups{{1, 2, 3}, {7, 8, 9}};
  const auto r = anova_f(groups);
  CHECK(r.f_statistic == doctest::Approx(textbook_f(groups)).epsilon(1e-12));
  CHECK(r.f_statistic == doctest::Approx(54.0).epsilon(1e-12));
  CHECK(r.dof_between == 1);
  CHECK(r.dof_within == 4);
  CHECK(r.p_value == doctest::Approx(oracle::f_survival(54.0, 1, 4)).epsilon(1e-6));
}

TEST_CASE("anova with identical means") {
  const std::vector<std::vector<double>> same{{1, 2, 3}, {3, 2, 1}};
  const auto r = anova_f(same);
  CHECK(r.f_statistic == 0.0);
  CHECK(r.p_value == 1.0);
  const std::vector<std::vector<double>> flat{{4, 4}, {4, 4, 4}};
  CHECK(anova_f(flat).f_statistic == 0.0);
  CHECK(anova_f(flat).p_value == 1.0);
}

TEST_CASE("anova preconditions") {
  const std::vector<std::vector<double>> one{{1, 2, 3}};
  CHECK_THROWS_AS(anova_f(one), PreconditionError);
  const std::vector<std::vector<double>> tiny{{1, 2}, {3}};
  CHECK_THROWS_AS(anova_f(tiny), PreconditionError);
}

TEST_CASE("anova invariances") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> g(3);
    for (auto& group : g) {
      for (int i = 0; i < 5; ++i) group.push_back(rng.uniform() * 10 + static_cast<double>(trial % 3));
    }
    const auto base = anova_f(g);
    auto shifted = g, scaled = g;
    for (auto& group : shifted) {
      for (auto& v : group) v += 17.0;
    }
    for (auto& group : scaled) {
      for (auto& v : group) v *= 3.5;
    }
    CHECK(anova_f(shifted).f_statistic == doctest::Approx(base.f_statistic).epsilon(1e-9));
    CHECK(anova_f(scaled).f_statistic == doctest::Approx(base.f_statistic).epsilon(1e-9));
  }
}

TEST_CASE("F survival matches numeric integration at spot points") {
  struct Point {
    double f, d1, d2;
  };
  const Point points[] = {{0.5, 1, 4},  {1.0, 1, 10}, {2.0, 2, 5},  {3.5, 2, 20}, {5.0, 3, 7},
                          {0.2, 3, 30}, {1.5, 4, 12}, {2.7, 4, 40}, {7.0, 1, 4},  {10.0, 2, 9},
                          {0.8, 5, 5},  {4.2, 5, 25}, {1.2, 6, 14}, {3.0, 2, 3},  {6.5, 3, 18},
                          {0.05, 1, 2}, {2.2, 8, 30}, {12.0, 1, 20}, {0.9, 2, 60}, {54.0, 1, 4}};
  for (const auto& p : points) {
    CHECK(std::abs(f_survival(p.f, p.d1, p.d2) - oracle::f_survival(p.f, p.d1, p.d2)) < 1e-6);
  }
}

TEST_CASE("p-value decreases as F grows") {
  double last = 1.0;
  for (double f = 0.0; f < 30; f += 0.5) {
    const double p = f_survival(f, 2, 12);
    CHECK(p <= last);
    last = p;
  }
}

TEST_CASE("significance stars") {
  CHECK(significance_stars(0.004) == "***");
  CHECK(significance_stars(0.007) == "**");
  CHECK(significance_stars(0.02) == "*");
  CHECK(significance_stars(0.05) == "");
}

TEST_CASE("rmse") {
  const std::vector<double> a{1, 2}, b{2, 4};
  CHECK(rmse(a, b) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
  CHECK(rmse(a, a) == 0.0);
  const std::vector<double> ar{2, 1}, br{4, 2};
  CHECK(rmse(ar, br) == rmse(a, b));
  const std::vector<double> shorter{1};
  CHECK_THROWS_AS(rmse(a, shorter), PreconditionError);
  CHECK_THROWS_AS(rmse(std::vector<double>{}, std::vector<double>{}), PreconditionError);
}

TEST_CASE("roc auc") {
  const std::vector<double> perfect{0.1, 0.2, 0.8, 0.9};
  const std::vector<int> labels{0, 0, 1, 1};
  CHECK(roc_auc(perfect, labels) == 1.0);
  const std::vector<double> tied{0.5, 0.5, 0.5, 0.5};
  CHECK(roc_auc(tied, labels) == 0.5);
  const std::vector<double> inverted{0.9, 0.8, 0.2, 0.1};
  CHECK(roc_auc(inverted, labels) == 0.0);
}

TEST_CASE("stratified folds") {
  std::vector<int> labels;
  for (int i = 0; i < 50; ++i) labels.push_back(i % 5 == 0 ? 1 : 0);
  const auto folds = stratified_folds(labels, 5, 3);
  REQUIRE(folds.size() == labels.size());
  for (std::size_t f = 0; f < 5; ++f) {
    std::size_t pos = 0, n = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (folds[i] != f) continue;
      ++n;
      pos += labels[i];
    }
    CHECK(n == 10);
    CHECK(pos == 2);
  }
  CHECK(stratified_folds(labels, 5, 3) == folds);
}

TEST_CASE("nearest-rank percentile") {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(nearest_rank_percentile(v, 50) == 50.0);
  CHECK(nearest_rank_percentile(v, 5) == 5.0);
  CHECK(nearest_rank_percentile(v, 100) == 100.0);
  CHECK(nearest_rank_percentile({3.0, 1.0, 2.0}, 0) == 1.0);
}

}  // TEST_SUITE
