#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "newsgauge/error.hpp"
#include "newsgauge/random.hpp"
#include "newsgauge/social.hpp"
#include "support/fixture.hpp"

using namespace newsgauge;
using namespace newsgauge::social;

namespace {

corpus::Posting posting(std::string id, std::int64_t ts, std::optional<std::string> country = std::nullopt) {
  corpus::Posting p;
  p.id = std::move(id);
  p.author_id = "u";
  p.text = "t";
  p.timestamp = ts;
  p.country = std::move(country);
  return p;
}

const textkit::EmbeddingTable& embeddings() {
  static const auto table = textkit::load_embeddings(fixture::path("embeddings.txt"));
  return table;
}

StanceFeatures synthetic(Stance s, Rng& rng) {
  StanceFeatures f;
  const auto c = static_cast<int>(s);
  f.n_words = 5 + static_cast<std::int64_t>(rng.index(5));
  f.n_negations = c == 2 ? 3 : 0;
  f.n_question_marks = c == 3 ? 2 : 0;
  f.n_positive = c == 0 ? 2 : 0;
  f.sim_to_parent = c == 1 ? 0.9 : 0.2 + 0.1 * rng.uniform();
  return f;
}

}  // namespace

TEST_SUITE("social") {

TEST_CASE("reach of a single posting") {
  auto p = posting("p", 1000, "US");
  p.likes = 3;
  p.retweets = 2;
  p.followers = 100;
  p.followees = 7;
  const std::vector<corpus::Posting> one{p};
  const std::vector<corpus::Reply> replies{{"r1", "p", "x", 0, 0}, {"r2", "p", "y", 0, 0}};
  const auto r = reach(one, replies);
  CHECK(r == ReachIndicators{1, 3, 2, 2, 100, 7, 1, 0.0});
}

TEST_CASE("countries count distinct known codes") {
  const std::vector<corpus::Posting> ps{posting("a", 0, "US"), posting("b", 0, "US"), posting("c", 0, "FR"),
                                        posting("d", 0)};
  CHECK(reach(ps, {}).n_countries == 2);
  CHECK(reach({}, {}) == ReachIndicators{});
}

TEST_CASE("shelf life spans the 5th to 95th percentile") {
  std::vector<corpus::Posting> ps;
  for (int i = 0; i < 20; ++i) ps.push_back(posting("p" + std::to_string(i), 1'600'000'000 + i * 5 * 3600));
  // Nearest rank: 5th is the 1st stamp (hour 0), 95th the 19th (hour 90).
  CHECK(reach(ps, {}).shelf_life_hours == 90.0);
  std::reverse(ps.begin(), ps.end());
  CHECK(reach(ps, {}).shelf_life_hours == 90.0);
}

TEST_CASE("stance features count surface cues") {
  const auto f = stance_features("No, this is wrong. Source??", "Coffee cuts heart risk", embeddings());
  CHECK(f.n_negations >= 1);
  CHECK(f.n_question_marks == 2);
  CHECK(f.n_exclamation_marks == 0);
  CHECK(f.n_words == 5);
  const auto urls = stance_features("see https://a.com/x?y=1 now!", "parent", embeddings());
  CHECK(urls.n_urls == 1);
  CHECK(urls.n_question_marks == 0);
  CHECK(urls.n_exclamation_marks == 1);
}

TEST_CASE("stance features of identical and empty texts") {
  const auto same = stance_features("sleep study adults", "sleep study adults", embeddings());
  CHECK(same.sim_to_parent == doctest::Approx(1.0).epsilon(1e-12));
  const auto empty = stance_features("", "", embeddings());
  for (double v : empty.to_vector()) CHECK(v == 0.0);
  CHECK(empty.to_vector().size() == 10);
}

TEST_CASE("labels and parsing") {
  CHECK(make_label(Stance::Supporting) == StanceLabel{Stance::Supporting, 1});
  CHECK(make_label(Stance::Commenting).binary == 1);
  CHECK(make_label(Stance::Contradicting).binary == -1);
  CHECK(make_label(Stance::Questioning).binary == -1);
  for (auto s : {Stance::Supporting, Stance::Commenting, Stance::Contradicting, Stance::Questioning}) {
    CHECK(parse_stance(to_string(s)) == s);
  }
  CHECK(parse_stance(" Questioning ") == Stance::Questioning);
  CHECK_FALSE(parse_stance("not-related").has_value());
  CHECK_THROWS_AS(parse_stance("angry"), DataError);
}

TEST_CASE("stance label file") {
  const fixture::TempDir dir("stance");
  fixture::spit(dir.path() / "l.tsv", "reply_id\tlabel\nr1\tsupporting\nr2\tnot-related\nr3\tquestioning\n");
  const auto l = load_stance_labels(dir.path() / "l.tsv");
  REQUIRE(l.labeled.size() == 2);
  CHECK(l.labeled[1].id == "r3");
  CHECK(l.labeled[1].stance == Stance::Questioning);
  CHECK(l.not_related == 1);
  fixture::spit(dir.path() / "dup.tsv", "r1\tsupporting\nr1\tcommenting\n");
  CHECK_THROWS_AS(load_stance_labels(dir.path() / "dup.tsv"), DataError);
  fixture::spit(dir.path() / "bad.tsv", "r1 supporting\n");
  CHECK_THROWS_AS(load_stance_labels(dir.path() / "bad.tsv"), DataError);
}

TEST_CASE("aggregate stance") {
  CHECK(popularity_weight(0, 0) == 1.0);
  CHECK(popularity_weight(4, 5) == 10.0);
  const std::vector<WeightedStance> support{{1, 1.0}, {1, 7.0}, {1, 2.0}};
  CHECK(aggregate_stance(support) == 1.0);
  const std::vector<WeightedStance> against{{-1, 3.0}, {-1, 1.0}};
  CHECK(aggregate_stance(against) == -1.0);
  // 1 + 2 supporting weight against 3 opposing.
  const std::vector<WeightedStance> hand{{1, 1.0}, {1, 2.0}, {-1, 3.0}};
  CHECK(aggregate_stance(hand) == 0.0);
  CHECK(aggregate_stance(std::vector<WeightedStance>{}) == 0.0);
}

TEST_CASE("aggregate is invariant to weight scaling and bounded") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<WeightedStance> items, scaled;
    const auto n = 1 + rng.index(8);
    for (std::size_t i = 0; i < n; ++i) {
      const WeightedStance w{rng.uniform() < 0.5 ? 1 : -1, 1.0 + 20.0 * rng.uniform()};
      items.push_back(w);
      scaled.push_back({w.binary, w.weight * 6.5});
    }
    const double a = aggregate_stance(items);
    CHECK(a >= -1.0);
    CHECK(a <= 1.0);
    CHECK(aggregate_stance(scaled) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("stance model") {
  Rng rng(9);
  std::vector<StanceExample> examples;
  for (int i = 0; i < 40; ++i) {
    const auto s = static_cast<Stance>(i % 4);
    examples.push_back({synthetic(s, rng), s});
  }
  const auto model = StanceModel::train(examples, {20, 3, std::nullopt});
  std::size_t right = 0;
  for (const auto& e : examples) right += model.classify(e.features).four_class == e.stance;
  CHECK(right == examples.size());
  CHECK(StanceModel::train(examples, {20, 3, std::nullopt}) == model);
  const fixture::TempDir dir("stance-model");
  save_model(model, dir.path() / "m.json");
  CHECK(load_stance_model(dir.path() / "m.json") == model);
}

TEST_CASE("stance model preconditions") {
  Rng rng(1);
  std::vector<StanceExample> examples;
  for (int i = 0; i < 15; ++i) {
    const auto s = static_cast<Stance>(i % 4);
    examples.push_back({synthetic(s, rng), s});
  }
  // Questioning has only three examples.
  CHECK_THROWS_AS(StanceModel::train(examples), PreconditionError);
  CHECK_THROWS_AS(static_cast<void>(StanceModel().classify(StanceFeatures{})), PreconditionError);
}

}  // TEST_SUITE
