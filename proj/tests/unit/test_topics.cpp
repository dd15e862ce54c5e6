#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "newsgauge/error.hpp"
#include "newsgauge/textkit.hpp"
#include "newsgauge/topics.hpp"
#include "support/fixture.hpp"

using namespace newsgauge;
using namespace newsgauge::topics;

namespace {

using Docs = std::vector<std::vector<std::string>>;

// Two groups of documents over disjoint vocabularies.
Docs two_groups() {
  const std::vector<std::string> sleep{"sleep", "dream", "night", "pillow", "nap", "snore"};
  const std::vector<std::string> ocean{"ocean", "reef", "coral", "tide", "salt", "wave"};
  Docs docs;
  for (int d = 0; d < 20; ++d) {
    const auto& vocab = d % 2 ? ocean : sleep;
    std::vector<std::string> doc;
    for (int i = 0; i < 30; ++i) doc.push_back(vocab[(d * 7 + i * 5) % vocab.size()]);
    docs.push_back(doc);
  }
  return docs;
}

LdaOptions options() {
  auto o = LdaOptions::with_topics(2);
  o.alpha = 0.1;
  o.iterations = 200;
  o.seed = 11;
  return o;
}

std::size_t argmax(const TopicVector& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

TEST_SUITE("topics") {

TEST_CASE("default options") {
  const auto o = LdaOptions::with_topics(20);
  CHECK(o.alpha == doctest::Approx(2.5));
  CHECK(o.beta == doctest::Approx(0.01));
  CHECK(o.iterations == 500);
}

TEST_CASE("phi rows are positive distributions") {
  const auto m = train_lda(two_groups(), options());
  REQUIRE(m.topic_count() == 2);
  for (const auto& row : m.phi()) {
    CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    for (double p : row) CHECK(p > 0.0);
  }
}

TEST_CASE("disjoint vocabularies separate into topics") {
  const auto docs = two_groups();
  const auto m = train_lda(docs, options());
  std::set<std::size_t> winners;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto v = infer_topics(m, docs[d]);
    CHECK(v[argmax(v)] > 0.8);
    if (d < 2) winners.insert(argmax(v));
  }
  CHECK(winners.size() == 2);
  // Words from one vocabulary only pick that vocabulary's topic.
  const auto sleep_topic = argmax(infer_topics(m, docs[0]));
  CHECK(argmax(infer_topics(m, std::vector<std::string>{"pillow", "nap", "dream"})) == sleep_topic);
}

TEST_CASE("training is deterministic and order independent") {
  auto docs = two_groups();
  const auto a = train_lda(docs, options());
  CHECK(train_lda(docs, options()) == a);
  std::reverse(docs.begin(), docs.end());
  CHECK(train_lda(docs, options()) == a);
}

TEST_CASE("inference edge cases") {
  const auto m = train_lda(two_groups(), options());
  const auto empty = infer_topics(m, std::vector<std::string>{});
  CHECK(empty == TopicVector{0.5, 0.5});
  CHECK(infer_topics(m, std::vector<std::string>{"unknown", "words"}) == TopicVector{0.5, 0.5});
  const auto v = infer_topics(m, std::vector<std::string>{"reef", "sleep", "tide"});
  CHECK(std::accumulate(v.begin(), v.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(infer_topics(m, std::vector<std::string>{"reef", "sleep", "tide"}) == v);
}

TEST_CASE("training preconditions") {
  auto o = options();
  o.topics = 1;
  CHECK_THROWS_AS(train_lda(two_groups(), o), PreconditionError);
  CHECK_THROWS_AS(train_lda(Docs{}, options()), PreconditionError);
  CHECK_THROWS_AS(train_lda(Docs{{}, {}}, options()), DataError);
}

TEST_CASE("topic terms drop stopwords and short tokens") {
  const auto t = textkit::analyze("The researchers measured 42 hours of a sleep study.");
  const auto terms = topic_terms(t.tokens);
  CHECK(std::find(terms.begin(), terms.end(), "the") == terms.end());
  CHECK(std::find(terms.begin(), terms.end(), "42") == terms.end());
  CHECK(std::find(terms.begin(), terms.end(), "sleep") != terms.end());
}

TEST_CASE("hellinger similarity") {
  const std::vector<double> p{0.2, 0.3, 0.5};
  CHECK(hellinger_similarity(p, p) == doctest::Approx(1.0));
  CHECK(hellinger_similarity(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 0.0);
  CHECK(hellinger_similarity(std::vector<double>{0.5, 0.5}, std::vector<double>{1, 0}) ==
        doctest::Approx(1 - std::sqrt(1 - std::sqrt(0.5))).epsilon(1e-12));
  CHECK_THROWS_AS(hellinger_similarity(p, std::vector<double>{1.0}), PreconditionError);
}

TEST_CASE("hellinger is symmetric and bounded") {
  const std::vector<std::vector<double>> dists{{1, 0, 0}, {0.2, 0.3, 0.5}, {0.4, 0.4, 0.2}, {0, 0.5, 0.5}};
  for (const auto& p : dists) {
    for (const auto& q : dists) {
      const double s = hellinger_similarity(p, q);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      CHECK(s == hellinger_similarity(q, p));
      if (p != q) CHECK(s < 1.0);
    }
  }
}

TEST_CASE("model save and load") {
  const auto m = train_lda(two_groups(), options());
  const fixture::TempDir dir("lda");
  save_model(m, dir.path() / "lda.json");
  const auto back = load_model(dir.path() / "lda.json");
  CHECK(back.vocabulary() == m.vocabulary());
  CHECK(back.seed() == m.seed());
  for (std::size_t k = 0; k < m.topic_count(); ++k) {
    for (std::size_t w = 0; w < m.vocabulary().size(); ++w) CHECK(back.phi()[k][w] == m.phi()[k][w]);
  }
}

}  // TEST_SUITE
