#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "newsgauge/error.hpp"
#include "newsgauge/indicators.hpp"
#include "support/fixture.hpp"

using namespace newsgauge;
using namespace newsgauge::indicators;

namespace {

constexpr auto kWith = Condition::WithIndicators;
constexpr auto kWithout = Condition::WithoutIndicators;

RatingRecord rating(std::string article, std::string rater, Condition c, int score) {
  return {std::move(article), std::move(rater), c, score, 0};
}

const RmseRow& row(const RmseReport& r, const std::string& bucket) {
  for (const auto& x : r.rows) {
    if (x.bucket == bucket) return x;
  }
  throw std::runtime_error("no bucket " + bucket);
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("agreeing experts against a crowd one point off") {
  const std::vector<ExpertLabel> experts{{"a", "e1", 3}, {"a", "e2", 3}};
  const std::vector<RatingRecord> ratings{rating("a", "r1", kWithout, 4)};
  const auto r = rmse_report(ratings, experts);
  const auto& strong = row(r, "strong");
  CHECK(strong.n_articles == 1);
  CHECK(strong.rmse_without == 1.0);
  CHECK_FALSE(strong.rmse_with.has_value());
  CHECK_FALSE(strong.rmse_automated.has_value());
  CHECK(r.n_ratings == 1);
  CHECK(row(r, "weak").n_articles == 0);
  CHECK_FALSE(row(r, "weak").rmse_without.has_value());
}

TEST_CASE("buckets partition the expert-labelled articles") {
  const std::vector<ExpertLabel> experts{{"s", "e1", 4}, {"s", "e2", 4}, {"w", "e1", 2}, {"w", "e2", 3},
                                         {"d", "e1", 1}, {"d", "e2", 5}, {"d2", "e1", 5}, {"d2", "e2", 3}};
  const std::vector<RatingRecord> ratings{rating("s", "r1", kWith, 4), rating("w", "r1", kWith, 3),
                                          rating("d", "r1", kWith, 3), rating("d2", "r1", kWith, 4)};
  const std::map<std::string, double> automated{{"s", 4.0}, {"d", 1.0}};
  const auto r = rmse_report(ratings, experts, automated);
  REQUIRE(r.rows.size() == 4);
  CHECK(row(r, "strong").n_articles == 1);
  CHECK(row(r, "weak").n_articles == 1);
  CHECK(row(r, "disagreement").n_articles == 2);
  CHECK(row(r, "all").n_articles == 4);
  // Expert means: s 4, w 2.5, d 3, d2 4. Crowd equals them except w (+0.5).
  CHECK(row(r, "disagreement").rmse_with == 0.0);
  CHECK(row(r, "weak").rmse_with == 0.5);
  CHECK(row(r, "all").rmse_with == doctest::Approx(std::sqrt(0.25 / 4)).epsilon(1e-15));
  CHECK(row(r, "strong").rmse_automated == 0.0);
  CHECK(row(r, "disagreement").rmse_automated == 2.0);
  CHECK(row(r, "all").rmse_automated == doctest::Approx(std::sqrt(4.0 / 2)).epsilon(1e-15));
}

TEST_CASE("ratings equal to the expert mean give zero error") {
  const std::vector<ExpertLabel> experts{{"a", "e1", 2}, {"a", "e2", 2}, {"b", "e1", 5}, {"b", "e2", 5}};
  const std::vector<RatingRecord> ratings{rating("a", "r1", kWith, 2), rating("b", "r1", kWith, 5),
                                          rating("a", "r2", kWithout, 2), rating("b", "r2", kWithout, 5)};
  const auto r = rmse_report(ratings, experts);
  CHECK(row(r, "all").rmse_with == 0.0);
  CHECK(row(r, "all").rmse_without == 0.0);
}

TEST_CASE("repeat ratings count once") {
  const std::vector<ExpertLabel> experts{{"a", "e1", 3}, {"a", "e2", 3}};
  const std::vector<RatingRecord> ratings{rating("a", "r1", kWith, 3), rating("a", "r1", kWith, 5)};
  const auto r = rmse_report(ratings, experts);
  CHECK(r.n_ratings == 1);
  CHECK(row(r, "strong").rmse_with == 0.0);
}

TEST_CASE("expert label requirements") {
  const std::vector<ExpertLabel> one{{"a", "e1", 3}};
  CHECK_THROWS_AS(rmse_report(std::vector<RatingRecord>{}, one), DataError);
  const std::vector<ExpertLabel> three{{"a", "e1", 3}, {"a", "e2", 3}, {"a", "e3", 3}};
  CHECK_THROWS_AS(rmse_report(std::vector<RatingRecord>{}, three), DataError);
  const std::vector<ExpertLabel> two{{"a", "e1", 3}, {"a", "e2", 3}};
  const std::vector<RatingRecord> unknown{rating("zz", "r1", kWith, 3)};
  CHECK_THROWS_AS(rmse_report(unknown, two), DataError);
}

TEST_CASE("outlying raters are dropped with three or more raters") {
  const std::vector<ExpertLabel> experts{{"x", "e1", 3}, {"x", "e2", 3}, {"y", "e1", 3}, {"y", "e2", 3}};
  std::vector<RatingRecord> ratings;
  for (const char* rater : {"r1", "r2", "r3"}) {
    ratings.push_back(rating("x", rater, kWithout, 3));
    ratings.push_back(rating("y", rater, kWithout, 3));
  }
  ratings.push_back(rating("x", "wild", kWithout, 5));
  ratings.push_back(rating("y", "wild", kWithout, 5));
  const auto r = rmse_report(ratings, experts);
  CHECK(r.dropped_raters == std::vector<std::string>{"wild"});
  CHECK(row(r, "all").rmse_without == 0.0);

  // Two raters: nobody is dropped.
  const std::vector<RatingRecord> pair{rating("x", "r1", kWithout, 3), rating("x", "wild", kWithout, 5)};
  const auto p = rmse_report(pair, experts);
  CHECK(p.dropped_raters.empty());
  CHECK(row(p, "all").rmse_without == 1.0);
}

TEST_CASE("rating records") {
  const RatingRecord r{"a", "r", kWith, 4, 1700000000};
  CHECK(rating_from_json(to_json(r)) == r);
  CHECK(rating_from_json(R"({"article_id":"a","rater_id":"r","condition":"without","score":1})").timestamp == 0);
  for (const char* bad : {R"({"article_id":"a","rater_id":"r","condition":"with_indicators","score":6})",
                          R"({"article_id":"a","rater_id":"r","condition":"with_indicators","score":0})",
                          R"({"article_id":"a","rater_id":"r","condition":"with_indicators","score":2.5})",
                          R"({"article_id":"","rater_id":"r","condition":"with_indicators","score":2})",
                          R"({"article_id":"a","rater_id":"r","condition":"sideways","score":2})",
                          R"({"article_id":"a","rater_id":"r","score":2})", R"([1, 2])", "{oops"}) {
    CHECK_THROWS_AS(rating_from_json(bad), DataError);
  }
  CHECK(parse_condition("with_indicators") == kWith);
  CHECK(parse_condition(to_string(kWithout)) == kWithout);
  CHECK_FALSE(parse_condition("maybe").has_value());
}

TEST_CASE("ratings store appends") {
  const fixture::TempDir dir("ratings");
  const auto path = dir.path() / "ratings.jsonl";
  const RatingRecord a{"a", "r1", kWith, 4, 10}, b{"b", "r2", kWithout, 2, 11};
  append_rating(path, a);
  append_rating(path, b);
  CHECK(load_ratings(path) == std::vector<RatingRecord>{a, b});
}

TEST_CASE("expert label file") {
  const auto labels = load_expert_labels(fixture::path("expert_labels.tsv"));
  REQUIRE_FALSE(labels.empty());
  CHECK(labels[0].article_id == "art00");
  CHECK(labels[0].expert_id == "expert_a");
  CHECK(labels[0].score == 3);
  const fixture::TempDir dir("experts");
  fixture::spit(dir.path() / "e.tsv", "a\te1\t9\n");
  CHECK_THROWS_AS(load_expert_labels(dir.path() / "e.tsv"), DataError);
  fixture::spit(dir.path() / "e.tsv", "a\te1\n");
  CHECK_THROWS_AS(load_expert_labels(dir.path() / "e.tsv"), DataError);
}

TEST_CASE("report files") {
  const std::vector<ExpertLabel> experts{{"a", "e1", 3}, {"a", "e2", 3}};
  const std::vector<RatingRecord> ratings{rating("a", "r1", kWithout, 4)};
  const auto r = rmse_report(ratings, experts);
  const fixture::TempDir dir("report");
  write_report_csv(dir.path() / "r.csv", r);
  const auto csv = fixture::slurp(dir.path() / "r.csv");
  CHECK(csv.starts_with("bucket,n_articles,rmse_without_indicators,rmse_with_indicators,rmse_automated\n"));
  CHECK(csv.find("strong,1,1.000000,,\n") != std::string::npos);
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j.at("n_ratings") == 1);
  CHECK(j.at("rows").size() == 4);
  CHECK(j.at("rows")[0].at("rmse_with_indicators").is_null());
}

}  // TEST_SUITE
