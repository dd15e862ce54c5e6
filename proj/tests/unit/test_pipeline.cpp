#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "newsgauge/corpus.hpp"
#include "newsgauge/error.hpp"
#include "newsgauge/indicators.hpp"
#include "newsgauge/pipeline.hpp"
#include "support/fixture.hpp"

using namespace newsgauge;
using namespace newsgauge::pipeline;
using nlohmann::json;

namespace {

// One full run shared by the cases that only read its outputs.
const fixture::TempDir& full_run() {
  static const auto dir = [] {
    auto d = std::make_unique<fixture::TempDir>("pipeline");
    run(Stage::All, fixture::config(d->path()));
    return d;
  }();
  return *dir;
}

std::set<std::string> surviving_articles() {
  const auto expected = json::parse(fixture::slurp(fixture::path("corpus/expected.json")));
  std::set<std::string> ids;
  for (const auto& a : corpus::ingest<corpus::Article>(fixture::path("corpus/articles.jsonl")).records) ids.insert(a.id);
  for (const auto& id : expected.at("reference_free_articles")) ids.erase(id.get<std::string>());
  ids.erase(expected.at("duplicate_pair")[1].get<std::string>());
  return ids;
}

std::string minimal_toml(const std::string& extra_params = "") {
  const auto f = fixture::dir().string();
  return "[corpus]\npostings = \"" + f + "/corpus/postings.jsonl\"\nreplies = \"" + f +
         "/corpus/replies.jsonl\"\narticles = \"" + f + "/corpus/articles.jsonl\"\npapers = \"" + f +
         "/corpus/papers.jsonl\"\n[allowlist]\ndomains = \"" + f + "/allowlist/domains.txt\"\nkeywords = \"" + f +
         "/allowlist/keywords.txt\"\n[inputs]\nembeddings = \"" + f + "/embeddings.txt\"\noutlets = \"" + f +
         "/outlets.tsv\"\nstance_postings = \"" + f + "/stance/postings.jsonl\"\nstance_replies = \"" + f +
         "/stance/replies.jsonl\"\nstance_labels = \"" + f + "/stance/labels.tsv\"\nexpert_labels = \"" + f +
         "/expert_labels.tsv\"\nratings = \"ratings.jsonl\"\n[params]\n" + extra_params + "\n[output]\ndir = \"out\"\n";
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("stage names") {
  for (auto s : {Stage::Ingest, Stage::Graph, Stage::Indicators, Stage::Train, Stage::Score, Stage::Report,
                 Stage::All}) {
    CHECK(parse_stage(to_string(s)) == s);
  }
  CHECK_FALSE(parse_stage("deploy").has_value());
}

TEST_CASE("config defaults and relative paths") {
  const auto c = parse_config(minimal_toml(), "/base");
  CHECK(c.seed == 42);
  CHECK(c.lda_topics == 20);
  CHECK(c.lda_iterations == 500);
  CHECK(c.n_trees == 100);
  CHECK(c.merge_threshold == 0.9);
  CHECK(c.damping == 0.85);
  CHECK(c.port == 8080);
  CHECK_FALSE(c.headlines.has_value());
  CHECK(c.ratings == std::filesystem::path("/base/ratings.jsonl"));
  CHECK(c.output_dir == std::filesystem::path("/base/out"));
  const auto loaded = load_config(fixture::path("config.toml"));
  CHECK(loaded.seed == 7);
  CHECK(loaded.articles == (fixture::dir() / "corpus" / "articles.jsonl").lexically_normal());
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config("[corpus\npostings = 1", "/"), DataError);
  CHECK_THROWS_AS(parse_config(minimal_toml("damping = 1.5"), "/"), DataError);
  CHECK_THROWS_AS(parse_config(minimal_toml("merge_threshold = 0.0"), "/"), DataError);
  CHECK_THROWS_AS(parse_config(minimal_toml("lda_topics = 1"), "/"), DataError);
  CHECK_THROWS_AS(parse_config(minimal_toml("n_trees = 0"), "/"), DataError);
  CHECK_THROWS_AS(parse_config(minimal_toml("seed = \"seven\""), "/"), DataError);
  auto missing_key = minimal_toml();
  missing_key.erase(missing_key.find("papers = "), missing_key.find('\n', missing_key.find("papers = ")) -
                                                       missing_key.find("papers = ") + 1);
  CHECK_THROWS_AS(parse_config(missing_key, "/"), DataError);
  auto missing_file = minimal_toml();
  missing_file.replace(missing_file.find("outlets.tsv"), 11, "absent.tsv");
  try {
    static_cast<void>(parse_config(missing_file, "/"));
    FAIL("expected a DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("absent.tsv") != std::string::npos);
  }
}

TEST_CASE("full run writes one indicator row per surviving article") {
  const Layout l(full_run().path());
  const auto want = surviving_articles();
  const auto vectors = indicators::read_jsonl(l.indicators_jsonl);
  std::set<std::string> got;
  for (const auto& v : vectors) got.insert(v.article_id);
  CHECK(got == want);
  CHECK(vectors.size() == want.size());
  const auto csv = fixture::slurp(l.indicators_csv);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == want.size() + 1);
  for (const auto& p : {l.links, l.edges, l.nodes, l.merge_map, l.centrality, l.lda_model, l.sts_model, l.stance_model,
                        l.quality_model, l.discrimination, l.scores, l.manifest}) {
    CHECK_MESSAGE(std::filesystem::exists(p), p.string());
  }
  // No ratings yet, so no report.
  CHECK_FALSE(std::filesystem::exists(l.report_csv));
}

TEST_CASE("indicators agree with the corpus records") {
  const Layout l(full_run().path());
  std::map<std::string, corpus::Article> articles;
  for (auto& a : corpus::ingest<corpus::Article>(fixture::path("corpus/articles.jsonl")).records) articles[a.id] = a;
  for (const auto& v : indicators::read_jsonl(l.indicators_jsonl)) {
    const auto& a = articles.at(v.article_id);
    CHECK(v.outlet == a.outlet);
    CHECK(v.bylined == (a.byline.has_value() && !a.byline->empty()));
    CHECK(v.word_count > 0);
    CHECK(v.n_person_quotes + v.n_weasel_quotes <= v.n_total_quotes);
    CHECK(v.pagerank >= 0.0);
    CHECK(v.tweet_stance >= -1.0);
    CHECK(v.tweet_stance <= 1.0);
    if (v.source_adherence) {
      CHECK(*v.source_adherence >= 0.0);
      CHECK(*v.source_adherence <= 1.0);
    }
  }
}

TEST_CASE("scores cover every article") {
  const Layout l(full_run().path());
  const auto scores = read_scores(l.scores);
  CHECK(scores.size() == surviving_articles().size());
  for (const auto& [id, s] : scores) {
    CHECK(s >= 1.0);
    CHECK(s <= 5.0);
  }
}

TEST_CASE("rerunning a stage reproduces its outputs") {
  const auto& dir = full_run();
  const auto before = fixture::snapshot(dir.path());
  const auto c = fixture::config(dir.path());
  run(Stage::Indicators, c);
  run(Stage::Train, c);
  run(Stage::Score, c);
  CHECK(fixture::snapshot(dir.path()) == before);
}

TEST_CASE("report needs ratings") {
  const fixture::TempDir dir("pipeline-report");
  const auto c = fixture::config(dir.path());
  try {
    run(Stage::Report, c);
    FAIL("expected MissingArtifact");
  } catch (const MissingArtifact& e) {
    CHECK(std::string(e.what()).find(c.ratings.filename().string()) != std::string::npos);
  }
}

TEST_CASE("report from stored ratings") {
  const fixture::TempDir dir("pipeline-ratings");
  const auto c = fixture::config(dir.path());
  const auto experts = indicators::load_expert_labels(c.expert_labels);
  std::filesystem::create_directories(c.ratings.parent_path());
  indicators::append_rating(c.ratings, {experts[0].article_id, "r1", indicators::Condition::WithIndicators, 3, 1});
  run(Stage::Report, c);
  const Layout l(dir.path());
  const auto j = json::parse(fixture::slurp(l.report_json));
  CHECK(j.at("n_ratings") == 1);
  CHECK(fixture::slurp(l.report_csv).starts_with("bucket,"));
}

TEST_CASE("stages need their inputs") {
  const fixture::TempDir dir("pipeline-missing");
  const auto c = fixture::config(dir.path());
  const Layout l(dir.path());
  for (auto s : {Stage::Graph, Stage::Indicators, Stage::Train, Stage::Score}) {
    CHECK_THROWS_AS(run(s, c), MissingArtifact);
  }
  run(Stage::Ingest, c);
  CHECK(std::filesystem::exists(l.links));
  try {
    run(Stage::Indicators, c);
    FAIL("expected MissingArtifact");
  } catch (const MissingArtifact& e) {
    CHECK(std::string(e.what()).find("indicators") != std::string::npos);
  }
}

TEST_CASE("score file parsing") {
  const fixture::TempDir dir("scores");
  fixture::spit(dir.path() / "s.csv", "article_id,score\na,3.5\nb,1.0\n");
  CHECK(read_scores(dir.path() / "s.csv") == std::vector<std::pair<std::string, double>>{{"a", 3.5}, {"b", 1.0}});
  fixture::spit(dir.path() / "s.csv", "article_id,score\na,high\n");
  CHECK_THROWS_AS(read_scores(dir.path() / "s.csv"), DataError);
}

}  // TEST_SUITE
