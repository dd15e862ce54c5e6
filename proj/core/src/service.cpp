#include <algorithm>
#include <chrono>

#include <httplib.h>

#include "json_io.hpp"
#include "newsgauge/corpus.hpp"
#include "newsgauge/error.hpp"
#include "newsgauge/random.hpp"
#include "newsgauge/service.hpp"
#include "strings.hpp"

namespace newsgauge::service {
namespace {

namespace fs = std::filesystem;
using detail::json;
using indicators::Condition;

// Legend metrics shown as quintile stars, and how each reads off a vector.
// Site visitors rank inversely: rank 1 is the most visited.
struct StarMetric {
  std::string_view name;
  std::optional<double> (*value)(const indicators::IndicatorVector&);
};

constexpr StarMetric kStarMetrics[] = {
    {"site_visitors",
     [](const indicators::IndicatorVector& v) -> std::optional<double> {
       if (!v.alexa_rank) return std::nullopt;
       return -static_cast<double>(*v.alexa_rank);
     }},
    {"scientific_mentions",
     [](const indicators::IndicatorVector& v) -> std::optional<double> {
       return static_cast<double>(v.n_scientific_mentions);
     }},
    {"article_length",
     [](const indicators::IndicatorVector& v) -> std::optional<double> { return static_cast<double>(v.word_count); }},
    {"quotes",
     [](const indicators::IndicatorVector& v) -> std::optional<double> {
       return static_cast<double>(v.n_total_quotes);
     }},
    {"replies",
     [](const indicators::IndicatorVector& v) -> std::optional<double> {
       return static_cast<double>(v.reach.n_replies);
     }},
};

Response error(int status, std::string_view message) { return {status, json{{"error", message}}.dump()}; }

Response ok(int status, const json& body) { return {status, body.dump()}; }

}  // namespace

std::string_view sentiment_face(double polarity) {
  if (polarity >= 0.5) return "++";
  if (polarity >= 0.1) return "+";
  if (polarity > -0.1) return "0";
  if (polarity > -0.5) return "-";
  return "--";
}

ServiceData load_data(const pipeline::PipelineConfig& config) {
  const pipeline::Layout layout(config.output_dir);
  if (!fs::exists(layout.indicators_jsonl)) throw pipeline::MissingArtifact("serve", layout.indicators_jsonl);
  ServiceData data;
  data.vectors = indicators::read_jsonl(layout.indicators_jsonl);
  data.experts = indicators::load_expert_labels(config.expert_labels);
  if (fs::exists(layout.scores)) {
    for (const auto& [id, s] : pipeline::read_scores(layout.scores)) data.automated[id] = s;
  }
  std::set<std::string> labelled;
  for (const auto& e : data.experts) labelled.insert(e.article_id);
  for (auto& a : corpus::ingest<corpus::Article>(config.articles).records) {
    if (labelled.contains(a.id)) data.articles[a.id] = ArticleView{std::move(a.title), std::move(a.paragraphs)};
  }
  data.ratings_path = config.ratings;
  data.seed = config.seed;
  return data;
}

ReviewService::ReviewService(ServiceData data) : data_(std::move(data)) {
  for (std::size_t i = 0; i < data_.vectors.size(); ++i) {
    vector_index_[data_.vectors[i].article_id] = i;
    for (const auto& m : kStarMetrics) {
      if (auto x = m.value(data_.vectors[i])) reference_[std::string(m.name)].push_back(*x);
    }
  }
  for (const auto& [id, view] : data_.articles) {
    if (vector_index_.contains(id)) ids_.push_back(id);
  }
  if (fs::exists(data_.ratings_path)) {
    for (auto& r : indicators::load_ratings(data_.ratings_path)) {
      if (rated_.emplace(r.rater_id, r.article_id).second) ratings_.push_back(std::move(r));
    }
  }
}

Condition ReviewService::condition_for(std::string_view rater_id) const {
  return stable_hash(rater_id) % 2 == 0 ? Condition::WithIndicators : Condition::WithoutIndicators;
}

Response ReviewService::handle(std::string_view method, std::string_view path,
                               const std::map<std::string, std::string>& query, std::string_view body) {
  constexpr std::string_view kArticle = "/api/articles/";
  try {
    if (path == "/api/articles") {
      return method == "GET" ? list_articles(query) : error(405, "method not allowed");
    }
    if (path.starts_with(kArticle)) {
      const auto id = path.substr(kArticle.size());
      if (id.empty() || id.find('/') != std::string_view::npos) return error(404, "not found");
      return method == "GET" ? get_article(std::string(id), query) : error(405, "method not allowed");
    }
    if (path == "/api/ratings") return method == "POST" ? post_rating(body) : error(405, "method not allowed");
    if (path == "/api/report") return method == "GET" ? report() : error(405, "method not allowed");
    return error(404, "not found");
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

Response ReviewService::list_articles(const std::map<std::string, std::string>& query) const {
  json body{{"articles", ids_}};
  if (const auto it = query.find("rater_id"); it != query.end()) {
    if (it->second.empty()) return error(422, "rater_id must be non-empty");
    auto order = ids_;
    Rng rng(mix_seed(data_.seed, stable_hash(it->second)));
    rng.shuffle(order.begin(), order.end());
    body["rater_id"] = it->second;
    body["condition"] = indicators::to_string(condition_for(it->second));
    body["order"] = order;
  }
  return ok(200, body);
}

Response ReviewService::get_article(const std::string& id, const std::map<std::string, std::string>& query) const {
  const auto it = query.find("condition");
  const auto condition = it == query.end() ? std::nullopt : indicators::parse_condition(it->second);
  if (!condition) return error(422, "condition must be 'with' or 'without'");
  const auto article = data_.articles.find(id);
  if (article == data_.articles.end() || !vector_index_.contains(id)) return error(404, "unknown article " + id);

  json body{{"id", id},
            {"title", article->second.title},
            {"paragraphs", article->second.paragraphs},
            {"condition", indicators::to_string(*condition)}};
  if (*condition == Condition::WithIndicators) {
    const auto& v = data_.vectors[vector_index_.at(id)];
    json legend = json::array();
    for (const auto& m : kStarMetrics) {
      const auto x = m.value(v);
      const auto ref = reference_.find(std::string(m.name));
      const int stars = x && ref != reference_.end() ? indicators::quintile_stars(*x, ref->second) : 1;
      legend.push_back(json{{"name", m.name}, {"stars", stars}});
    }
    legend.push_back(json{{"name", "byline"}, {"value", v.bylined}});
    legend.push_back(json{{"name", "title_sentiment"}, {"face", sentiment_face(v.title_polarity)}});
    body["indicators"] = std::move(legend);
  }
  return ok(200, body);
}

Response ReviewService::post_rating(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception&) {
    return error(400, "body is not valid JSON");
  }
  if (!j.is_object()) return error(400, "body must be a JSON object");
  if (!j.contains("timestamp")) {
    j["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
  }
  indicators::RatingRecord r;
  try {
    r = indicators::rating_from_json(j.dump());
  } catch (const DataError& e) {
    return error(422, e.what());
  }
  if (!data_.articles.contains(r.article_id) || !vector_index_.contains(r.article_id)) {
    return error(404, "unknown article " + r.article_id);
  }
  if (r.condition != condition_for(r.rater_id)) return error(422, "condition does not match the rater's assignment");

  const std::lock_guard lock(ratings_mutex_);
  if (rated_.contains({r.rater_id, r.article_id})) {
    return ok(200, json{{"status", "duplicate"}, {"article_id", r.article_id}, {"rater_id", r.rater_id}});
  }
  indicators::append_rating(data_.ratings_path, r);
  rated_.emplace(r.rater_id, r.article_id);
  ratings_.push_back(r);
  return ok(201, json{{"status", "stored"}, {"article_id", r.article_id}, {"rater_id", r.rater_id}});
}

Response ReviewService::report() {
  std::vector<indicators::RatingRecord> snapshot;
  {
    const std::lock_guard lock(ratings_mutex_);
    snapshot = ratings_;
  }
  const auto r = indicators::rmse_report(snapshot, data_.experts, data_.automated);
  return {200, indicators::report_json(r)};
}

void ReviewService::serve(const std::string& host, int port, const std::optional<fs::path>& ui_dir) {
  httplib::Server server;
  const auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const auto out = handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.Get(R"(/api/.*)", bridge);
  server.Post(R"(/api/.*)", bridge);
  if (ui_dir && fs::is_directory(*ui_dir)) server.set_mount_point("/", ui_dir->string());
  if (!server.listen(host, port)) throw Error("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace newsgauge::service
