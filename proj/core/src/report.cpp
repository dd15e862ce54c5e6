#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "json_io.hpp"
#include "newsgauge/error.hpp"
#include "newsgauge/indicators.hpp"
#include "strings.hpp"

namespace newsgauge::indicators {
namespace {

using detail::json;

constexpr std::array<std::string_view, 3> kBuckets = {"strong", "weak", "disagreement"};

std::string_view bucket_of(int gap) { return kBuckets[static_cast<std::size_t>(std::min(gap, 2))]; }

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const auto n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

using ArticleMeans = std::map<std::string, double>;

ArticleMeans crowd_means(const std::vector<const RatingRecord*>& ratings) {
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto* r : ratings) {
    auto& [sum, n] = acc[r->article_id];
    sum += r->score;
    ++n;
  }
  ArticleMeans out;
  for (const auto& [id, s] : acc) out[id] = s.first / static_cast<double>(s.second);
  return out;
}

// Drops raters whose mean absolute deviation from the per-article crowd
// mean exceeds twice the median rater's. Returns the surviving ratings.
std::vector<const RatingRecord*> drop_outliers(const std::vector<const RatingRecord*>& ratings,
                                               std::set<std::string>& dropped) {
  const auto means = crowd_means(ratings);
  std::map<std::string, std::pair<double, std::size_t>> dev;
  for (const auto* r : ratings) {
    auto& [sum, n] = dev[r->rater_id];
    sum += std::abs(r->score - means.at(r->article_id));
    ++n;
  }
  if (dev.size() < 3) return ratings;
  std::map<std::string, double> mad;
  std::vector<double> all;
  for (const auto& [rater, d] : dev) {
    mad[rater] = d.first / static_cast<double>(d.second);
    all.push_back(mad[rater]);
  }
  const double cut = 2.0 * median(all);
  std::vector<const RatingRecord*> kept;
  for (const auto* r : ratings) {
    if (mad.at(r->rater_id) > cut) {
      dropped.insert(r->rater_id);
    } else {
      kept.push_back(r);
    }
  }
  return kept;
}

std::optional<double> bucket_rmse(const std::vector<std::string>& articles, const ArticleMeans& predicted,
                                  const std::map<std::string, double>& expert_mean) {
  std::vector<double> a, b;
  for (const auto& id : articles) {
    if (auto it = predicted.find(id); it != predicted.end()) {
      a.push_back(it->second);
      b.push_back(expert_mean.at(id));
    }
  }
  if (a.empty()) return std::nullopt;
  return learn::rmse(a, b);
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

}  // namespace

std::string_view to_string(Condition c) {
  return c == Condition::WithIndicators ? "with_indicators" : "without_indicators";
}

std::optional<Condition> parse_condition(std::string_view s) {
  if (s == "with_indicators" || s == "with") return Condition::WithIndicators;
  if (s == "without_indicators" || s == "without") return Condition::WithoutIndicators;
  return std::nullopt;
}

std::string to_json(const RatingRecord& r) {
  return json{{"article_id", r.article_id},
              {"rater_id", r.rater_id},
              {"condition", to_string(r.condition)},
              {"score", r.score},
              {"timestamp", r.timestamp}}
      .dump();
}

RatingRecord rating_from_json(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(std::string("rating record: ") + e.what());
  }
  if (!j.is_object()) throw DataError("rating record: expected an object");
  RatingRecord r;
  const auto text = [&](const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) {
      throw DataError(std::string("rating record: '") + key + "' must be a non-empty string");
    }
    return it->get<std::string>();
  };
  r.article_id = text("article_id");
  r.rater_id = text("rater_id");
  const auto condition = parse_condition(text("condition"));
  if (!condition) throw DataError("rating record: unknown condition");
  r.condition = *condition;
  const auto score = j.find("score");
  if (score == j.end() || !score->is_number_integer()) throw DataError("rating record: 'score' must be an integer");
  const auto s = score->get<std::int64_t>();
  if (s < 1 || s > 5) throw DataError("rating record: score must be in 1..5");
  r.score = static_cast<int>(s);
  if (const auto ts = j.find("timestamp"); ts != j.end()) {
    if (!ts->is_number_integer()) throw DataError("rating record: 'timestamp' must be an integer");
    r.timestamp = ts->get<std::int64_t>();
  }
  return r;
}

std::vector<RatingRecord> load_ratings(const std::filesystem::path& path) {
  std::vector<RatingRecord> out;
  for (const auto& line : detail::content_lines(detail::read_file(path))) out.push_back(rating_from_json(line));
  return out;
}

void append_rating(const std::filesystem::path& path, const RatingRecord& r) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot open ratings store " + path.string());
  out << to_json(r) << '\n';
  out.flush();
  if (!out) throw Error("failed to append to ratings store " + path.string());
}

std::vector<ExpertLabel> load_expert_labels(const std::filesystem::path& path) {
  std::vector<ExpertLabel> out;
  for (const auto& line : detail::content_lines(detail::read_file(path))) {
    const auto f = detail::split(line, '\t');
    if (f.size() != 3) throw DataError(path.string() + ": expected 'article_id<TAB>expert_id<TAB>score'");
    if (f[0] == "article_id") continue;
    ExpertLabel e{std::string(detail::trim(f[0])), std::string(detail::trim(f[1])), 0};
    try {
      e.score = std::stoi(std::string(f[2]));
    } catch (const std::exception&) {
      throw DataError(path.string() + ": bad score for " + e.article_id);
    }
    if (e.score < 1 || e.score > 5) throw DataError(path.string() + ": score outside 1..5 for " + e.article_id);
    out.push_back(std::move(e));
  }
  return out;
}

RmseReport rmse_report(std::span<const RatingRecord> ratings, std::span<const ExpertLabel> experts,
                       const std::map<std::string, double>& automated) {
  std::map<std::string, std::vector<int>> labels;
  for (const auto& e : experts) labels[e.article_id].push_back(e.score);
  std::map<std::string, double> expert_mean;
  std::map<std::string, std::vector<std::string>> buckets;
  for (const auto& [id, scores] : labels) {
    if (scores.size() != 2) {
      throw DataError("article '" + id + "' has " + std::to_string(scores.size()) + " expert labels, expected 2");
    }
    expert_mean[id] = 0.5 * (scores[0] + scores[1]);
    buckets[std::string(bucket_of(std::abs(scores[0] - scores[1])))].push_back(id);
  }

  // One rating per (rater, article); the earliest stored wins.
  std::set<std::pair<std::string, std::string>> seen;
  std::map<Condition, std::vector<const RatingRecord*>> by_condition;
  RmseReport report;
  for (const auto& r : ratings) {
    if (!labels.contains(r.article_id)) throw DataError("rated article '" + r.article_id + "' has no expert labels");
    if (!seen.emplace(r.rater_id, r.article_id).second) continue;
    by_condition[r.condition].push_back(&r);
    ++report.n_ratings;
  }

  std::set<std::string> dropped;
  std::map<Condition, ArticleMeans> crowd;
  for (const auto& [condition, rs] : by_condition) crowd[condition] = crowd_means(drop_outliers(rs, dropped));
  report.dropped_raters.assign(dropped.begin(), dropped.end());

  const auto make_row = [&](std::string name, const std::vector<std::string>& ids) {
    RmseRow row{std::move(name), ids.size(), std::nullopt, std::nullopt, std::nullopt};
    row.rmse_without = bucket_rmse(ids, crowd[Condition::WithoutIndicators], expert_mean);
    row.rmse_with = bucket_rmse(ids, crowd[Condition::WithIndicators], expert_mean);
    row.rmse_automated = bucket_rmse(ids, automated, expert_mean);
    return row;
  };
  std::vector<std::string> all;
  for (const auto name : kBuckets) {
    const auto& ids = buckets[std::string(name)];
    report.rows.push_back(make_row(std::string(name), ids));
    all.insert(all.end(), ids.begin(), ids.end());
  }
  std::sort(all.begin(), all.end());
  report.rows.push_back(make_row("all", all));
  return report;
}

void write_report_csv(const std::filesystem::path& path, const RmseReport& report) {
  std::string out = "bucket,n_articles,rmse_without_indicators,rmse_with_indicators,rmse_automated\n";
  for (const auto& r : report.rows) {
    out += r.bucket + ',' + std::to_string(r.n_articles) + ',' + cell(r.rmse_without) + ',' + cell(r.rmse_with) +
           ',' + cell(r.rmse_automated) + '\n';
  }
  detail::write_file(path, out);
}

std::string report_json(const RmseReport& report) {
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back(json{{"bucket", r.bucket},
                        {"n_articles", r.n_articles},
                        {"rmse_without_indicators", opt(r.rmse_without)},
                        {"rmse_with_indicators", opt(r.rmse_with)},
                        {"rmse_automated", opt(r.rmse_automated)}});
  }
  return json{{"rows", rows}, {"n_ratings", report.n_ratings}, {"dropped_raters", report.dropped_raters}}.dump();
}

}  // namespace newsgauge::indicators
