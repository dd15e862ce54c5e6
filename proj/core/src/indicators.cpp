#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json_io.hpp"
#include "newsgauge/error.hpp"
#include "newsgauge/indicators.hpp"
#include "strings.hpp"

namespace newsgauge::indicators {
namespace {

using detail::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json optional_json(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }

std::string format_cell(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

const std::array<std::string, kIndicatorCount>& indicator_names() {
  static const std::array<std::string, kIndicatorCount> names = {
      "title_clickbait",    "title_subjectivity", "title_polarity",   "readability",      "word_count",
      "bylined",            "n_total_quotes",     "n_person_quotes",  "n_scientific_mentions",
      "n_weasel_quotes",    "source_adherence",   "pagerank",         "betweenness",      "in_degree",
      "out_degree",         "alexa_rank",         "n_likes",          "n_retweets",       "n_replies",
      "sum_followers",      "sum_followees",      "n_countries",      "shelf_life_hours", "tweet_stance",
      "tweet_subjectivity", "tweet_polarity",     "reply_stance",     "reply_subjectivity",
      "reply_polarity"};
  return names;
}

std::vector<double> encode(const IndicatorVector& v) {
  const auto d = [](auto x) { return static_cast<double>(x); };
  return {v.title_clickbait,
          v.title_subjectivity,
          v.title_polarity,
          v.readability,
          d(v.word_count),
          v.bylined ? 1.0 : 0.0,
          d(v.n_total_quotes),
          d(v.n_person_quotes),
          d(v.n_scientific_mentions),
          d(v.n_weasel_quotes),
          v.source_adherence.value_or(kNaN),
          v.pagerank,
          v.betweenness,
          d(v.in_degree),
          d(v.out_degree),
          v.alexa_rank ? d(*v.alexa_rank) : kNaN,
          d(v.reach.n_likes),
          d(v.reach.n_retweets),
          d(v.reach.n_replies),
          d(v.reach.sum_followers),
          d(v.reach.sum_followees),
          d(v.reach.n_countries),
          v.reach.shelf_life_hours,
          v.tweet_stance,
          v.tweet_subjectivity,
          v.tweet_polarity,
          v.reply_stance,
          v.reply_subjectivity,
          v.reply_polarity};
}

std::string to_json(const IndicatorVector& v) {
  const json j{{"article_id", v.article_id},
               {"outlet", v.outlet},
               {"title_clickbait", v.title_clickbait},
               {"title_subjectivity", v.title_subjectivity},
               {"title_polarity", v.title_polarity},
               {"readability", v.readability},
               {"word_count", v.word_count},
               {"bylined", v.bylined},
               {"n_total_quotes", v.n_total_quotes},
               {"n_person_quotes", v.n_person_quotes},
               {"n_scientific_mentions", v.n_scientific_mentions},
               {"n_weasel_quotes", v.n_weasel_quotes},
               {"source_adherence", optional_json(v.source_adherence)},
               {"pagerank", v.pagerank},
               {"betweenness", v.betweenness},
               {"in_degree", v.in_degree},
               {"out_degree", v.out_degree},
               {"alexa_rank", optional_json(v.alexa_rank)},
               {"n_postings", v.reach.n_postings},
               {"n_likes", v.reach.n_likes},
               {"n_retweets", v.reach.n_retweets},
               {"n_replies", v.reach.n_replies},
               {"sum_followers", v.reach.sum_followers},
               {"sum_followees", v.reach.sum_followees},
               {"n_countries", v.reach.n_countries},
               {"shelf_life_hours", v.reach.shelf_life_hours},
               {"tweet_stance", v.tweet_stance},
               {"reply_stance", v.reply_stance},
               {"tweet_subjectivity", v.tweet_subjectivity},
               {"tweet_polarity", v.tweet_polarity},
               {"reply_subjectivity", v.reply_subjectivity},
               {"reply_polarity", v.reply_polarity}};
  return j.dump();
}

IndicatorVector from_json(std::string_view line) {
  try {
    const auto j = json::parse(line);
    IndicatorVector v;
    v.article_id = j.at("article_id").get<std::string>();
    v.outlet = j.at("outlet").get<std::string>();
    v.title_clickbait = j.at("title_clickbait").get<double>();
    v.title_subjectivity = j.at("title_subjectivity").get<double>();
    v.title_polarity = j.at("title_polarity").get<double>();
    v.readability = j.at("readability").get<double>();
    v.word_count = j.at("word_count").get<std::int64_t>();
    v.bylined = j.at("bylined").get<bool>();
    v.n_total_quotes = j.at("n_total_quotes").get<std::int64_t>();
    v.n_person_quotes = j.at("n_person_quotes").get<std::int64_t>();
    v.n_scientific_mentions = j.at("n_scientific_mentions").get<std::int64_t>();
    v.n_weasel_quotes = j.at("n_weasel_quotes").get<std::int64_t>();
    if (!j.at("source_adherence").is_null()) v.source_adherence = j.at("source_adherence").get<double>();
    v.pagerank = j.at("pagerank").get<double>();
    v.betweenness = j.at("betweenness").get<double>();
    v.in_degree = j.at("in_degree").get<std::int64_t>();
    v.out_degree = j.at("out_degree").get<std::int64_t>();
    if (!j.at("alexa_rank").is_null()) v.alexa_rank = j.at("alexa_rank").get<std::int64_t>();
    v.reach.n_postings = j.at("n_postings").get<std::int64_t>();
    v.reach.n_likes = j.at("n_likes").get<std::int64_t>();
    v.reach.n_retweets = j.at("n_retweets").get<std::int64_t>();
    v.reach.n_replies = j.at("n_replies").get<std::int64_t>();
    v.reach.sum_followers = j.at("sum_followers").get<std::int64_t>();
    v.reach.sum_followees = j.at("sum_followees").get<std::int64_t>();
    v.reach.n_countries = j.at("n_countries").get<std::int64_t>();
    v.reach.shelf_life_hours = j.at("shelf_life_hours").get<double>();
    v.tweet_stance = j.at("tweet_stance").get<double>();
    v.reply_stance = j.at("reply_stance").get<double>();
    v.tweet_subjectivity = j.at("tweet_subjectivity").get<double>();
    v.tweet_polarity = j.at("tweet_polarity").get<double>();
    v.reply_subjectivity = j.at("reply_subjectivity").get<double>();
    v.reply_polarity = j.at("reply_polarity").get<double>();
    return v;
  } catch (const json::exception& e) {
    throw DataError(std::string("indicator record: ") + e.what());
  }
}

void write_jsonl(const std::filesystem::path& path, std::span<const IndicatorVector> vectors) {
  std::string out;
  for (const auto& v : vectors) out += to_json(v) + '\n';
  detail::write_file(path, out);
}

std::vector<IndicatorVector> read_jsonl(const std::filesystem::path& path) {
  std::vector<IndicatorVector> out;
  for (const auto& line : detail::content_lines(detail::read_file(path))) out.push_back(from_json(line));
  return out;
}

void write_csv(const std::filesystem::path& path, std::span<const IndicatorVector> vectors) {
  std::string out = "article_id,outlet";
  for (const auto& n : indicator_names()) out += ',' + n;
  out += '\n';
  for (const auto& v : vectors) {
    out += v.article_id + ',' + v.outlet;
    for (double x : encode(v)) out += ',' + format_cell(x);
    out += '\n';
  }
  detail::write_file(path, out);
}

std::map<std::string, OutletInfo> load_outlets(const std::filesystem::path& path) {
  std::map<std::string, OutletInfo> out;
  for (const auto& line : detail::content_lines(detail::read_file(path))) {
    const auto f = detail::split(line, '\t');
    if (f.size() < 2 || f.size() > 3) throw DataError(path.string() + ": expected 'domain<TAB>tier<TAB>alexa_rank'");
    if (f[0] == "domain") continue;
    OutletInfo info;
    try {
      info.tier = std::stoi(std::string(f[1]));
      if (f.size() == 3 && !detail::trim(f[2]).empty()) info.alexa_rank = std::stoll(std::string(f[2]));
    } catch (const std::exception&) {
      throw DataError(path.string() + ": bad number in row for " + std::string(f[0]));
    }
    if (info.tier < 1 || info.tier > 5) throw DataError(path.string() + ": tier out of 1..5 for " + std::string(f[0]));
    if (info.alexa_rank && *info.alexa_rank <= 0) throw DataError(path.string() + ": alexa rank must be positive");
    out[detail::to_lower(detail::trim(f[0]))] = info;
  }
  return out;
}

// --- assembly -----------------------------------------------------------------

IndicatorBuilder::IndicatorBuilder(const Context& context) : ctx_(context) {}

const adherence::DocProfile& IndicatorBuilder::paper_profile(const std::string& paper_id) const {
  if (auto it = paper_profiles_.find(paper_id); it != paper_profiles_.end()) return it->second;
  const auto* paper = ctx_.corpus.paper(paper_id);
  if (paper == nullptr) throw NotFoundError("paper '" + paper_id + "' is not loaded");
  return paper_profiles_.emplace(paper_id, adherence::profile(*paper, ctx_.topics, ctx_.embeddings)).first->second;
}

std::vector<quotes::Quote> IndicatorBuilder::quotes_of(const corpus::Article& article) const {
  const auto text = quotes::prepare(article);
  const auto candidates = ctx_.extractor.extract(text, &ctx_.names);
  return quotes::attribute(candidates, text, ctx_.extractor.lexicon(), ctx_.names);
}

IndicatorVector IndicatorBuilder::compute(const std::string& article_id) const {
  const auto* article = ctx_.corpus.article(article_id);
  if (article == nullptr || ctx_.graph.kind(article_id) != diffusion::NodeKind::Article) {
    throw NotFoundError("article '" + article_id + "' is not in the pruned graph");
  }
  IndicatorVector v;
  v.article_id = article->id;
  v.outlet = article->outlet;

  const auto title = textkit::analyze(article->title);
  v.title_clickbait = ctx_.headlines.score(article->title);
  const auto title_sentiment = textkit::sentiment(title);
  v.title_subjectivity = title_sentiment.subjectivity;
  v.title_polarity = title_sentiment.polarity;

  const auto text = quotes::prepare(*article);
  const auto& body = text.text;
  v.word_count = std::count_if(body.tokens.begin(), body.tokens.end(), textkit::is_word);
  v.readability = v.word_count > 0 ? textkit::flesch_reading_ease(body) : 0.0;
  v.bylined = article->byline.has_value() && !detail::trim(*article->byline).empty();

  const auto candidates = ctx_.extractor.extract(text, &ctx_.names);
  const auto quotes = quotes::attribute(candidates, text, ctx_.extractor.lexicon(), ctx_.names);
  const auto stats = quotes::quote_stats(quotes, quotes::scientific_mentions(text, ctx_.allowlist, quotes));
  v.n_total_quotes = static_cast<std::int64_t>(stats.total_quotes);
  v.n_person_quotes = static_cast<std::int64_t>(stats.person_quotes);
  v.n_scientific_mentions = static_cast<std::int64_t>(stats.scientific_mentions);
  v.n_weasel_quotes = static_cast<std::int64_t>(stats.weasel_quotes);

  const auto& targets = ctx_.graph.successors(article_id);
  const bool cites_paper = std::any_of(targets.begin(), targets.end(), [&](const std::string& t) {
    return ctx_.graph.kind(t) == diffusion::NodeKind::Paper;
  });
  if (cites_paper && v.word_count > 0) {
    const auto profile = adherence::profile(article->id, body, ctx_.topics, ctx_.embeddings);
    v.source_adherence = adherence::source_adherence(article_id, profile, ctx_.graph, ctx_.sts,
                                                     [&](const std::string& id) -> const adherence::DocProfile& {
                                                       return paper_profile(id);
                                                     });
  }

  const auto lookup = [](const auto& map, const std::string& key) {
    const auto it = map.find(key);
    return it == map.end() ? typename std::decay_t<decltype(map)>::mapped_type{} : it->second;
  };
  v.pagerank = lookup(ctx_.centrality.pagerank, article_id);
  v.betweenness = lookup(ctx_.centrality.betweenness, article_id);
  v.in_degree = static_cast<std::int64_t>(lookup(ctx_.centrality.in_degree, article_id));
  v.out_degree = static_cast<std::int64_t>(lookup(ctx_.centrality.out_degree, article_id));
  if (auto it = ctx_.outlets.find(article->outlet); it != ctx_.outlets.end()) v.alexa_rank = it->second.alexa_rank;

  std::vector<corpus::Posting> postings;
  std::vector<corpus::Reply> replies;
  std::vector<social::WeightedStance> tweet_stances;
  std::vector<social::WeightedStance> reply_stances;
  std::vector<double> tweet_subj, tweet_pol, reply_subj, reply_pol;
  for (const auto& pid : ctx_.graph.predecessors(article_id)) {
    const auto* posting = ctx_.corpus.posting(pid);
    if (posting == nullptr) continue;
    postings.push_back(*posting);
    const auto posting_text = textkit::analyze(posting->text);
    const auto s = textkit::sentiment(posting_text);
    tweet_subj.push_back(s.subjectivity);
    tweet_pol.push_back(s.polarity);
    const auto label = ctx_.stance.classify(social::stance_features(posting_text, title, ctx_.embeddings));
    tweet_stances.push_back({label.binary, social::popularity_weight(posting->likes, posting->retweets)});
    for (const auto* reply : ctx_.corpus.replies_to(pid)) {
      replies.push_back(*reply);
      const auto reply_text = textkit::analyze(reply->text);
      const auto rs = textkit::sentiment(reply_text);
      reply_subj.push_back(rs.subjectivity);
      reply_pol.push_back(rs.polarity);
      const auto rl = ctx_.stance.classify(social::stance_features(reply_text, posting_text, ctx_.embeddings));
      reply_stances.push_back({rl.binary, social::popularity_weight(reply->likes, reply->retweets)});
    }
  }
  v.reach = social::reach(postings, replies);
  v.tweet_stance = social::aggregate_stance(tweet_stances);
  v.reply_stance = social::aggregate_stance(reply_stances);
  v.tweet_subjectivity = mean_of(tweet_subj);
  v.tweet_polarity = mean_of(tweet_pol);
  v.reply_subjectivity = mean_of(reply_subj);
  v.reply_polarity = mean_of(reply_pol);
  return v;
}

// --- weak supervision ---------------------------------------------------------

WeakLabels weak_labels(std::span<const IndicatorVector> vectors, const std::map<std::string, OutletInfo>& outlets) {
  WeakLabels w;
  for (const auto& v : vectors) {
    const auto it = outlets.find(v.outlet);
    if (it == outlets.end()) {
      ++w.excluded;
      continue;
    }
    w.labels[v.article_id] = it->second.tier;
  }
  if (w.labels.empty()) throw PreconditionError("weak_labels: no article outlet has a reputability tier");
  return w;
}

QualityModel QualityModel::train(std::span<const IndicatorVector> vectors, const std::map<std::string, int>& labels,
                                 const learn::ForestOptions& options) {
  learn::Matrix X;
  std::vector<int> y;
  std::set<int> tiers;
  for (const auto& v : vectors) {
    const auto it = labels.find(v.article_id);
    if (it == labels.end()) continue;
    X.push_back(encode(v));
    y.push_back(it->second);
    tiers.insert(it->second);
  }
  if (tiers.size() < 2) throw PreconditionError("train_quality: need at least two tiers");
  auto imputer = learn::MedianImputer::fit(X);
  auto forest = learn::Forest::train(imputer.transform(X), y, options);
  return QualityModel(std::move(imputer), std::move(forest));
}

double QualityModel::score(const IndicatorVector& v) const {
  if (!forest_.trained()) throw PreconditionError("quality score: model is not trained");
  const auto proba = forest_.predict_proba(imputer_.transform(encode(v)));
  double expected = 0.0;
  for (std::size_t i = 0; i < proba.size(); ++i) expected += proba[i] * forest_.classes()[i];
  return std::clamp(std::round(expected * 10.0) / 10.0, 1.0, 5.0);
}

void save_model(const QualityModel& model, const std::filesystem::path& path) {
  detail::write_model(path, "newsgauge.quality",
                      json{{"indicators", indicator_names()},
                           {"imputer", detail::imputer_to_json(model.imputer())},
                           {"forest", detail::forest_to_json(model.forest())}});
}

QualityModel load_quality_model(const std::filesystem::path& path) {
  const auto j = detail::read_model(path, "newsgauge.quality");
  try {
    return QualityModel(detail::imputer_from_json(j.at("imputer")), detail::forest_from_json(j.at("forest")));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<Discrimination> discriminate(std::span<const IndicatorVector> vectors,
                                         const std::map<std::string, int>& groups) {
  std::vector<std::vector<double>> encoded;
  std::vector<int> group_of;
  std::set<int> distinct;
  for (const auto& v : vectors) {
    const auto it = groups.find(v.article_id);
    if (it == groups.end()) continue;
    encoded.push_back(encode(v));
    group_of.push_back(it->second);
    distinct.insert(it->second);
  }
  if (distinct.size() < 2) throw PreconditionError("discriminate: need at least two groups");
  std::vector<Discrimination> out;
  for (std::size_t f = 0; f < kIndicatorCount; ++f) {
    std::map<int, std::vector<double>> by_group;
    for (std::size_t i = 0; i < encoded.size(); ++i) {
      if (!std::isnan(encoded[i][f])) by_group[group_of[i]].push_back(encoded[i][f]);
    }
    std::vector<std::vector<double>> samples;
    for (auto& [g, values] : by_group) {
      if (values.size() >= 2) samples.push_back(std::move(values));
    }
    Discrimination d{indicator_names()[f], 0.0, 1.0, ""};
    if (samples.size() >= 2) {
      const auto r = learn::anova_f(samples);
      d.f_statistic = r.f_statistic;
      d.p_value = r.p_value;
    }
    d.stars = learn::significance_stars(d.p_value);
    out.push_back(std::move(d));
  }
  std::stable_sort(out.begin(), out.end(), [](const Discrimination& a, const Discrimination& b) {
    if (a.p_value != b.p_value) return a.p_value < b.p_value;
    if (a.f_statistic != b.f_statistic) return a.f_statistic > b.f_statistic;
    return a.indicator < b.indicator;
  });
  return out;
}

int quintile_stars(double value, std::span<const double> reference) {
  if (reference.empty()) throw PreconditionError("quintile_stars: empty reference distribution");
  std::vector<double> sorted(reference.begin(), reference.end());
  int stars = 1;
  for (double pct : {20.0, 40.0, 60.0, 80.0}) {
    if (learn::nearest_rank_percentile(sorted, pct) < value) ++stars;
  }
  return stars;
}

}  // namespace newsgauge::indicators
