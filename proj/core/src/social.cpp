#include <algorithm>
#include <array>
#include <set>

#include "newsgauge/error.hpp"
#include "newsgauge/social.hpp"
#include "strings.hpp"

namespace newsgauge::social {

ReachIndicators reach(std::span<const corpus::Posting> postings, std::span<const corpus::Reply> replies) {
  ReachIndicators r;
  std::set<std::string> countries;
  std::vector<double> stamps;
  for (const auto& p : postings) {
    ++r.n_postings;
    r.n_likes += p.likes;
    r.n_retweets += p.retweets;
    r.sum_followers += p.followers;
    r.sum_followees += p.followees;
    if (p.country) countries.insert(*p.country);
    stamps.push_back(static_cast<double>(p.timestamp));
  }
  r.n_replies = static_cast<std::int64_t>(replies.size());
  r.n_countries = static_cast<std::int64_t>(countries.size());
  if (stamps.size() >= 2) {
    const double lo = learn::nearest_rank_percentile(stamps, 5.0);
    const double hi = learn::nearest_rank_percentile(stamps, 95.0);
    r.shelf_life_hours = (hi - lo) / 3600.0;
  }
  return r;
}

std::string_view to_string(Stance stance) {
  switch (stance) {
    case Stance::Supporting:
      return "supporting";
    case Stance::Commenting:
      return "commenting";
    case Stance::Contradicting:
      return "contradicting";
    case Stance::Questioning:
      return "questioning";
  }
  return "?";
}

std::optional<Stance> parse_stance(std::string_view label) {
  const auto l = detail::to_lower(detail::trim(label));
  for (auto s : {Stance::Supporting, Stance::Commenting, Stance::Contradicting, Stance::Questioning}) {
    if (l == to_string(s)) return s;
  }
  if (l == "not-related" || l == "not_related" || l == "unrelated") return std::nullopt;
  throw DataError("unknown stance label '" + std::string(label) + "'");
}

StanceLabel make_label(Stance stance) {
  const bool positive = stance == Stance::Supporting || stance == Stance::Commenting;
  return {stance, positive ? 1 : -1};
}

std::vector<double> StanceFeatures::to_vector() const {
  return {static_cast<double>(n_words),
          static_cast<double>(n_positive),
          static_cast<double>(n_negative),
          static_cast<double>(n_negations),
          static_cast<double>(n_urls),
          static_cast<double>(n_question_marks),
          static_cast<double>(n_exclamation_marks),
          sim_to_parent,
          reply_polarity,
          parent_polarity};
}

StanceFeatures stance_features(const textkit::TokenizedText& reply, const textkit::TokenizedText& parent,
                               const textkit::EmbeddingTable& embeddings) {
  StanceFeatures f;
  const auto counts = textkit::sentiment_counts(reply);
  f.n_positive = static_cast<std::int64_t>(counts.positive);
  f.n_negative = static_cast<std::int64_t>(counts.negative);
  for (const auto& t : reply.tokens) {
    if (textkit::is_word(t)) ++f.n_words;
    if (textkit::negation_words().contains(t.lower)) ++f.n_negations;
    if (textkit::is_url(t)) {
      ++f.n_urls;
      continue;
    }
    f.n_question_marks += std::count(t.surface.begin(), t.surface.end(), '?');
    f.n_exclamation_marks += std::count(t.surface.begin(), t.surface.end(), '!');
  }
  f.sim_to_parent = textkit::cosine(textkit::doc_vector(reply, embeddings), textkit::doc_vector(parent, embeddings));
  f.reply_polarity = textkit::sentiment(reply).polarity;
  f.parent_polarity = textkit::sentiment(parent).polarity;
  return f;
}

StanceFeatures stance_features(std::string_view reply, std::string_view parent,
                               const textkit::EmbeddingTable& embeddings) {
  return stance_features(textkit::analyze(reply), textkit::analyze(parent), embeddings);
}

StanceModel StanceModel::train(std::span<const StanceExample> examples, const learn::ForestOptions& options) {
  std::array<std::size_t, 4> per_class{};
  learn::Matrix X;
  std::vector<int> y;
  for (const auto& e : examples) {
    ++per_class[static_cast<std::size_t>(e.stance)];
    X.push_back(e.features.to_vector());
    y.push_back(static_cast<int>(e.stance));
  }
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    if (per_class[c] < 4) {
      throw PreconditionError("train_stance: class '" + std::string(to_string(static_cast<Stance>(c))) +
                              "' has fewer than four examples");
    }
  }
  return StanceModel(learn::Forest::train(X, y, options));
}

StanceLabel StanceModel::classify(const StanceFeatures& features) const {
  if (!forest_.trained()) throw PreconditionError("classify: stance model is not trained");
  return make_label(static_cast<Stance>(forest_.predict(features.to_vector())));
}

StanceLabels load_stance_labels(const std::filesystem::path& path) {
  StanceLabels out;
  std::set<std::string> seen;
  for (const auto& line : detail::content_lines(detail::read_file(path))) {
    const auto f = detail::split(line, '\t');
    if (f.size() != 2) throw DataError(path.string() + ": expected 'id<TAB>label' rows");
    if (f[0] == "reply_id" || f[0] == "id") continue;
    const std::string id(detail::trim(f[0]));
    if (!seen.insert(id).second) throw DataError(path.string() + ": duplicate id '" + id + "'");
    if (auto stance = parse_stance(f[1])) {
      out.labeled.push_back({id, *stance});
    } else {
      ++out.not_related;
    }
  }
  return out;
}

double popularity_weight(std::int64_t likes, std::int64_t retweets) {
  return 1.0 + static_cast<double>(likes) + static_cast<double>(retweets);
}

double aggregate_stance(std::span<const WeightedStance> items) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& it : items) {
    num += it.weight * static_cast<double>(it.binary);
    den += it.weight;
  }
  if (den <= 0.0) return 0.0;
  return std::clamp(num / den, -1.0, 1.0);
}

}  // namespace newsgauge::social
