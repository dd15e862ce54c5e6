#pragma once

// Reach of an article on social media, and stance of postings and replies.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newsgauge/corpus.hpp"
#include "newsgauge/learn.hpp"
#include "newsgauge/textkit.hpp"

namespace newsgauge::social {

struct ReachIndicators {
  std::int64_t n_postings = 0;
  std::int64_t n_likes = 0;
  std::int64_t n_retweets = 0;
  std::int64_t n_replies = 0;
  std::int64_t sum_followers = 0;
  std::int64_t sum_followees = 0;
  std::int64_t n_countries = 0;
  double shelf_life_hours = 0.0;

  friend bool operator==(const ReachIndicators&, const ReachIndicators&) = default;
};

/// `postings` are those linked to the article, `replies` the replies to them.
/// Shelf life spans the nearest-rank 5th to 95th percentile timestamps.
ReachIndicators reach(std::span<const corpus::Posting> postings, std::span<const corpus::Reply> replies);

enum class Stance { Supporting = 0, Commenting = 1, Contradicting = 2, Questioning = 3 };

std::string_view to_string(Stance stance);
/// nullopt for "not-related"; throws DataError for unknown labels.
std::optional<Stance> parse_stance(std::string_view label);

struct StanceLabel {
  Stance four_class = Stance::Commenting;
  int binary = 1;  // +1 for supporting/commenting, -1 otherwise

  friend bool operator==(const StanceLabel&, const StanceLabel&) = default;
};

StanceLabel make_label(Stance stance);

struct StanceFeatures {
  std::int64_t n_words = 0;
  std::int64_t n_positive = 0;
  std::int64_t n_negative = 0;
  std::int64_t n_negations = 0;
  std::int64_t n_urls = 0;
  std::int64_t n_question_marks = 0;
  std::int64_t n_exclamation_marks = 0;
  double sim_to_parent = 0.0;
  double reply_polarity = 0.0;
  double parent_polarity = 0.0;

  [[nodiscard]] std::vector<double> to_vector() const;
};

StanceFeatures stance_features(const textkit::TokenizedText& reply, const textkit::TokenizedText& parent,
                               const textkit::EmbeddingTable& embeddings);
StanceFeatures stance_features(std::string_view reply, std::string_view parent,
                               const textkit::EmbeddingTable& embeddings);

struct StanceExample {
  StanceFeatures features;
  Stance stance = Stance::Commenting;
};

class StanceModel {
 public:
  StanceModel() = default;
  explicit StanceModel(learn::Forest forest) : forest_(std::move(forest)) {}

  /// Four-class forest; needs at least four examples of every class.
  static StanceModel train(std::span<const StanceExample> examples, const learn::ForestOptions& options = {});

  [[nodiscard]] StanceLabel classify(const StanceFeatures& features) const;
  [[nodiscard]] const learn::Forest& forest() const { return forest_; }

  friend bool operator==(const StanceModel&, const StanceModel&) = default;

 private:
  learn::Forest forest_;
};

struct LabeledId {
  std::string id;
  Stance stance;
};

struct StanceLabels {
  std::vector<LabeledId> labeled;
  std::size_t not_related = 0;
};

/// TSV rows: item id, label. "not-related" rows are counted and left out.
StanceLabels load_stance_labels(const std::filesystem::path& path);

struct WeightedStance {
  int binary = 1;
  double weight = 1.0;
};

/// 1 + likes + retweets.
double popularity_weight(std::int64_t likes, std::int64_t retweets);

/// Weighted mean of binary stances in [-1, 1]; 0 when empty.
double aggregate_stance(std::span<const WeightedStance> items);

void save_model(const StanceModel& model, const std::filesystem::path& path);
StanceModel load_stance_model(const std::filesystem::path& path);

}  // namespace newsgauge::social
