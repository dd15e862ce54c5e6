#pragma once

// Bag-of-words clickbait classifier for headlines.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newsgauge/learn.hpp"

namespace newsgauge::textkit {

struct LabeledHeadline {
  bool clickbait = false;
  std::string title;
};

/// TSV rows "label<TAB>title" with label clickbait/news (or 1/0).
std::vector<LabeledHeadline> parse_headlines(std::string_view tsv);
std::vector<LabeledHeadline> load_headlines(const std::filesystem::path& path);
/// The labelled headline set shipped with the library.
const std::vector<LabeledHeadline>& bundled_headlines();

class HeadlineModel {
 public:
  HeadlineModel() = default;
  HeadlineModel(std::vector<std::string> vocabulary, learn::Forest forest, double prior);

  /// Unigram counts over words seen in at least two training headlines.
  static HeadlineModel train(std::span<const LabeledHeadline> headlines, const learn::ForestOptions& options = {});

  /// Probability of the clickbait class. A title with no known word gets the
  /// training prior. Throws PreconditionError when untrained.
  [[nodiscard]] double score(std::string_view title) const;
  [[nodiscard]] std::vector<double> features(std::string_view title) const;

  [[nodiscard]] bool trained() const { return forest_.trained(); }
  [[nodiscard]] const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  [[nodiscard]] const learn::Forest& forest() const { return forest_; }
  [[nodiscard]] double prior() const { return prior_; }

  friend bool operator==(const HeadlineModel&, const HeadlineModel&) = default;

 private:
  std::vector<std::string> vocabulary_;  // sorted
  learn::Forest forest_;
  double prior_ = 0.0;
};

double clickbait_score(std::string_view title, const HeadlineModel& model);

void save_model(const HeadlineModel& model, const std::filesystem::path& path);
HeadlineModel load_headline_model(const std::filesystem::path& path);

}  // namespace newsgauge::textkit
