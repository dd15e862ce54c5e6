#pragma once

// Semantic text similarity between a news article and a paper at document,
// paragraph and sentence level; training pairs; the source-adherence score.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newsgauge/corpus.hpp"
#include "newsgauge/diffusion.hpp"
#include "newsgauge/learn.hpp"
#include "newsgauge/textkit.hpp"
#include "newsgauge/topics.hpp"

namespace newsgauge::adherence {

inline constexpr std::size_t kFeaturesPerLevel = 7;
inline constexpr std::size_t kFeatureCount = 3 * kFeaturesPerLevel;

/// Per level (document, paragraph, sentence): jaccard of persons+orgs,
/// dates, numbers, percentages; embedding cosine; topic Hellinger
/// similarity; relative length difference.
using STSFeatures = std::array<double, kFeatureCount>;

const std::array<std::string, kFeatureCount>& feature_names();

/// What the similarity metrics need from one passage.
struct Passage {
  std::set<std::string> persons_orgs;
  std::set<std::string> dates;
  std::set<std::string> numbers;
  std::set<std::string> percentages;
  textkit::Vector embedding;
  topics::TopicVector topics;
  std::size_t words = 0;
};

struct DocProfile {
  std::string id;
  Passage document;
  std::vector<Passage> paragraphs;
  std::vector<Passage> sentences;
};

/// Throws PreconditionError when the text has no words.
DocProfile profile(std::string id, const textkit::TokenizedText& text, const topics::TopicModel& model,
                   const textkit::EmbeddingTable& embeddings);
DocProfile profile(const corpus::Article& article, const topics::TopicModel& model,
                   const textkit::EmbeddingTable& embeddings);
/// Paper body paragraphs are blank-line separated blocks.
DocProfile profile(const corpus::Paper& paper, const topics::TopicModel& model,
                   const textkit::EmbeddingTable& embeddings);

/// Empty-vs-empty is 1, empty-vs-nonempty is 0.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);
/// |a - b| / max(a, b); 0 when both are 0.
double relative_length_difference(std::size_t a, std::size_t b);

inline constexpr std::size_t kMaxPassages = 200;

/// Paragraph and sentence features average over the cross product of
/// passages, each side subsampled to kMaxPassages (seeded by the pair of ids).
STSFeatures sts_features(const DocProfile& a, const DocProfile& b);

enum class PairLabel { Negative = 0, Positive = 1 };

struct PairSpec {
  std::string article_id;
  std::string paper_id;
  PairLabel label = PairLabel::Negative;

  friend bool operator==(const PairSpec&, const PairSpec&) = default;
};

/// Positives: articles with exactly one paper edge. Negatives: as many
/// seeded uniform (article, paper) pairs that are not linked. Throws
/// PreconditionError when no article has exactly one paper link.
std::vector<PairSpec> build_pairs(const diffusion::DiffusionGraph& graph, std::uint64_t seed);

struct TrainingPair {
  PairSpec pair;
  STSFeatures features{};
};

/// CSV with the 21 feature names plus "label" as header.
void write_pairs_csv(const std::filesystem::path& path, std::span<const TrainingPair> pairs);

class StsModel {
 public:
  StsModel() = default;
  explicit StsModel(learn::Forest forest) : forest_(std::move(forest)) {}

  /// Needs at least two pairs of each label.
  static StsModel train(std::span<const TrainingPair> pairs, const learn::ForestOptions& options = {});

  /// Probability of the positive label. Throws PreconditionError if untrained.
  [[nodiscard]] double score(const STSFeatures& features) const;
  [[nodiscard]] const learn::Forest& forest() const { return forest_; }

  friend bool operator==(const StsModel&, const StsModel&) = default;

 private:
  learn::Forest forest_;
};

/// Maximum score over the papers the article links to; nullopt without any.
/// `paper_profile` returns the profile of a paper node.
template <typename ProfileLookup>
std::optional<double> source_adherence(const std::string& article_id, const DocProfile& article,
                                       const diffusion::DiffusionGraph& graph, const StsModel& model,
                                       ProfileLookup&& paper_profile) {
  std::optional<double> best;
  for (const auto& target : graph.successors(article_id)) {
    if (graph.kind(target) != diffusion::NodeKind::Paper) continue;
    const double s = model.score(sts_features(article, paper_profile(target)));
    if (!best || s > *best) best = s;
  }
  return best;
}

void save_model(const StsModel& model, const std::filesystem::path& path);
StsModel load_sts_model(const std::filesystem::path& path);

}  // namespace newsgauge::adherence
