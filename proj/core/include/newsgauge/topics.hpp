#pragma once

// Latent Dirichlet allocation by collapsed Gibbs sampling, and Hellinger
// similarity between topic distributions.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "newsgauge/textkit.hpp"

namespace newsgauge::topics {

struct LdaOptions {
  std::size_t topics = 20;
  double alpha = 2.5;  // 50 / topics for the default topic count
  double beta = 0.01;
  std::size_t iterations = 500;
  std::uint64_t seed = 0;

  /// Defaults with alpha = 50 / k.
  static LdaOptions with_topics(std::size_t k);
};

/// Topic-word distributions. Every row of phi sums to one and is positive.
class TopicModel {
 public:
  TopicModel() = default;
  TopicModel(std::vector<std::string> vocabulary, std::vector<std::vector<double>> phi, double alpha, double beta,
             std::uint64_t seed);

  [[nodiscard]] std::size_t topic_count() const { return phi_.size(); }
  [[nodiscard]] const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  [[nodiscard]] const std::vector<std::vector<double>>& phi() const { return phi_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  /// Vocabulary index of a lowercase word, or -1.
  [[nodiscard]] std::ptrdiff_t word_id(const std::string& word) const;

  friend bool operator==(const TopicModel&, const TopicModel&) = default;

 private:
  std::vector<std::string> vocabulary_;
  std::vector<std::vector<double>> phi_;
  std::unordered_map<std::string, std::size_t> index_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::uint64_t seed_ = 0;
};

using TopicVector = std::vector<double>;

/// Words kept for topic modelling: lowercase alphabetic tokens of length >= 2
/// that are not stopwords.
std::vector<std::string> topic_terms(std::span<const textkit::Token> tokens);

/// Documents are sorted into a canonical order before sampling, so the model
/// does not depend on input order. Throws DataError on an empty vocabulary
/// and PreconditionError when topics < 2 or docs is empty.
TopicModel train_lda(std::span<const textkit::TokenizedText> docs, const LdaOptions& options = {});
TopicModel train_lda(const std::vector<std::vector<std::string>>& docs, const LdaOptions& options);

inline constexpr std::size_t kInferenceSweeps = 50;

/// Gibbs sampling over the document with phi frozen; seeded from the
/// document's words and the model seed. Returns the uniform vector when no
/// word is in the vocabulary.
TopicVector infer_topics(const TopicModel& model, std::span<const textkit::Token> tokens);
TopicVector infer_topics(const TopicModel& model, const textkit::TokenizedText& doc);
TopicVector infer_topics(const TopicModel& model, const std::vector<std::string>& terms);

/// 1 - Hellinger distance, in [0, 1]. Throws PreconditionError on length mismatch.
double hellinger_similarity(std::span<const double> p, std::span<const double> q);

void save_model(const TopicModel& model, const std::filesystem::path& path);
TopicModel load_model(const std::filesystem::path& path);

}  // namespace newsgauge::topics
