#include <algorithm>
#include <cmath>
#include <numeric>

#include "newsgauge/error.hpp"
#include "newsgauge/random.hpp"
#include "newsgauge/topics.hpp"
#include "strings.hpp"

namespace newsgauge::topics {
namespace {

std::size_t sample_discrete(std::span<const double> weights, double total, Rng& rng) {
  double u = rng.uniform() * total;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    u -= weights[k];
    if (u < 0.0) return k;
  }
  return weights.size() - 1;
}

}  // namespace

LdaOptions LdaOptions::with_topics(std::size_t k) {
  LdaOptions o;
  o.topics = k;
  o.alpha = 50.0 / static_cast<double>(k);
  return o;
}

TopicModel::TopicModel(std::vector<std::string> vocabulary, std::vector<std::vector<double>> phi, double alpha,
                       double beta, std::uint64_t seed)
    : vocabulary_(std::move(vocabulary)), phi_(std::move(phi)), alpha_(alpha), beta_(beta), seed_(seed) {
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) index_.emplace(vocabulary_[i], i);
  for (const auto& row : phi_) {
    if (row.size() != vocabulary_.size()) throw DataError("topic model: phi row length differs from vocabulary size");
  }
}

std::ptrdiff_t TopicModel::word_id(const std::string& word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::vector<std::string> topic_terms(std::span<const textkit::Token> tokens) {
  std::vector<std::string> terms;
  for (const auto& tok : tokens) {
    if (tok.lower.size() < 2) continue;
    if (!std::all_of(tok.lower.begin(), tok.lower.end(), [](char c) { return detail::is_ascii_alpha(c) || c == '-'; })) {
      continue;
    }
    if (textkit::stopwords().contains(tok.lower)) continue;
    terms.push_back(tok.lower);
  }
  return terms;
}

TopicModel train_lda(std::span<const textkit::TokenizedText> docs, const LdaOptions& options) {
  std::vector<std::vector<std::string>> terms;
  terms.reserve(docs.size());
  for (const auto& d : docs) terms.push_back(topic_terms(d.tokens));
  return train_lda(terms, options);
}

TopicModel train_lda(const std::vector<std::vector<std::string>>& input, const LdaOptions& options) {
  if (options.topics < 2) throw PreconditionError("train_lda: need at least two topics");
  if (input.empty()) throw PreconditionError("train_lda: no documents");
  if (!(options.alpha > 0) || !(options.beta > 0)) throw PreconditionError("train_lda: alpha and beta must be positive");

  std::vector<std::vector<std::string>> docs;
  for (const auto& d : input) {
    if (!d.empty()) docs.push_back(d);
  }
  std::sort(docs.begin(), docs.end());

  std::vector<std::string> vocab;
  for (const auto& d : docs) vocab.insert(vocab.end(), d.begin(), d.end());
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  if (vocab.empty()) throw DataError("train_lda: empty vocabulary");

  const std::size_t K = options.topics;
  const std::size_t V = vocab.size();
  std::vector<std::vector<std::size_t>> words(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& w : docs[d]) {
      words[d].push_back(static_cast<std::size_t>(std::lower_bound(vocab.begin(), vocab.end(), w) - vocab.begin()));
    }
  }

  Rng rng(options.seed);
  std::vector<std::vector<std::size_t>> z(docs.size());
  std::vector<std::vector<std::size_t>> n_dk(docs.size(), std::vector<std::size_t>(K, 0));
  std::vector<std::vector<std::size_t>> n_kw(K, std::vector<std::size_t>(V, 0));
  std::vector<std::size_t> n_k(K, 0);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (auto w : words[d]) {
      const auto k = rng.index(K);
      z[d].push_back(k);
      ++n_dk[d][k];
      ++n_kw[k][w];
      ++n_k[k];
    }
  }

  const double vbeta = static_cast<double>(V) * options.beta;
  std::vector<double> p(K);
  for (std::size_t it = 0; it < options.iterations; ++it) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const auto w = words[d][i];
        auto k = z[d][i];
        --n_dk[d][k];
        --n_kw[k][w];
        --n_k[k];
        double total = 0.0;
        for (std::size_t t = 0; t < K; ++t) {
          p[t] = (static_cast<double>(n_dk[d][t]) + options.alpha) * (static_cast<double>(n_kw[t][w]) + options.beta) /
                 (static_cast<double>(n_k[t]) + vbeta);
          total += p[t];
        }
        k = sample_discrete(p, total, rng);
        z[d][i] = k;
        ++n_dk[d][k];
        ++n_kw[k][w];
        ++n_k[k];
      }
    }
  }

  std::vector<std::vector<double>> phi(K, std::vector<double>(V));
  for (std::size_t k = 0; k < K; ++k) {
    const double denom = static_cast<double>(n_k[k]) + vbeta;
    for (std::size_t w = 0; w < V; ++w) phi[k][w] = (static_cast<double>(n_kw[k][w]) + options.beta) / denom;
  }
  return TopicModel(std::move(vocab), std::move(phi), options.alpha, options.beta, options.seed);
}

TopicVector infer_topics(const TopicModel& model, const std::vector<std::string>& terms) {
  const std::size_t K = model.topic_count();
  if (K == 0) throw PreconditionError("infer_topics: model is not trained");
  std::vector<std::size_t> ids;
  std::string joined;
  for (const auto& t : terms) {
    const auto id = model.word_id(t);
    if (id < 0) continue;
    ids.push_back(static_cast<std::size_t>(id));
    joined += t;
    joined += ' ';
  }
  if (ids.empty()) return TopicVector(K, 1.0 / static_cast<double>(K));

  Rng rng(stable_hash(joined) ^ model.seed());
  const auto& phi = model.phi();
  std::vector<std::size_t> z(ids.size());
  std::vector<std::size_t> n_k(K, 0);
  for (auto& k : z) {
    k = rng.index(K);
    ++n_k[k];
  }
  std::vector<double> p(K);
  for (std::size_t sweep = 0; sweep < kInferenceSweeps; ++sweep) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      --n_k[z[i]];
      double total = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        p[k] = phi[k][ids[i]] * (static_cast<double>(n_k[k]) + model.alpha());
        total += p[k];
      }
      z[i] = sample_discrete(p, total, rng);
      ++n_k[z[i]];
    }
  }
  TopicVector theta(K);
  const double denom = static_cast<double>(ids.size()) + static_cast<double>(K) * model.alpha();
  for (std::size_t k = 0; k < K; ++k) theta[k] = (static_cast<double>(n_k[k]) + model.alpha()) / denom;
  return theta;
}

TopicVector infer_topics(const TopicModel& model, std::span<const textkit::Token> tokens) {
  return infer_topics(model, topic_terms(tokens));
}

TopicVector infer_topics(const TopicModel& model, const textkit::TokenizedText& doc) {
  return infer_topics(model, doc.tokens);
}

double hellinger_similarity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw PreconditionError("hellinger_similarity: length mismatch");
  // Difference form of the squared distance: exactly zero for identical inputs.
  double sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::sqrt(std::max(0.0, p[i])) - std::sqrt(std::max(0.0, q[i]));
    sq += d * d;
  }
  const double distance = std::sqrt(std::clamp(0.5 * sq, 0.0, 1.0));
  return std::clamp(1.0 - distance, 0.0, 1.0);
}

}  // namespace newsgauge::topics
