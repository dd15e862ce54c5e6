#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "newsgauge/adherence.hpp"
#include "newsgauge/error.hpp"
#include "newsgauge/random.hpp"
#include "strings.hpp"

namespace newsgauge::adherence {
namespace {

using textkit::Range;

Passage make_passage(const textkit::TokenizedText& text, const std::vector<textkit::EntityMention>& mentions,
                     Range range, const topics::TopicModel& model, const textkit::EmbeddingTable& embeddings) {
  Passage p;
  auto entities = textkit::collect_entities(mentions, range);
  p.persons_orgs = std::move(entities.persons);
  p.persons_orgs.insert(entities.organizations.begin(), entities.organizations.end());
  p.dates = std::move(entities.dates);
  p.numbers = std::move(entities.numbers);
  p.percentages = std::move(entities.percentages);
  const auto tokens = text.tokens_in(range);
  p.embedding = textkit::doc_vector(tokens, embeddings);
  p.topics = topics::infer_topics(model, tokens);
  p.words = static_cast<std::size_t>(std::count_if(tokens.begin(), tokens.end(), textkit::is_word));
  return p;
}

// The seven metrics of one passage pair, in feature order.
std::array<double, kFeaturesPerLevel> metrics(const Passage& a, const Passage& b) {
  return {jaccard(a.persons_orgs, b.persons_orgs),
          jaccard(a.dates, b.dates),
          jaccard(a.numbers, b.numbers),
          jaccard(a.percentages, b.percentages),
          textkit::cosine(a.embedding, b.embedding),
          topics::hellinger_similarity(a.topics, b.topics),
          relative_length_difference(a.words, b.words)};
}

std::vector<const Passage*> subsample(const std::vector<Passage>& passages, std::uint64_t seed) {
  std::vector<const Passage*> out;
  for (const auto& p : passages) out.push_back(&p);
  if (out.size() <= kMaxPassages) return out;
  std::vector<std::size_t> idx(passages.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  rng.shuffle(idx.begin(), idx.end());
  idx.resize(kMaxPassages);
  std::sort(idx.begin(), idx.end());
  out.clear();
  for (auto i : idx) out.push_back(&passages[i]);
  return out;
}

std::array<double, kFeaturesPerLevel> mean_metrics(const std::vector<const Passage*>& a,
                                                   const std::vector<const Passage*>& b) {
  if (a.empty() || b.empty()) return {0, 0, 0, 0, 0, 0, 1};
  std::array<double, kFeaturesPerLevel> sum{};
  for (const auto* pa : a) {
    for (const auto* pb : b) {
      const auto m = metrics(*pa, *pb);
      for (std::size_t i = 0; i < kFeaturesPerLevel; ++i) sum[i] += m[i];
    }
  }
  const double n = static_cast<double>(a.size() * b.size());
  for (auto& v : sum) v /= n;
  return sum;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::array<std::string, kFeatureCount>& feature_names() {
  static const auto names = [] {
    const std::array<std::string_view, 3> levels = {"doc", "par", "sent"};
    const std::array<std::string_view, kFeaturesPerLevel> metrics = {
        "jaccard_persons_orgs", "jaccard_dates",   "jaccard_numbers",           "jaccard_percentages",
        "embedding_cosine",     "hellinger_topic", "relative_length_difference"};
    std::array<std::string, kFeatureCount> out;
    for (std::size_t l = 0; l < levels.size(); ++l) {
      for (std::size_t m = 0; m < metrics.size(); ++m) {
        out[l * kFeaturesPerLevel + m] = std::string(levels[l]) + "_" + std::string(metrics[m]);
      }
    }
    return out;
  }();
  return names;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.contains(x) ? 1 : 0;
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double relative_length_difference(std::size_t a, std::size_t b) {
  const auto hi = std::max(a, b);
  if (hi == 0) return 0.0;
  const auto lo = std::min(a, b);
  return static_cast<double>(hi - lo) / static_cast<double>(hi);
}

DocProfile profile(std::string id, const textkit::TokenizedText& text, const topics::TopicModel& model,
                   const textkit::EmbeddingTable& embeddings) {
  const auto mentions = textkit::find_entities(text);
  DocProfile d;
  d.id = std::move(id);
  d.document = make_passage(text, mentions, Range{0, text.tokens.size()}, model, embeddings);
  if (d.document.words == 0) throw PreconditionError("sts profile: document '" + d.id + "' has no words");
  for (std::size_t p = 0; p < text.paragraphs.size(); ++p) {
    d.paragraphs.push_back(make_passage(text, mentions, text.paragraph_tokens(p), model, embeddings));
  }
  for (const auto& s : text.sentences) d.sentences.push_back(make_passage(text, mentions, s, model, embeddings));
  return d;
}

DocProfile profile(const corpus::Article& article, const topics::TopicModel& model,
                   const textkit::EmbeddingTable& embeddings) {
  return profile(article.id, textkit::analyze_paragraphs(article.paragraphs), model, embeddings);
}

DocProfile profile(const corpus::Paper& paper, const topics::TopicModel& model,
                   const textkit::EmbeddingTable& embeddings) {
  return profile(paper.id, textkit::analyze(paper.body), model, embeddings);
}

STSFeatures sts_features(const DocProfile& a, const DocProfile& b) {
  // Seeds depend on the unordered id pair and on each side's own id, so
  // swapping the arguments selects the same passages.
  const auto& lo = std::min(a.id, b.id);
  const auto& hi = std::max(a.id, b.id);
  const auto pair_seed = stable_hash(lo + '\x1f' + hi);
  const auto seed_a = mix_seed(pair_seed, stable_hash(a.id));
  const auto seed_b = mix_seed(pair_seed, stable_hash(b.id));

  STSFeatures f{};
  const auto doc = metrics(a.document, b.document);
  const auto par = mean_metrics(subsample(a.paragraphs, seed_a), subsample(b.paragraphs, seed_b));
  const auto sent = mean_metrics(subsample(a.sentences, ~seed_a), subsample(b.sentences, ~seed_b));
  std::copy(doc.begin(), doc.end(), f.begin());
  std::copy(par.begin(), par.end(), f.begin() + kFeaturesPerLevel);
  std::copy(sent.begin(), sent.end(), f.begin() + 2 * kFeaturesPerLevel);
  return f;
}

std::vector<PairSpec> build_pairs(const diffusion::DiffusionGraph& graph, std::uint64_t seed) {
  using diffusion::NodeKind;
  const auto articles = graph.ids(NodeKind::Article);
  const auto papers = graph.ids(NodeKind::Paper);
  std::vector<PairSpec> pairs;
  std::set<std::pair<std::string, std::string>> linked;
  for (const auto& a : articles) {
    std::vector<std::string> cited;
    for (const auto& t : graph.successors(a)) {
      if (graph.kind(t) == NodeKind::Paper) cited.push_back(t);
    }
    for (const auto& p : cited) linked.emplace(a, p);
    if (cited.size() == 1) pairs.push_back({a, cited.front(), PairLabel::Positive});
  }
  const std::size_t positives = pairs.size();
  if (positives == 0) throw PreconditionError("build_pairs: no article links exactly one paper");
  if (articles.size() * papers.size() - linked.size() < positives) {
    throw PreconditionError("build_pairs: not enough unlinked article/paper pairs for negatives");
  }
  Rng rng(seed);
  std::set<std::pair<std::string, std::string>> chosen;
  while (chosen.size() < positives) {
    const auto& a = articles[rng.index(articles.size())];
    const auto& p = papers[rng.index(papers.size())];
    if (linked.contains({a, p}) || !chosen.emplace(a, p).second) continue;
    pairs.push_back({a, p, PairLabel::Negative});
  }
  return pairs;
}

void write_pairs_csv(const std::filesystem::path& path, std::span<const TrainingPair> pairs) {
  std::string out;
  for (const auto& name : feature_names()) out += name + ',';
  out += "label\n";
  for (const auto& tp : pairs) {
    for (double v : tp.features) out += format_double(v) + ',';
    out += tp.pair.label == PairLabel::Positive ? "1\n" : "0\n";
  }
  detail::write_file(path, out);
}

StsModel StsModel::train(std::span<const TrainingPair> pairs, const learn::ForestOptions& options) {
  learn::Matrix X;
  std::vector<int> y;
  std::size_t pos = 0;
  for (const auto& p : pairs) {
    X.emplace_back(p.features.begin(), p.features.end());
    y.push_back(static_cast<int>(p.pair.label));
    pos += p.pair.label == PairLabel::Positive ? 1 : 0;
  }
  if (pos < 2 || pairs.size() - pos < 2) throw PreconditionError("train_sts: need at least two pairs of each label");
  return StsModel(learn::Forest::train(X, y, options));
}

double StsModel::score(const STSFeatures& features) const {
  if (!forest_.trained()) throw PreconditionError("sts_score: model is not trained");
  const auto proba = forest_.predict_proba(features);
  const auto& classes = forest_.classes();
  const auto it = std::find(classes.begin(), classes.end(), static_cast<int>(PairLabel::Positive));
  return it == classes.end() ? 0.0 : proba[static_cast<std::size_t>(it - classes.begin())];
}

}  // namespace newsgauge::adherence
