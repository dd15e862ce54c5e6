#include <algorithm>
#include <map>

#include "newsgauge/clickbait.hpp"
#include "newsgauge/error.hpp"
#include "newsgauge/textkit.hpp"
#include "strings.hpp"

namespace newsgauge::textkit {
namespace {

std::vector<std::string> headline_words(std::string_view title) {
  std::vector<std::string> words;
  for (const auto& t : analyze(title).tokens) {
    if (is_word(t) || is_number(t)) words.push_back(t.lower);
  }
  return words;
}

}  // namespace

std::vector<LabeledHeadline> parse_headlines(std::string_view tsv) {
  std::vector<LabeledHeadline> out;
  for (const auto& line : detail::content_lines(tsv)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError("headline file: expected 'label<TAB>title': " + line);
    const auto label = detail::to_lower(detail::trim(std::string_view(line).substr(0, tab)));
    const std::string title(detail::trim(std::string_view(line).substr(tab + 1)));
    if (label == "label") continue;
    if (label == "clickbait" || label == "1") {
      out.push_back({true, title});
    } else if (label == "news" || label == "0") {
      out.push_back({false, title});
    } else {
      throw DataError("headline file: unknown label '" + label + "'");
    }
  }
  return out;
}

std::vector<LabeledHeadline> load_headlines(const std::filesystem::path& path) {
  return parse_headlines(detail::read_file(path));
}

const std::vector<LabeledHeadline>& bundled_headlines() {
  static const auto headlines = parse_headlines(detail::bundled("headlines.tsv"));
  return headlines;
}

HeadlineModel::HeadlineModel(std::vector<std::string> vocabulary, learn::Forest forest, double prior)
    : vocabulary_(std::move(vocabulary)), forest_(std::move(forest)), prior_(prior) {}

HeadlineModel HeadlineModel::train(std::span<const LabeledHeadline> headlines, const learn::ForestOptions& options) {
  std::map<std::string, std::size_t> doc_freq;
  std::size_t positives = 0;
  for (const auto& h : headlines) {
    auto words = headline_words(h.title);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (const auto& w : words) ++doc_freq[w];
    positives += h.clickbait ? 1 : 0;
  }
  if (positives == 0 || positives == headlines.size()) {
    throw PreconditionError("train headline model: need clickbait and non-clickbait examples");
  }
  std::vector<std::string> vocab;
  for (const auto& [w, df] : doc_freq) {
    if (df >= 2) vocab.push_back(w);
  }
  HeadlineModel model(std::move(vocab), {}, static_cast<double>(positives) / static_cast<double>(headlines.size()));
  learn::Matrix X;
  std::vector<int> y;
  for (const auto& h : headlines) {
    X.push_back(model.features(h.title));
    y.push_back(h.clickbait ? 1 : 0);
  }
  model.forest_ = learn::Forest::train(X, y, options);
  return model;
}

std::vector<double> HeadlineModel::features(std::string_view title) const {
  std::vector<double> x(vocabulary_.size(), 0.0);
  for (const auto& w : headline_words(title)) {
    const auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), w);
    if (it != vocabulary_.end() && *it == w) x[static_cast<std::size_t>(it - vocabulary_.begin())] += 1.0;
  }
  return x;
}

double HeadlineModel::score(std::string_view title) const {
  if (!trained()) throw PreconditionError("clickbait_score: headline model is not trained");
  const auto x = features(title);
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) return prior_;
  const auto p = forest_.predict_proba(x);
  const auto& classes = forest_.classes();
  const auto it = std::find(classes.begin(), classes.end(), 1);
  return it == classes.end() ? 0.0 : p[static_cast<std::size_t>(it - classes.begin())];
}

double clickbait_score(std::string_view title, const HeadlineModel& model) { return model.score(title); }

}  // namespace newsgauge::textkit
