#pragma once

// Per-article quality indicators, weak supervision from outlet tiers,
// feature discrimination, star rendering and the rating report.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newsgauge/adherence.hpp"
#include "newsgauge/clickbait.hpp"
#include "newsgauge/corpus.hpp"
#include "newsgauge/diffusion.hpp"
#include "newsgauge/learn.hpp"
#include "newsgauge/quotes.hpp"
#include "newsgauge/social.hpp"
#include "newsgauge/topics.hpp"

namespace newsgauge::indicators {

struct IndicatorVector {
  std::string article_id;
  std::string outlet;

  double title_clickbait = 0.0;
  double title_subjectivity = 0.0;
  double title_polarity = 0.0;
  double readability = 0.0;
  std::int64_t word_count = 0;
  bool bylined = false;

  std::int64_t n_total_quotes = 0;
  std::int64_t n_person_quotes = 0;
  std::int64_t n_scientific_mentions = 0;
  std::int64_t n_weasel_quotes = 0;

  std::optional<double> source_adherence;

  double pagerank = 0.0;
  double betweenness = 0.0;
  std::int64_t in_degree = 0;
  std::int64_t out_degree = 0;
  std::optional<std::int64_t> alexa_rank;

  social::ReachIndicators reach;

  double tweet_stance = 0.0;
  double reply_stance = 0.0;
  double tweet_subjectivity = 0.0;
  double tweet_polarity = 0.0;
  double reply_subjectivity = 0.0;
  double reply_polarity = 0.0;

  friend bool operator==(const IndicatorVector&, const IndicatorVector&) = default;
};

inline constexpr std::size_t kIndicatorCount = 29;

/// Indicator names in encoding order.
const std::array<std::string, kIndicatorCount>& indicator_names();

/// Numeric encoding; absent values are NaN, booleans 0/1.
std::vector<double> encode(const IndicatorVector& v);

std::string to_json(const IndicatorVector& v);
IndicatorVector from_json(std::string_view line);
void write_jsonl(const std::filesystem::path& path, std::span<const IndicatorVector> vectors);
std::vector<IndicatorVector> read_jsonl(const std::filesystem::path& path);
/// Header: article_id, outlet, then the indicator names; absent cells empty.
void write_csv(const std::filesystem::path& path, std::span<const IndicatorVector> vectors);

// --- outlets ------------------------------------------------------------------

struct OutletInfo {
  int tier = 0;  // 1 very low .. 5 very high
  std::optional<std::int64_t> alexa_rank;
};

/// TSV rows: domain, tier, alexa_rank (may be empty).
std::map<std::string, OutletInfo> load_outlets(const std::filesystem::path& path);

// --- assembly -----------------------------------------------------------------

/// Everything the indicators are computed from. All members must outlive
/// the builder.
struct Context {
  const corpus::Corpus& corpus;
  const diffusion::DiffusionGraph& graph;
  const diffusion::CentralityScores& centrality;
  const textkit::HeadlineModel& headlines;
  const quotes::QuoteExtractor& extractor;
  const quotes::NameIndex& names;
  const corpus::Allowlist& allowlist;
  const topics::TopicModel& topics;
  const textkit::EmbeddingTable& embeddings;
  const adherence::StsModel& sts;
  const social::StanceModel& stance;
  const std::map<std::string, OutletInfo>& outlets;
};

class IndicatorBuilder {
 public:
  explicit IndicatorBuilder(const Context& context);

  /// Throws NotFoundError when the article is not in the graph.
  [[nodiscard]] IndicatorVector compute(const std::string& article_id) const;

  /// Quotes of an article as extracted and attributed for the indicators.
  [[nodiscard]] std::vector<quotes::Quote> quotes_of(const corpus::Article& article) const;

 private:
  const adherence::DocProfile& paper_profile(const std::string& paper_id) const;

  const Context& ctx_;
  mutable std::map<std::string, adherence::DocProfile> paper_profiles_;
};

// --- weak supervision ---------------------------------------------------------

struct WeakLabels {
  std::map<std::string, int> labels;  // article id -> tier
  std::size_t excluded = 0;           // outlet without a tier
};

/// Throws PreconditionError when no article's outlet has a tier.
WeakLabels weak_labels(std::span<const IndicatorVector> vectors, const std::map<std::string, OutletInfo>& outlets);

class QualityModel {
 public:
  QualityModel() = default;
  QualityModel(learn::MedianImputer imputer, learn::Forest forest)
      : imputer_(std::move(imputer)), forest_(std::move(forest)) {}

  /// Needs at least two distinct tiers among the labelled vectors.
  static QualityModel train(std::span<const IndicatorVector> vectors, const std::map<std::string, int>& labels,
                            const learn::ForestOptions& options = {});

  /// Expected tier under the forest's vote shares, rounded to 0.1.
  [[nodiscard]] double score(const IndicatorVector& v) const;
  [[nodiscard]] const learn::MedianImputer& imputer() const { return imputer_; }
  [[nodiscard]] const learn::Forest& forest() const { return forest_; }

  friend bool operator==(const QualityModel& a, const QualityModel& b) {
    return a.imputer_.medians() == b.imputer_.medians() &&
           a.imputer_.flagged_columns() == b.imputer_.flagged_columns() && a.forest_ == b.forest_;
  }

 private:
  learn::MedianImputer imputer_;
  learn::Forest forest_;
};

void save_model(const QualityModel& model, const std::filesystem::path& path);
QualityModel load_quality_model(const std::filesystem::path& path);

struct Discrimination {
  std::string indicator;
  double f_statistic = 0.0;
  double p_value = 1.0;
  std::string stars;
};

/// One-way ANOVA of every numeric indicator across groups (absent values
/// skipped), sorted by p ascending, then F descending, then name.
std::vector<Discrimination> discriminate(std::span<const IndicatorVector> vectors,
                                         const std::map<std::string, int>& groups);

/// 1 + number of nearest-rank 20/40/60/80th percentile cut points strictly
/// below the value. Throws PreconditionError for an empty reference.
int quintile_stars(double value, std::span<const double> reference);

// --- ratings and the report -----------------------------------------------------

enum class Condition { WithIndicators, WithoutIndicators };

std::string_view to_string(Condition c);
std::optional<Condition> parse_condition(std::string_view s);

struct RatingRecord {
  std::string article_id;
  std::string rater_id;
  Condition condition = Condition::WithoutIndicators;
  int score = 0;
  std::int64_t timestamp = 0;

  friend bool operator==(const RatingRecord&, const RatingRecord&) = default;
};

std::string to_json(const RatingRecord& r);
/// Throws DataError on a malformed record or a score outside 1..5.
RatingRecord rating_from_json(std::string_view line);
std::vector<RatingRecord> load_ratings(const std::filesystem::path& path);
void append_rating(const std::filesystem::path& path, const RatingRecord& r);

struct ExpertLabel {
  std::string article_id;
  std::string expert_id;
  int score = 0;
};

/// TSV rows: article_id, expert_id, score.
std::vector<ExpertLabel> load_expert_labels(const std::filesystem::path& path);

struct RmseRow {
  std::string bucket;  // strong, weak, disagreement, all
  std::size_t n_articles = 0;
  std::optional<double> rmse_without;
  std::optional<double> rmse_with;
  std::optional<double> rmse_automated;
};

struct RmseReport {
  std::vector<RmseRow> rows;
  std::size_t n_ratings = 0;
  std::vector<std::string> dropped_raters;
};

/// Buckets articles by the gap between their two expert labels (0 strong,
/// 1 weak, 2+ disagreement) and compares mean crowd ratings per condition,
/// and optional automated scores, with the expert mean. Raters whose mean
/// absolute deviation from the crowd exceeds twice the median rater's are
/// dropped (only with three or more raters in a condition). Throws
/// DataError when a rated article lacks exactly two expert labels.
RmseReport rmse_report(std::span<const RatingRecord> ratings, std::span<const ExpertLabel> experts,
                       const std::map<std::string, double>& automated = {});

void write_report_csv(const std::filesystem::path& path, const RmseReport& report);
std::string report_json(const RmseReport& report);

}  // namespace newsgauge::indicators
