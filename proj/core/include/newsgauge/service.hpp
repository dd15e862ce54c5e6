#pragma once

// JSON API behind the review interface: article assignment, the indicator
// legend, rating collection and the RMSE report.

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "newsgauge/indicators.hpp"
#include "newsgauge/pipeline.hpp"

namespace newsgauge::service {

struct ArticleView {
  std::string title;
  std::vector<std::string> paragraphs;
};

/// Everything the service reads. Only the ratings store is written.
struct ServiceData {
  std::map<std::string, ArticleView> articles;
  std::vector<indicators::IndicatorVector> vectors;
  std::vector<indicators::ExpertLabel> experts;
  std::map<std::string, double> automated;
  std::filesystem::path ratings_path;
  std::uint64_t seed = 0;
};

/// Loads indicator vectors, article text, expert labels and automated scores
/// from a finished pipeline run. Only articles with expert labels are served.
ServiceData load_data(const pipeline::PipelineConfig& config);

struct Response {
  int status = 200;
  std::string body;  // JSON
};

/// Face for a title polarity: "++", "+", "0", "-", "--".
std::string_view sentiment_face(double polarity);

class ReviewService {
 public:
  /// Reads existing ratings from the store. Throws DataError on a corrupt store.
  explicit ReviewService(ServiceData data);

  [[nodiscard]] indicators::Condition condition_for(std::string_view rater_id) const;

  /// Routes one request without any socket involved.
  Response handle(std::string_view method, std::string_view path, const std::map<std::string, std::string>& query,
                  std::string_view body);

  /// Blocks serving HTTP on the port; static files from ui_dir at "/".
  void serve(const std::string& host, int port, const std::optional<std::filesystem::path>& ui_dir);

 private:
  Response list_articles(const std::map<std::string, std::string>& query) const;
  Response get_article(const std::string& id, const std::map<std::string, std::string>& query) const;
  Response post_rating(std::string_view body);
  Response report();

  ServiceData data_;
  std::map<std::string, std::size_t> vector_index_;
  std::vector<std::string> ids_;  // served articles, sorted
  std::map<std::string, std::vector<double>> reference_;  // per legend metric

  std::mutex ratings_mutex_;
  std::vector<indicators::RatingRecord> ratings_;
  std::set<std::pair<std::string, std::string>> rated_;  // (rater, article)
};

}  // namespace newsgauge::service
