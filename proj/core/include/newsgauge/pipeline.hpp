#pragma once

// Configuration and the staged batch pipeline:
// ingest -> graph -> indicators -> train -> score -> report.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "newsgauge/error.hpp"

namespace newsgauge::pipeline {

struct PipelineConfig {
  std::filesystem::path postings;
  std::filesystem::path replies;
  std::filesystem::path articles;
  std::filesystem::path papers;

  std::filesystem::path science_domains;
  std::filesystem::path keywords;

  std::filesystem::path embeddings;
  std::filesystem::path outlets;  // TSV domain, tier, alexa_rank
  std::filesystem::path stance_postings;
  std::filesystem::path stance_replies;
  std::filesystem::path stance_labels;
  std::optional<std::filesystem::path> headlines;  // bundled set when absent
  std::filesystem::path expert_labels;
  std::filesystem::path ratings;  // created by the service; may not exist yet

  std::uint64_t seed = 42;
  double merge_threshold = 0.9;
  double damping = 0.85;
  std::size_t lda_topics = 20;
  std::size_t lda_iterations = 500;
  std::size_t lexicon_k = 20;
  std::size_t n_trees = 100;

  std::filesystem::path output_dir;

  int port = 8080;
  std::optional<std::filesystem::path> ui_dir;
};

/// Parses a TOML config. Relative paths resolve against the config file's
/// directory. Throws DataError on a syntax error, a missing key or a
/// referenced input file that does not exist (the ratings store and the UI
/// directory are exempt).
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(std::string_view toml, const std::filesystem::path& base_dir);

enum class Stage { Ingest, Graph, Indicators, Train, Score, Report, All };

std::string_view to_string(Stage s);
std::optional<Stage> parse_stage(std::string_view s);

/// Artifact locations under the output directory.
struct Layout {
  explicit Layout(const std::filesystem::path& root);

  std::filesystem::path root;
  std::filesystem::path links;
  std::filesystem::path ingest_summary;
  std::filesystem::path edges;
  std::filesystem::path nodes;
  std::filesystem::path merge_map;
  std::filesystem::path centrality;
  std::filesystem::path graph_summary;
  std::filesystem::path lda_model;
  std::filesystem::path sts_model;
  std::filesystem::path stance_model;
  std::filesystem::path headline_model;
  std::filesystem::path lexicon_review;
  std::filesystem::path sts_pairs;
  std::filesystem::path indicators_jsonl;
  std::filesystem::path indicators_csv;
  std::filesystem::path quality_model;
  std::filesystem::path discrimination;
  std::filesystem::path scores;
  std::filesystem::path report_csv;
  std::filesystem::path report_json;
  std::filesystem::path manifest;
};

/// Thrown when a stage needs an artifact or input that is not there.
class MissingArtifact : public Error {
 public:
  MissingArtifact(std::string_view stage, const std::filesystem::path& artifact);
};

/// Runs one stage (or all of them in order) and updates the manifest.
/// Every output is a pure function of the config and the input files.
void run(Stage stage, const PipelineConfig& config);

/// Automated quality scores from the score stage (article id -> score).
std::vector<std::pair<std::string, double>> read_scores(const std::filesystem::path& path);

}  // namespace newsgauge::pipeline
