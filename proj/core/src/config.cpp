#include <sstream>

#include <toml.hpp>

#include "newsgauge/error.hpp"
#include "newsgauge/pipeline.hpp"
#include "strings.hpp"

namespace newsgauge::pipeline {
namespace {

namespace fs = std::filesystem;

class Reader {
 public:
  Reader(const toml::table& root, fs::path base) : root_(root), base_(std::move(base)) {}

  [[nodiscard]] std::optional<fs::path> optional_path(std::string_view section, std::string_view key) const {
    const auto node = root_[section][key];
    if (!node) return std::nullopt;
    const auto* s = node.as_string();
    if (s == nullptr || s->get().empty()) fail(section, key, "must be a non-empty string");
    const fs::path p(s->get());
    return p.is_absolute() ? p : (base_ / p).lexically_normal();
  }

  [[nodiscard]] fs::path path(std::string_view section, std::string_view key) const {
    auto p = optional_path(section, key);
    if (!p) fail(section, key, "is required");
    return *p;
  }

  [[nodiscard]] fs::path existing(std::string_view section, std::string_view key) const {
    auto p = path(section, key);
    if (!fs::exists(p)) fail(section, key, "refers to a missing file: " + p.string());
    return p;
  }

  template <typename T>
  [[nodiscard]] T number(std::string_view key, T fallback) const {
    const auto node = root_["params"][key];
    if (!node) return fallback;
    if constexpr (std::is_floating_point_v<T>) {
      if (auto v = node.value<double>()) return static_cast<T>(*v);
    } else {
      if (auto v = node.value<std::int64_t>(); v && *v >= 0) return static_cast<T>(*v);
    }
    fail("params", key, "has the wrong type");
  }

  [[noreturn]] static void fail(std::string_view section, std::string_view key, const std::string& what) {
    throw DataError("config [" + std::string(section) + "] " + std::string(key) + " " + what);
  }

  [[nodiscard]] const toml::table& root() const { return root_; }

 private:
  const toml::table& root_;
  fs::path base_;
};

}  // namespace

PipelineConfig parse_config(std::string_view text, const fs::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config: " << e.description() << " at line " << e.source().begin.line;
    throw DataError(msg.str());
  }
  const Reader r(root, base_dir);
  PipelineConfig c;
  c.postings = r.existing("corpus", "postings");
  c.replies = r.existing("corpus", "replies");
  c.articles = r.existing("corpus", "articles");
  c.papers = r.existing("corpus", "papers");
  c.science_domains = r.existing("allowlist", "domains");
  c.keywords = r.existing("allowlist", "keywords");
  c.embeddings = r.existing("inputs", "embeddings");
  c.outlets = r.existing("inputs", "outlets");
  c.stance_postings = r.existing("inputs", "stance_postings");
  c.stance_replies = r.existing("inputs", "stance_replies");
  c.stance_labels = r.existing("inputs", "stance_labels");
  if (r.optional_path("inputs", "headlines")) c.headlines = r.existing("inputs", "headlines");
  c.expert_labels = r.existing("inputs", "expert_labels");
  c.ratings = r.path("inputs", "ratings");

  c.seed = r.number<std::uint64_t>("seed", c.seed);
  c.merge_threshold = r.number<double>("merge_threshold", c.merge_threshold);
  c.damping = r.number<double>("damping", c.damping);
  c.lda_topics = r.number<std::size_t>("lda_topics", c.lda_topics);
  c.lda_iterations = r.number<std::size_t>("lda_iterations", c.lda_iterations);
  c.lexicon_k = r.number<std::size_t>("lexicon_k", c.lexicon_k);
  c.n_trees = r.number<std::size_t>("n_trees", c.n_trees);
  if (!(c.merge_threshold > 0.0 && c.merge_threshold <= 1.0)) Reader::fail("params", "merge_threshold", "must be in (0, 1]");
  if (!(c.damping > 0.0 && c.damping < 1.0)) Reader::fail("params", "damping", "must be in (0, 1)");
  if (c.lda_topics < 2) Reader::fail("params", "lda_topics", "must be at least 2");
  if (c.n_trees == 0) Reader::fail("params", "n_trees", "must be positive");

  c.output_dir = r.path("output", "dir");
  if (const auto port = root["service"]["port"]) {
    const auto v = port.value<std::int64_t>();
    if (!v || *v < 0 || *v > 65535) Reader::fail("service", "port", "must be in 0..65535");
    c.port = static_cast<int>(*v);
  }
  c.ui_dir = r.optional_path("service", "ui_dir");
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  return parse_config(detail::read_file(path), fs::absolute(path).parent_path());
}

}  // namespace newsgauge::pipeline
