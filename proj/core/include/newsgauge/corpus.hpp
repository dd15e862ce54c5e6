#pragma once

// Corpus records (postings, replies, news articles, scientific papers),
// JSONL ingestion, keyword/URL filtering and link resolution.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace newsgauge::corpus {

struct Posting {
  std::string id;
  std::string author_id;
  std::string text;
  std::vector<std::string> urls;
  std::int64_t likes = 0;
  std::int64_t retweets = 0;
  std::int64_t followers = 0;
  std::int64_t followees = 0;
  std::optional<std::string> country;  // ISO-3166 alpha-2
  std::int64_t timestamp = 0;          // UTC epoch seconds
  std::vector<std::string> reply_ids;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct Reply {
  std::string id;
  std::string parent_id;
  std::string text;
  std::int64_t likes = 0;
  std::int64_t retweets = 0;

  friend bool operator==(const Reply&, const Reply&) = default;
};

struct Article {
  std::string id;
  std::string url;
  std::string outlet;  // lowercase registrable domain of url
  std::string title;
  std::optional<std::string> byline;
  std::vector<std::string> paragraphs;
  std::vector<std::string> out_links;
  bool parse_ok = true;

  friend bool operator==(const Article&, const Article&) = default;
};

struct Paper {
  std::string id;
  std::string url;
  std::string domain;
  std::string title;
  std::string body;  // paragraphs separated by blank lines
  bool parse_ok = true;

  friend bool operator==(const Paper&, const Paper&) = default;
};

struct Allowlist {
  std::set<std::string> science_domains;
  std::set<std::string> keywords;
};

// --- URLs ---------------------------------------------------------------------

struct Url {
  std::string scheme;  // lowercase; "http" when the input had none
  std::string host;    // lowercase
  std::optional<int> port;
  std::string path;   // may be empty
  std::string query;  // without '?'
};

/// Parses http(s) URLs, with or without scheme. Returns nullopt for anything
/// that is not syntactically a web URL with a dotted host name.
std::optional<Url> parse_url(std::string_view text);

bool is_valid_url(std::string_view text);

/// Lowercase scheme and host, drop the fragment, the default port and a
/// trailing slash. nullopt for invalid URLs.
std::optional<std::string> normalize_url(std::string_view text);

/// Last two host labels, or three when the last two form a bundled public
/// suffix such as "co.uk". Input may be a host or a full URL.
std::string registrable_domain(std::string_view host_or_url);

// --- ingestion ----------------------------------------------------------------

enum class RecordKind { Posting, Reply, Article, Paper };

template <typename Record>
struct IngestResult {
  std::vector<Record> records;
  std::size_t skipped = 0;
  std::vector<std::string> skip_reasons;  // "line N: reason"
};

/// Reads one JSON object per line. Malformed or invalid lines are skipped and
/// tallied. Throws DataError when the file cannot be read or an id repeats.
template <typename Record>
IngestResult<Record> ingest(const std::filesystem::path& path);

extern template IngestResult<Posting> ingest<Posting>(const std::filesystem::path&);
extern template IngestResult<Reply> ingest<Reply>(const std::filesystem::path&);
extern template IngestResult<Article> ingest<Article>(const std::filesystem::path&);
extern template IngestResult<Paper> ingest<Paper>(const std::filesystem::path&);

/// One JSONL line (no trailing newline) for a record; ingest reads it back.
std::string serialize(const Posting& record);
std::string serialize(const Reply& record);
std::string serialize(const Article& record);
std::string serialize(const Paper& record);

/// Domain list and keyword list, one entry per line, lowercased.
/// Throws DataError if either is empty.
Allowlist load_allowlist(const std::filesystem::path& domains, const std::filesystem::path& keywords);

/// All four record families plus id lookups.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Posting> postings, std::vector<Reply> replies, std::vector<Article> articles,
         std::vector<Paper> papers);

  [[nodiscard]] const std::vector<Posting>& postings() const { return postings_; }
  [[nodiscard]] const std::vector<Reply>& replies() const { return replies_; }
  [[nodiscard]] const std::vector<Article>& articles() const { return articles_; }
  [[nodiscard]] const std::vector<Paper>& papers() const { return papers_; }
  /// Replies dropped because their parent posting is not loaded.
  [[nodiscard]] std::size_t orphan_replies() const { return orphan_replies_; }

  [[nodiscard]] const Posting* posting(std::string_view id) const;
  [[nodiscard]] const Article* article(std::string_view id) const;
  [[nodiscard]] const Paper* paper(std::string_view id) const;
  /// Replies whose parent is the given posting, in file order.
  [[nodiscard]] std::vector<const Reply*> replies_to(std::string_view posting_id) const;

 private:
  void index();

  std::vector<Posting> postings_;
  std::vector<Reply> replies_;
  std::vector<Article> articles_;
  std::vector<Paper> papers_;
  std::size_t orphan_replies_ = 0;
  std::unordered_map<std::string, std::size_t> posting_index_;
  std::unordered_map<std::string, std::size_t> article_index_;
  std::unordered_map<std::string, std::size_t> paper_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> replies_by_parent_;
};

// --- filtering and linking ----------------------------------------------------

/// True when `keyword` occurs in `text` case-insensitively with word
/// boundaries on both sides ("tea" does not match "team").
bool contains_keyword(std::string_view text, std::string_view keyword);

/// Keeps postings with at least one URL and at least one keyword match.
std::vector<Posting> filter_postings(std::span<const Posting> postings, const Allowlist& allowlist);

struct LinkTable {
  std::vector<std::pair<std::string, std::string>> posting_article;  // (posting id, article id)
  std::vector<std::pair<std::string, std::string>> article_paper;    // (article id, paper id)
  std::vector<std::pair<std::string, std::string>> article_domain;   // (article id, science domain)
  std::size_t unresolved_posting_urls = 0;
  std::size_t unresolved_out_links = 0;
  /// Papers ignored because their domain is not allowlisted.
  std::size_t papers_outside_allowlist = 0;

  friend bool operator==(const LinkTable&, const LinkTable&) = default;
};

/// Exact matching on normalized URLs; edges are deduplicated and sorted.
LinkTable resolve_links(std::span<const Posting> postings, std::span<const Article> articles,
                        std::span<const Paper> papers, const Allowlist& allowlist);

void write_links(const std::filesystem::path& path, const LinkTable& links);
LinkTable read_links(const std::filesystem::path& path);

}  // namespace newsgauge::corpus
