#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "json.hpp"
#include "newsgauge/corpus.hpp"
#include "newsgauge/error.hpp"
#include "strings.hpp"

namespace newsgauge::corpus {
namespace {

using nlohmann::json;

// Raised for a single invalid record; turned into a skip by ingest().
struct InvalidRecord {
  std::string reason;
};

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) throw InvalidRecord{std::string("missing field '") + key + "'"};
  return *it;
}

std::string required_string(const json& obj, const char* key, bool non_empty = false) {
  const auto& v = require(obj, key);
  if (!v.is_string()) throw InvalidRecord{std::string("field '") + key + "' is not a string"};
  auto s = v.get<std::string>();
  if (non_empty && s.empty()) throw InvalidRecord{std::string("field '") + key + "' is empty"};
  return s;
}

std::int64_t count_field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return 0;
  if (!it->is_number_integer()) throw InvalidRecord{std::string("field '") + key + "' is not an integer"};
  const auto v = it->get<std::int64_t>();
  if (v < 0) throw InvalidRecord{std::string("field '") + key + "' is negative"};
  return v;
}

std::vector<std::string> string_list(const json& obj, const char* key, bool required) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw InvalidRecord{std::string("missing field '") + key + "'"};
    return {};
  }
  if (!it->is_array()) throw InvalidRecord{std::string("field '") + key + "' is not a list"};
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) throw InvalidRecord{std::string("field '") + key + "' has a non-string entry"};
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::optional<std::string> optional_string(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw InvalidRecord{std::string("field '") + key + "' is not a string"};
  return it->get<std::string>();
}

bool optional_bool(const json& obj, const char* key, bool fallback) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) throw InvalidRecord{std::string("field '") + key + "' is not a boolean"};
  return it->get<bool>();
}

template <typename Record>
Record parse_record(const json& obj);

template <>
Posting parse_record<Posting>(const json& obj) {
  Posting p;
  p.id = required_string(obj, "id", true);
  p.author_id = required_string(obj, "author_id");
  p.text = required_string(obj, "text");
  p.urls = string_list(obj, "urls", true);
  for (const auto& u : p.urls) {
    if (!is_valid_url(u)) throw InvalidRecord{"invalid url '" + u + "'"};
  }
  p.likes = count_field(obj, "likes");
  p.retweets = count_field(obj, "retweets");
  p.followers = count_field(obj, "followers");
  p.followees = count_field(obj, "followees");
  p.country = optional_string(obj, "country");
  if (p.country && (p.country->size() != 2 || !std::all_of(p.country->begin(), p.country->end(), detail::is_ascii_upper))) {
    throw InvalidRecord{"country is not an ISO-3166 alpha-2 code"};
  }
  const auto& ts = require(obj, "timestamp");
  if (!ts.is_number_integer() || ts.get<std::int64_t>() <= 0) throw InvalidRecord{"timestamp must be a positive integer"};
  p.timestamp = ts.get<std::int64_t>();
  p.reply_ids = string_list(obj, "reply_ids", false);
  return p;
}

template <>
Reply parse_record<Reply>(const json& obj) {
  Reply r;
  r.id = required_string(obj, "id", true);
  r.parent_id = required_string(obj, "parent_id", true);
  r.text = required_string(obj, "text");
  r.likes = count_field(obj, "likes");
  r.retweets = count_field(obj, "retweets");
  return r;
}

template <>
Article parse_record<Article>(const json& obj) {
  Article a;
  a.id = required_string(obj, "id", true);
  a.url = required_string(obj, "url");
  if (!is_valid_url(a.url)) throw InvalidRecord{"invalid url '" + a.url + "'"};
  a.outlet = required_string(obj, "outlet");
  if (a.outlet != registrable_domain(a.url)) {
    throw InvalidRecord{"outlet '" + a.outlet + "' is not the registrable domain of the url"};
  }
  a.title = required_string(obj, "title");
  a.byline = optional_string(obj, "byline");
  a.paragraphs = string_list(obj, "paragraphs", true);
  a.out_links = string_list(obj, "out_links", false);
  a.parse_ok = optional_bool(obj, "parse_ok", true);
  if (a.parse_ok && a.paragraphs.empty()) throw InvalidRecord{"parsed article without paragraphs"};
  return a;
}

template <>
Paper parse_record<Paper>(const json& obj) {
  Paper p;
  p.id = required_string(obj, "id", true);
  p.url = required_string(obj, "url");
  if (!is_valid_url(p.url)) throw InvalidRecord{"invalid url '" + p.url + "'"};
  p.domain = required_string(obj, "domain");
  if (p.domain != registrable_domain(p.url)) throw InvalidRecord{"domain does not match the url"};
  p.title = required_string(obj, "title");
  p.body = required_string(obj, "body");
  p.parse_ok = optional_bool(obj, "parse_ok", true);
  return p;
}

json to_json(const Posting& p) {
  return json{{"id", p.id},
              {"author_id", p.author_id},
              {"text", p.text},
              {"urls", p.urls},
              {"likes", p.likes},
              {"retweets", p.retweets},
              {"followers", p.followers},
              {"followees", p.followees},
              {"country", p.country ? json(*p.country) : json(nullptr)},
              {"timestamp", p.timestamp},
              {"reply_ids", p.reply_ids}};
}

json to_json(const Reply& r) {
  return json{{"id", r.id}, {"parent_id", r.parent_id}, {"text", r.text}, {"likes", r.likes}, {"retweets", r.retweets}};
}

json to_json(const Article& a) {
  return json{{"id", a.id},
              {"url", a.url},
              {"outlet", a.outlet},
              {"title", a.title},
              {"byline", a.byline ? json(*a.byline) : json(nullptr)},
              {"paragraphs", a.paragraphs},
              {"out_links", a.out_links},
              {"parse_ok", a.parse_ok}};
}

json to_json(const Paper& p) {
  return json{{"id", p.id},       {"url", p.url},   {"domain", p.domain},
              {"title", p.title}, {"body", p.body}, {"parse_ok", p.parse_ok}};
}

std::set<std::string> read_lowercase_lines(const std::filesystem::path& path) {
  std::set<std::string> out;
  for (const auto& line : detail::content_lines(detail::read_file(path))) out.insert(detail::to_lower(line));
  return out;
}

bool is_boundary_byte(unsigned char c) {
  return !(detail::is_ascii_alpha(static_cast<char>(c)) || detail::is_ascii_digit(static_cast<char>(c)) || c >= 0x80);
}

template <typename Pairs>
void sort_unique(Pairs& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

}  // namespace

template <typename Record>
IngestResult<Record> ingest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  IngestResult<Record> result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    std::optional<Record> record;
    try {
      const json obj = json::parse(line);
      if (!obj.is_object()) throw InvalidRecord{"not a JSON object"};
      record = parse_record<Record>(obj);
    } catch (const json::exception& e) {
      result.skip_reasons.push_back("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InvalidRecord& e) {
      result.skip_reasons.push_back("line " + std::to_string(line_no) + ": " + e.reason);
    }
    if (!record) {
      ++result.skipped;
      continue;
    }
    if (!seen.insert(record->id).second) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": duplicate id '" + record->id + "'");
    }
    result.records.push_back(std::move(*record));
  }
  return result;
}

template IngestResult<Posting> ingest<Posting>(const std::filesystem::path&);
template IngestResult<Reply> ingest<Reply>(const std::filesystem::path&);
template IngestResult<Article> ingest<Article>(const std::filesystem::path&);
template IngestResult<Paper> ingest<Paper>(const std::filesystem::path&);

std::string serialize(const Posting& record) { return to_json(record).dump(); }
std::string serialize(const Reply& record) { return to_json(record).dump(); }
std::string serialize(const Article& record) { return to_json(record).dump(); }
std::string serialize(const Paper& record) { return to_json(record).dump(); }

Allowlist load_allowlist(const std::filesystem::path& domains, const std::filesystem::path& keywords) {
  Allowlist a;
  a.science_domains = read_lowercase_lines(domains);
  a.keywords = read_lowercase_lines(keywords);
  if (a.science_domains.empty()) throw DataError("allowlist: no science domains in " + domains.string());
  if (a.keywords.empty()) throw DataError("allowlist: no keywords in " + keywords.string());
  return a;
}

// --- Corpus -------------------------------------------------------------------

Corpus::Corpus(std::vector<Posting> postings, std::vector<Reply> replies, std::vector<Article> articles,
               std::vector<Paper> papers)
    : postings_(std::move(postings)), articles_(std::move(articles)), papers_(std::move(papers)) {
  for (std::size_t i = 0; i < postings_.size(); ++i) posting_index_.emplace(postings_[i].id, i);
  for (auto& r : replies) {
    if (posting_index_.contains(r.parent_id)) {
      replies_.push_back(std::move(r));
    } else {
      ++orphan_replies_;
    }
  }
  index();
}

void Corpus::index() {
  for (std::size_t i = 0; i < articles_.size(); ++i) article_index_.emplace(articles_[i].id, i);
  for (std::size_t i = 0; i < papers_.size(); ++i) paper_index_.emplace(papers_[i].id, i);
  for (std::size_t i = 0; i < replies_.size(); ++i) replies_by_parent_[replies_[i].parent_id].push_back(i);
}

const Posting* Corpus::posting(std::string_view id) const {
  const auto it = posting_index_.find(std::string(id));
  return it == posting_index_.end() ? nullptr : &postings_[it->second];
}

const Article* Corpus::article(std::string_view id) const {
  const auto it = article_index_.find(std::string(id));
  return it == article_index_.end() ? nullptr : &articles_[it->second];
}

const Paper* Corpus::paper(std::string_view id) const {
  const auto it = paper_index_.find(std::string(id));
  return it == paper_index_.end() ? nullptr : &papers_[it->second];
}

std::vector<const Reply*> Corpus::replies_to(std::string_view posting_id) const {
  std::vector<const Reply*> out;
  const auto it = replies_by_parent_.find(std::string(posting_id));
  if (it == replies_by_parent_.end()) return out;
  for (auto i : it->second) out.push_back(&replies_[i]);
  return out;
}

// --- filtering and linking ----------------------------------------------------

bool contains_keyword(std::string_view text, std::string_view keyword) {
  if (keyword.empty()) return false;
  const auto hay = detail::to_lower(text);
  const auto needle = detail::to_lower(keyword);
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || is_boundary_byte(static_cast<unsigned char>(hay[pos - 1]));
    const auto end = pos + needle.size();
    const bool right_ok = end == hay.size() || is_boundary_byte(static_cast<unsigned char>(hay[end]));
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::vector<Posting> filter_postings(std::span<const Posting> postings, const Allowlist& allowlist) {
  std::vector<Posting> kept;
  for (const auto& p : postings) {
    if (p.urls.empty()) continue;
    const bool match = std::any_of(allowlist.keywords.begin(), allowlist.keywords.end(),
                                   [&](const std::string& k) { return contains_keyword(p.text, k); });
    if (match) kept.push_back(p);
  }
  return kept;
}

LinkTable resolve_links(std::span<const Posting> postings, std::span<const Article> articles,
                        std::span<const Paper> papers, const Allowlist& allowlist) {
  LinkTable links;
  std::unordered_map<std::string, std::string> article_by_url;
  for (const auto& a : articles) {
    if (auto n = normalize_url(a.url)) article_by_url.emplace(*n, a.id);
  }
  std::unordered_map<std::string, std::string> paper_by_url;
  for (const auto& p : papers) {
    if (!allowlist.science_domains.contains(p.domain)) {
      ++links.papers_outside_allowlist;
      continue;
    }
    if (auto n = normalize_url(p.url)) paper_by_url.emplace(*n, p.id);
  }

  for (const auto& p : postings) {
    for (const auto& u : p.urls) {
      const auto n = normalize_url(u);
      const auto it = n ? article_by_url.find(*n) : article_by_url.end();
      if (it != article_by_url.end()) {
        links.posting_article.emplace_back(p.id, it->second);
      } else {
        ++links.unresolved_posting_urls;
      }
    }
  }
  for (const auto& a : articles) {
    for (const auto& u : a.out_links) {
      const auto n = normalize_url(u);
      if (!n) {
        ++links.unresolved_out_links;
        continue;
      }
      if (const auto it = paper_by_url.find(*n); it != paper_by_url.end()) {
        links.article_paper.emplace_back(a.id, it->second);
        continue;
      }
      const auto domain = registrable_domain(*n);
      if (allowlist.science_domains.contains(domain)) {
        links.article_domain.emplace_back(a.id, domain);
      } else if (!article_by_url.contains(*n)) {
        ++links.unresolved_out_links;
      }
    }
  }
  sort_unique(links.posting_article);
  sort_unique(links.article_paper);
  sort_unique(links.article_domain);
  return links;
}

void write_links(const std::filesystem::path& path, const LinkTable& links) {
  std::string out = "kind\tsource\ttarget\n";
  const auto emit = [&](std::string_view kind, const auto& pairs) {
    for (const auto& [s, t] : pairs) {
      out += kind;
      out += '\t' + s + '\t' + t + '\n';
    }
  };
  emit("posting_article", links.posting_article);
  emit("article_paper", links.article_paper);
  emit("article_domain", links.article_domain);
  out += "# unresolved_posting_urls\t" + std::to_string(links.unresolved_posting_urls) + "\n";
  out += "# unresolved_out_links\t" + std::to_string(links.unresolved_out_links) + "\n";
  out += "# papers_outside_allowlist\t" + std::to_string(links.papers_outside_allowlist) + "\n";
  detail::write_file(path, out);
}

LinkTable read_links(const std::filesystem::path& path) {
  LinkTable links;
  const auto text = detail::read_file(path);
  bool header = true;
  for (auto line : detail::split(text, '\n')) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto f = detail::split(line, '\t');
    const bool count_row = f.size() == 2 && f[0].starts_with('#');
    if (f.size() != 3 && !count_row) throw DataError(path.string() + ": malformed link row");
    if (count_row && f[0] == "# unresolved_posting_urls") {
      links.unresolved_posting_urls = std::stoull(std::string(f[1]));
    } else if (count_row && f[0] == "# unresolved_out_links") {
      links.unresolved_out_links = std::stoull(std::string(f[1]));
    } else if (count_row && f[0] == "# papers_outside_allowlist") {
      links.papers_outside_allowlist = std::stoull(std::string(f[1]));
    } else if (count_row) {
      throw DataError(path.string() + ": unknown count row '" + std::string(f[0]) + "'");
    } else if (f[0] == "posting_article") {
      links.posting_article.emplace_back(f[1], f[2]);
    } else if (f[0] == "article_paper") {
      links.article_paper.emplace_back(f[1], f[2]);
    } else if (f[0] == "article_domain") {
      links.article_domain.emplace_back(f[1], f[2]);
    } else {
      throw DataError(path.string() + ": unknown link kind '" + std::string(f[0]) + "'");
    }
  }
  return links;
}

}  // namespace newsgauge::corpus
