#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "newsgauge/corpus.hpp"
#include "newsgauge/error.hpp"
#include "support/fixture.hpp"

using namespace newsgauge;
using namespace newsgauge::corpus;

namespace {

Posting posting(std::string id, std::string text, std::vector<std::string> urls) {
  Posting p;
  p.id = std::move(id);
  p.author_id = "u1";
  p.text = std::move(text);
  p.urls = std::move(urls);
  p.timestamp = 1600000000;
  return p;
}

Article article(std::string id, std::string url, std::vector<std::string> out_links) {
  Article a;
  a.id = std::move(id);
  a.url = std::move(url);
  a.outlet = registrable_domain(a.url);
  a.title = "Title";
  a.paragraphs = {"Body text."};
  a.out_links = std::move(out_links);
  return a;
}

Paper paper(std::string id, std::string url) {
  Paper p;
  p.id = std::move(id);
  p.url = std::move(url);
  p.domain = registrable_domain(p.url);
  p.title = "Paper";
  p.body = "Abstract.\n\nMethods.";
  return p;
}

Allowlist allowlist() { return {{"nature.com", "science.org"}, {"study", "zucchini"}}; }

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("url parsing and normalization") {
  CHECK(normalize_url("HTTP://A.com/x/#frag") == normalize_url("http://a.com/x"));
  CHECK(normalize_url("https://Example.COM:443/path/") == "https://example.com/path");
  CHECK(normalize_url("example.com/a") == "http://example.com/a");
  CHECK_FALSE(normalize_url("not a url").has_value());
  CHECK_FALSE(is_valid_url("ftp://example.com"));
  CHECK_FALSE(is_valid_url("http://localhost/x"));
  const auto u = parse_url("https://news.example.org:8080/a/b?q=1#z");
  REQUIRE(u.has_value());
  CHECK(u->host == "news.example.org");
  CHECK(u->port == 8080);
  CHECK(u->path == "/a/b");
  CHECK(u->query == "q=1");
}

TEST_CASE("registrable domain") {
  CHECK(registrable_domain("https://www.nature.com/articles/1") == "nature.com");
  CHECK(registrable_domain("news.bbc.co.uk") == "bbc.co.uk");
  CHECK(registrable_domain("viralhealth.co.uk") == "viralhealth.co.uk");
}

TEST_CASE("keyword matching respects word boundaries") {
  CHECK(contains_keyword("A new Study shows", "study"));
  CHECK_FALSE(contains_keyword("teamwork", "tea"));
  CHECK(contains_keyword("tea, please", "tea"));
}

TEST_CASE("filter keeps postings with a keyword and a url") {
  const std::vector<Posting> in{posting("a", "zucchini is great http://x.com/1", {"http://x.com/1"}),
                                posting("b", "a study without links", {}),
                                posting("c", "just a link http://x.com/2", {"http://x.com/2"})};
  const auto out = filter_postings(in, allowlist());
  REQUIRE(out.size() == 1);
  CHECK(out[0].id == "a");
}

TEST_CASE("filter is idempotent and returns a subset") {
  const auto postings = ingest<Posting>(fixture::path("corpus/postings.jsonl")).records;
  const auto list = load_allowlist(fixture::path("allowlist/domains.txt"), fixture::path("allowlist/keywords.txt"));
  const auto once = filter_postings(postings, list);
  const auto twice = filter_postings(once, list);
  CHECK(once == twice);
  CHECK(once.size() < postings.size());
  for (const auto& p : once) {
    CHECK(std::find(postings.begin(), postings.end(), p) != postings.end());
  }
}

TEST_CASE("ingest of an empty file") {
  const fixture::TempDir dir("corpus");
  fixture::spit(dir.path() / "empty.jsonl", "");
  const auto r = ingest<Posting>(dir.path() / "empty.jsonl");
  CHECK(r.records.empty());
  CHECK(r.skipped == 0);
}

TEST_CASE("ingest skips invalid lines with a reason") {
  const fixture::TempDir dir("corpus");
  fixture::spit(dir.path() / "p.jsonl",
                serialize(posting("ok", "study http://a.com/x", {"http://a.com/x"})) + "\n" +
                    R"({"id": "missing-text", "author_id": "u", "urls": [], "timestamp": 5})" + "\n" +
                    "not json\n\n");
  const auto r = ingest<Posting>(dir.path() / "p.jsonl");
  REQUIRE(r.records.size() == 1);
  CHECK(r.skipped == 2);
  REQUIRE(r.skip_reasons.size() == 2);
  CHECK(r.skip_reasons[0].find("line 2") != std::string::npos);
  CHECK(r.skip_reasons[0].find("text") != std::string::npos);
}

TEST_CASE("ingest rejects repeated ids and unreadable files") {
  const fixture::TempDir dir("corpus");
  const auto line = serialize(posting("same", "t", {}));
  fixture::spit(dir.path() / "dup.jsonl", line + "\n" + line + "\n");
  CHECK_THROWS_AS(ingest<Posting>(dir.path() / "dup.jsonl"), DataError);
  CHECK_THROWS_AS(ingest<Posting>(dir.path() / "absent.jsonl"), DataError);
}

TEST_CASE("serialize then ingest round-trips every record kind") {
  const fixture::TempDir dir("corpus");
  auto p = posting("p1", "text \"quoted\" é", {"https://a.com/x"});
  p.country = "FR";
  p.reply_ids = {"r1"};
  Reply r{"r1", "p1", "reply text", 2, 1};
  auto a = article("a1", "https://news.com/x", {"https://nature.com/p"});
  a.byline = "Jane Roe";
  a.parse_ok = true;
  auto pp = paper("pp1", "https://nature.com/p");

  fixture::spit(dir.path() / "p.jsonl", serialize(p) + "\n");
  fixture::spit(dir.path() / "r.jsonl", serialize(r) + "\n");
  fixture::spit(dir.path() / "a.jsonl", serialize(a) + "\n");
  fixture::spit(dir.path() / "pp.jsonl", serialize(pp) + "\n");
  CHECK(ingest<Posting>(dir.path() / "p.jsonl").records.at(0) == p);
  CHECK(ingest<Reply>(dir.path() / "r.jsonl").records.at(0) == r);
  CHECK(ingest<Article>(dir.path() / "a.jsonl").records.at(0) == a);
  CHECK(ingest<Paper>(dir.path() / "pp.jsonl").records.at(0) == pp);
}

TEST_CASE("fixture corpus ingests cleanly") {
  CHECK(ingest<Article>(fixture::path("corpus/articles.jsonl")).records.size() == 30);
  CHECK(ingest<Paper>(fixture::path("corpus/papers.jsonl")).records.size() == 20);
  const auto postings = ingest<Posting>(fixture::path("corpus/postings.jsonl"));
  CHECK(postings.skipped == 0);
  CHECK(postings.records.size() == 96);
}

TEST_CASE("corpus drops orphan replies") {
  const Corpus c({posting("p1", "t", {})}, {Reply{"r1", "p1", "a", 0, 0}, Reply{"r2", "gone", "b", 0, 0}}, {}, {});
  CHECK(c.orphan_replies() == 1);
  CHECK(c.replies_to("p1").size() == 1);
  CHECK(c.posting("p1") != nullptr);
  CHECK(c.posting("p2") == nullptr);
}

TEST_CASE("link resolution") {
  const std::vector<Posting> postings{posting("t1", "study", {"HTTPS://News.com/x/#top"}),
                                      posting("t2", "study", {"https://elsewhere.com/"})};
  const std::vector<Article> articles{
      article("a1", "https://news.com/x", {"https://www.nature.com/p1", "https://science.org/", "https://blog.com/z"}),
      article("a2", "https://news.com/y", {"https://outside.org/p9"})};
  const std::vector<Paper> papers{paper("p1", "https://www.nature.com/p1"), paper("p9", "https://outside.org/p9")};
  const auto links = resolve_links(postings, articles, papers, allowlist());
  using Pairs = std::vector<std::pair<std::string, std::string>>;
  CHECK(links.posting_article == Pairs{{"t1", "a1"}});
  CHECK(links.article_paper == Pairs{{"a1", "p1"}});
  CHECK(links.article_domain == Pairs{{"a1", "science.org"}});
  CHECK(links.unresolved_posting_urls == 1);
  CHECK(links.papers_outside_allowlist >= 1);
}

TEST_CASE("link table file round-trip") {
  const auto postings = ingest<Posting>(fixture::path("corpus/postings.jsonl")).records;
  const auto articles = ingest<Article>(fixture::path("corpus/articles.jsonl")).records;
  const auto papers = ingest<Paper>(fixture::path("corpus/papers.jsonl")).records;
  const auto list = load_allowlist(fixture::path("allowlist/domains.txt"), fixture::path("allowlist/keywords.txt"));
  const auto links = resolve_links(filter_postings(postings, list), articles, papers, list);
  CHECK(links.papers_outside_allowlist == 2);
  const fixture::TempDir dir("links");
  write_links(dir.path() / "links.tsv", links);
  CHECK(read_links(dir.path() / "links.tsv") == links);
  CHECK(std::is_sorted(links.posting_article.begin(), links.posting_article.end()));
}

TEST_CASE("allowlist must not be empty") {
  const fixture::TempDir dir("allow");
  fixture::spit(dir.path() / "d.txt", "Nature.com\n\n");
  fixture::spit(dir.path() / "k.txt", "");
  CHECK_THROWS_AS(load_allowlist(dir.path() / "d.txt", dir.path() / "k.txt"), DataError);
  fixture::spit(dir.path() / "k.txt", "Study\n");
  const auto a = load_allowlist(dir.path() / "d.txt", dir.path() / "k.txt");
  CHECK(a.science_domains == std::set<std::string>{"nature.com"});
  CHECK(a.keywords == std::set<std::string>{"study"});
}

}  // TEST_SUITE
