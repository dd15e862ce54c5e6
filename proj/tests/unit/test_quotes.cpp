#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "newsgauge/corpus.hpp"
#include "newsgauge/quotes.hpp"
#include "newsgauge/textkit.hpp"
#include "support/fixture.hpp"

using namespace newsgauge;
using namespace newsgauge::quotes;

namespace {

WordClassLexicon lexicon() {
  auto l = WordClassLexicon::seeds();
  for (const char* v : {"believe", "think", "said"}) l.reporting_verbs.insert(v);
  return l;
}

std::vector<std::string> pattern_names(const QuoteExtractor& x, const ArticleText& a, std::size_t sentence,
                                       const NameIndex* names = nullptr) {
  for (const auto& c : x.extract(a, names)) {
    if (c.sentence == sentence) return c.patterns;
  }
  return {};
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

const textkit::EmbeddingTable& embeddings() {
  static const auto table = textkit::load_embeddings(fixture::path("embeddings.txt"));
  return table;
}

std::vector<ArticleText> quote_fixture() {
  std::vector<ArticleText> out;
  for (const auto& a : corpus::ingest<corpus::Article>(fixture::path("quotes/articles.jsonl")).records) {
    out.push_back(prepare(a));
  }
  return out;
}

}  // namespace

TEST_SUITE("quotes") {

TEST_CASE("bundled seeds and patterns") {
  const auto s = WordClassLexicon::seeds();
  CHECK(s.seed_reporting_verbs == std::set<std::string>{"say", "claim", "prove", "analyze", "find", "show", "report",
                                                         "suggest", "argue", "conclude"});
  CHECK(s.seed_study_nouns == std::set<std::string>{"study", "survey", "analysis", "research", "report", "trial"});
  CHECK(s.seed_scientist_nouns == std::set<std::string>{"researcher", "scientist", "analyst", "expert", "author"});
  CHECK(s.reporting_verbs == s.seed_reporting_verbs);
  std::set<std::string> names;
  for (const auto& p : bundled_patterns()) names.insert(p.name);
  CHECK(names.contains("P1"));
  CHECK(names.contains("P2"));
  CHECK(names.contains("P3"));
}

TEST_CASE("lexicon expansion") {
  const std::set<std::string> seeds{"say", "notaword"};
  CHECK(expand_lexicon(seeds, embeddings(), 0) == seeds);
  std::vector<ExpansionEntry> review;
  const auto grown = expand_lexicon(seeds, embeddings(), 5, &review);
  CHECK(std::includes(grown.begin(), grown.end(), seeds.begin(), seeds.end()));
  CHECK(review.size() == 5);

  // Exhaustive scan: the five most similar vocabulary words to "say".
  const auto* say = embeddings().find("say");
  REQUIRE(say != nullptr);
  std::vector<std::pair<double, std::string>> scored;
  for (const auto& w : embeddings().words()) {
    if (w != "say") scored.emplace_back(-textkit::cosine(*say, *embeddings().find(w)), w);
  }
  std::sort(scored.begin(), scored.end());
  std::set<std::string> brute{"say", "notaword"};
  for (std::size_t i = 0; i < 5; ++i) brute.insert(scored[i].second);
  CHECK(grown == brute);
}

TEST_CASE("expanded seeds stay inside the expansion") {
  const auto l = expand(WordClassLexicon::seeds(), embeddings(), 20);
  CHECK(std::includes(l.reporting_verbs.begin(), l.reporting_verbs.end(), l.seed_reporting_verbs.begin(),
                      l.seed_reporting_verbs.end()));
  CHECK(std::includes(l.study_nouns.begin(), l.study_nouns.end(), l.seed_study_nouns.begin(), l.seed_study_nouns.end()));
  CHECK(l.reporting_verbs.size() > l.seed_reporting_verbs.size());
}

TEST_CASE("review file") {
  std::vector<ExpansionEntry> review;
  expand(WordClassLexicon::seeds(), embeddings(), 3, &review);
  const fixture::TempDir dir("review");
  write_review(dir.path() / "review.tsv", review);
  const auto text = fixture::slurp(dir.path() / "review.tsv");
  CHECK(std::count(text.begin(), text.end(), '\n') >= static_cast<long>(review.size()));
}

TEST_CASE("quote mark followed by a reporting verb") {
  const QuoteExtractor x(lexicon());
  const auto a = prepare("a", "\"It works,\" said Dr. Roe.");
  CHECK(has(pattern_names(x, a, 0), "P1"));
  CHECK(baseline_quote_sentences(a) == std::vector<std::size_t>{0});
}

TEST_CASE("scientist noun with a reporting verb") {
  const QuoteExtractor x(lexicon());
  CHECK(has(pattern_names(x, prepare("a", "Researchers believe coffee is protective."), 0), "P2"));
}

TEST_CASE("study noun with a reporting verb") {
  const QuoteExtractor x(lexicon());
  CHECK(has(pattern_names(x, prepare("a", "The study found that rates fell."), 0), "P3"));
}

TEST_CASE("plain sentences are not candidates") {
  const QuoteExtractor x(lexicon());
  CHECK(x.extract(prepare("a", "The bridge will close for repairs in May.")).empty());
}

TEST_CASE("custom pattern files") {
  const fixture::TempDir dir("patterns");
  fixture::spit(dir.path() / "p.txt", "# only literal\nLIT\t'bridge' ANY*\n");
  const auto patterns = load_patterns(dir.path() / "p.txt");
  REQUIRE(patterns.size() == 1);
  const QuoteExtractor x(lexicon(), patterns);
  CHECK(has(pattern_names(x, prepare("a", "Bridge works start soon."), 0), "LIT"));
}

TEST_CASE("baseline sentences are always extracted") {
  const QuoteExtractor x(expand(WordClassLexicon::seeds(), embeddings(), 20));
  const auto articles = quote_fixture();
  const auto names = NameIndex::build(articles);
  for (const auto& a : articles) {
    std::set<std::size_t> full;
    for (const auto& c : x.extract(a, &names)) full.insert(c.sentence);
    for (auto s : baseline_quote_sentences(a)) CHECK(full.contains(s));
  }
}

TEST_CASE("partial name resolves to the full name in the article") {
  const auto a = prepare("a", "Dr. Jane Roe led the trial.\n\n\"It works,\" said Roe.");
  const std::vector<ArticleText> all{a};
  const auto names = NameIndex::build(all);
  const QuoteExtractor x(lexicon());
  const auto quotes = attribute(x.extract(a, &names), a, x.lexicon(), names);
  REQUIRE(quotes.size() == 1);
  CHECK(quotes[0].quotee_kind == QuoteeKind::NamedPerson);
  CHECK(quotes[0].quotee == "Jane Roe");
  CHECK(quotes[0].resolved);
}

TEST_CASE("weasel subjects have no quotee") {
  const auto a = prepare("a", "Most scientists think the effect is real.");
  const std::vector<ArticleText> all{a};
  const auto names = NameIndex::build(all);
  const QuoteExtractor x(lexicon());
  const auto quotes = attribute(x.extract(a, &names), a, x.lexicon(), names);
  REQUIRE(quotes.size() == 1);
  CHECK(quotes[0].quotee_kind == QuoteeKind::UnnamedScientist);
  CHECK_FALSE(quotes[0].quotee.has_value());
}

TEST_CASE("study subjects are unnamed studies") {
  const auto a = prepare("a", "The survey found that most adults sleep less.");
  const NameIndex names;
  const QuoteExtractor x(lexicon());
  const auto quotes = attribute(x.extract(a, &names), a, x.lexicon(), names);
  REQUIRE(quotes.size() == 1);
  CHECK(quotes[0].quotee_kind == QuoteeKind::UnnamedStudy);
  const auto stats = quote_stats(quotes, 0);
  CHECK(stats.weasel_quotes == 1);
  CHECK(stats.person_quotes == 0);
}

TEST_CASE("acronyms expand from the corpus") {
  const auto other = prepare("b", "The World Health Organization (WHO) issued guidance on sleep.");
  const auto a = prepare("a", "WHO said that adults need more sleep.");
  const std::vector<ArticleText> all{a, other};
  const auto names = NameIndex::build(all);
  CHECK(names.expand_acronym("WHO") == "World Health Organization");
  const QuoteExtractor x(lexicon());
  const auto quotes = attribute(x.extract(a, &names), a, x.lexicon(), names);
  REQUIRE(quotes.size() == 1);
  CHECK(quotes[0].quotee_kind == QuoteeKind::Organization);
  CHECK(quotes[0].quotee == "World Health Organization");
}

TEST_CASE("affiliation is the most co-mentioned organization") {
  const auto a = prepare("a",
                         "Jane Roe of Example University led the work.\n\n"
                         "Jane Roe and Example University staff met Other Institute officials.\n\n"
                         "\"It holds,\" said Roe.");
  const std::vector<ArticleText> all{a};
  const auto names = NameIndex::build(all);
  const QuoteExtractor x(lexicon());
  const auto quotes = attribute(x.extract(a, &names), a, x.lexicon(), names);
  REQUIRE(quotes.size() == 1);
  CHECK(quotes[0].affiliation == "Example University");
}

TEST_CASE("attribution never invents strings") {
  const QuoteExtractor x(expand(WordClassLexicon::seeds(), embeddings(), 20));
  const auto articles = quote_fixture();
  const auto names = NameIndex::build(articles);
  std::string all_text;
  for (const auto& a : articles) all_text += a.text.text + "\n";
  for (const auto& a : articles) {
    const auto quotes = attribute(x.extract(a, &names), a, x.lexicon(), names);
    CHECK(quotes == attribute(x.extract(a, &names), a, x.lexicon(), names));
    for (const auto& q : quotes) {
      CHECK(q.quotee.has_value() == (q.quotee_kind == QuoteeKind::NamedPerson ||
                                     q.quotee_kind == QuoteeKind::Organization));
      if (q.quotee) CHECK(all_text.find(*q.quotee) != std::string::npos);
      if (q.affiliation) CHECK(all_text.find(*q.affiliation) != std::string::npos);
    }
    const auto stats = quote_stats(quotes, 0);
    CHECK(stats.person_quotes + stats.weasel_quotes <= stats.total_quotes);
  }
}

TEST_CASE("scientific mentions count sentences once") {
  const corpus::Allowlist allow{{"nature.com"}, {"study"}};
  const auto twice = prepare("a", "Example University and Example University agreed.");
  CHECK(scientific_mentions(twice, allow, {}) == 1);
  CHECK(scientific_mentions(prepare("a", "The bridge will close in May."), allow, {}) == 0);
  const auto three = prepare("a",
                             "Scientists at Example University measured it.\n\n"
                             "The bridge will close in May.\n\n"
                             "Results appeared on nature.com last week.\n\n"
                             "Staff at the Marine Laboratory agreed.");
  CHECK(scientific_mentions(three, allow, {}) == 3);
}

}  // TEST_SUITE
