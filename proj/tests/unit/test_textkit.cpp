#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "newsgauge/clickbait.hpp"
#include "newsgauge/error.hpp"
#include "newsgauge/textkit.hpp"
#include "support/fixture.hpp"

using namespace newsgauge;
using namespace newsgauge::textkit;

TEST_SUITE("textkit") {

TEST_CASE("empty text has no tokens or sentences") {
  const auto t = analyze("");
  CHECK(t.tokens.empty());
  CHECK(t.sentences.empty());
}

TEST_CASE("abbreviations do not end sentences") {
  const auto t = analyze("Dr. Smith spoke. He left.");
  REQUIRE(t.sentences.size() == 2);
  CHECK(t.sentence_text(0) == "Dr. Smith spoke.");
  CHECK(t.sentence_text(1) == "He left.");
}

TEST_CASE("bare domains stay whole") {
  const auto t = analyze("Results appeared on nature.com last week. See bbc.co.uk/news, then stop.");
  REQUIRE(t.sentences.size() == 2);
  CHECK(t.sentence_text(0) == "Results appeared on nature.com last week.");
  std::vector<std::string> urls;
  for (const auto& tok : t.tokens) {
    if (is_url(tok)) urls.emplace_back(tok.surface);
  }
  CHECK(urls == std::vector<std::string>{"nature.com", "bbc.co.uk/news"});
}

TEST_CASE("coarse tags") {
  const auto t = analyze("They were running");
  REQUIRE(t.tokens.size() == 3);
  CHECK(t.tokens[2].pos == PosTag::Verb);
  CHECK(t.tokens[0].pos == PosTag::Pron);
  CHECK(analyze("42").tokens.at(0).pos == PosTag::Num);
}

TEST_CASE("sentence and paragraph ranges partition the tokens") {
  const std::vector<std::string> paragraphs{"One two. Three four!", "Five six? Seven.", "Eight"};
  const auto t = analyze_paragraphs(paragraphs);
  REQUIRE(t.paragraphs.size() == 3);
  std::size_t next = 0;
  for (const auto& s : t.sentences) {
    CHECK(s.begin == next);
    next = s.end;
  }
  CHECK(next == t.tokens.size());
  std::size_t sentence = 0;
  for (const auto& p : t.paragraphs) {
    CHECK(p.begin == sentence);
    sentence = p.end;
  }
  CHECK(sentence == t.sentences.size());
  CHECK(t.paragraphs[0].size() == 2);
}

TEST_CASE("token offsets point into the source") {
  const auto t = analyze("Hello, world. Visit https://example.com/a?b=1 today.");
  for (const auto& tok : t.tokens) CHECK(t.text.substr(tok.begin, tok.end - tok.begin) == tok.surface);
  bool saw_url = false;
  for (const auto& tok : t.tokens) saw_url = saw_url || is_url(tok);
  CHECK(saw_url);
}

TEST_CASE("entities from a typical sentence") {
  const auto e = extract_entities(analyze("Dr. Jane Roe of Example University found a 12% rise in 2017."));
  CHECK(e.persons == std::set<std::string>{"Jane Roe"});
  CHECK(e.organizations == std::set<std::string>{"Example University"});
  CHECK(e.percentages == std::set<std::string>{"12%"});
  CHECK(e.dates == std::set<std::string>{"2017"});
  CHECK(e.numbers == std::set<std::string>{"12"});
}

TEST_CASE("capitalized acronym is an organization") {
  const auto e = extract_entities(analyze("WHO announced new guidance."));
  CHECK(e.organizations.contains("WHO"));
  CHECK(is_org_acronym("NASA"));
  CHECK_FALSE(is_org_acronym("I"));
  CHECK(name_initials("World Health Organization") == "WHO");
}

TEST_CASE("all-lowercase text yields only numbers") {
  const auto e = extract_entities(analyze("the rate rose by 7 points and then fell by 3"));
  CHECK(e.persons.empty());
  CHECK(e.organizations.empty());
  CHECK(e.dates.empty());
  CHECK(e.percentages.empty());
  CHECK(e.numbers == std::set<std::string>{"3", "7"});
}

TEST_CASE("flesch reading ease") {
  // 1 sentence, 3 words, 3 syllables: 206.835 - 1.015*3 - 84.6*1
  CHECK(flesch_reading_ease(analyze("The cat sat.")) == doctest::Approx(119.19).epsilon(1e-9));
  const std::string text = "Researchers measured sleep in adults. The effect was small but consistent.";
  const double once = flesch_reading_ease(analyze(text));
  CHECK(flesch_reading_ease(analyze(text + " " + text)) == doctest::Approx(once).epsilon(1e-12));
  CHECK_THROWS_AS(flesch_reading_ease(analyze("...")), PreconditionError);
}

TEST_CASE("syllable counts") {
  CHECK(count_syllables("cat") == 1);
  CHECK(count_syllables("make") == 1);
  CHECK(count_syllables("table") == 2);
  CHECK(count_syllables("banana") == 3);
  CHECK(count_syllables("x") == 1);
}

TEST_CASE("sentiment from counts") {
  // Two positive and one negative word among thirty tokens.
  std::string text = "good great bad";
  for (int i = 0; i < 27; ++i) text += " table";
  const auto t = analyze(text);
  const auto c = sentiment_counts(t);
  CHECK(c.positive == 2);
  CHECK(c.negative == 1);
  CHECK(c.tokens == 30);
  const auto s = sentiment(t);
  CHECK(s.polarity == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(s.subjectivity == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("sentiment of neutral and empty text") {
  CHECK(sentiment(analyze("")).polarity == 0.0);
  CHECK(sentiment(analyze("")).subjectivity == 0.0);
  CHECK(sentiment(analyze("The table is wooden.")).polarity == 0.0);
}

TEST_CASE("sentiment stays in range") {
  for (const char* s : {"awful terrible bad", "great good excellent", "good bad", "wonderful!!! not"}) {
    const auto v = sentiment(analyze(s));
    CHECK(v.polarity >= -1.0);
    CHECK(v.polarity <= 1.0);
    CHECK(v.subjectivity >= 0.0);
    CHECK(v.subjectivity <= 1.0);
  }
}

TEST_CASE("negation words and stopwords are bundled") {
  CHECK(negation_words().contains("not"));
  CHECK(negation_words().contains("never"));
  CHECK(negation_words().contains("n't"));
  CHECK(stopwords().contains("the"));
  CHECK_FALSE(stopwords().contains("sleep"));
}

TEST_CASE("embedding doc vector and cosine") {
  EmbeddingTable table(2);
  table.insert("sleep", {1.0, 0.0});
  table.insert("coffee", {0.0, 2.0});
  const auto v = doc_vector(analyze("Sleep and COFFEE"), table);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == doctest::Approx(0.5));
  CHECK(v[1] == doctest::Approx(1.0));
  CHECK(cosine(v, v) == doctest::Approx(1.0));
  const auto zero = doc_vector(analyze("nothing known"), table);
  CHECK(cosine(zero, v) == 0.0);
  CHECK_THROWS_AS(table.insert("bad", {1.0}), DataError);
}

TEST_CASE("bundled fixture embeddings load") {
  const auto table = load_embeddings(fixture::path("embeddings.txt"));
  CHECK(table.dimension() == 50);
  CHECK(table.find("say") != nullptr);
  CHECK(table.find("SAY") == table.find("say"));
}

TEST_CASE("clickbait model") {
  const auto& headlines = bundled_headlines();
  REQUIRE(headlines.size() >= 100);
  const auto model = HeadlineModel::train(headlines, {50, 3, std::nullopt});
  std::size_t bait_seen = 0;
  for (const auto& h : headlines) {
    if (!h.clickbait) continue;
    CHECK(model.score(h.title) > 0.5);
    if (++bait_seen == 10) break;
  }
  CHECK(model.score("") == doctest::Approx(model.prior()));
  const double s = clickbait_score("You won't believe what this study found", model);
  CHECK(s >= 0.0);
  CHECK(s <= 1.0);
}

TEST_CASE("clickbait untrained and parsing") {
  CHECK_THROWS_AS(static_cast<void>(HeadlineModel().score("x")), PreconditionError);
  const auto rows = parse_headlines("clickbait\tYou will not believe this\nnews\tCouncil approves budget\n1\tTen tricks\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].clickbait);
  CHECK_FALSE(rows[1].clickbait);
  CHECK(rows[2].clickbait);
}

}  // TEST_SUITE
