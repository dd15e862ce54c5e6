#pragma once

// Quote-sentence extraction over word-class patterns, quote attribution and
// scientific-mention counting.

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newsgauge/corpus.hpp"
#include "newsgauge/textkit.hpp"

namespace newsgauge::quotes {

struct WordClassLexicon {
  std::set<std::string> reporting_verbs;
  std::set<std::string> study_nouns;
  std::set<std::string> scientist_nouns;
  std::set<std::string> seed_reporting_verbs;
  std::set<std::string> seed_study_nouns;
  std::set<std::string> seed_scientist_nouns;

  /// Seed sets only (expanded sets equal to the seeds).
  static WordClassLexicon seeds();
};

struct ExpansionEntry {
  std::string word;
  std::string seed;
  double cosine = 0.0;
};

/// Seeds plus, for every in-vocabulary seed, its k nearest vocabulary words by
/// cosine (ties by word). Optional review entries are appended per neighbour.
std::set<std::string> expand_lexicon(const std::set<std::string>& seeds, const textkit::EmbeddingTable& table,
                                     std::size_t k, std::vector<ExpansionEntry>* review = nullptr);

/// Expands all three classes of a seed lexicon.
WordClassLexicon expand(const WordClassLexicon& seeds, const textkit::EmbeddingTable& table, std::size_t k,
                        std::vector<ExpansionEntry>* review = nullptr);

/// TSV: word, seed, cosine.
void write_review(const std::filesystem::path& path, std::span<const ExpansionEntry> entries);

enum class WordClass : char {
  QuoteMarkSpan = 'Q',
  ReportingVerb = 'V',
  StudyNoun = 'S',
  ScientistNoun = 'N',
  Person = 'P',
  Org = 'O',
  Pronoun = 'R',
  Other = 'X',
};

struct Pattern {
  std::string name;
  std::string source;  // as written in the pattern file
};

/// Patterns shipped with the library.
const std::vector<Pattern>& bundled_patterns();
/// "<name>\t<pattern>" lines; '#' comments allowed.
std::vector<Pattern> load_patterns(const std::filesystem::path& path);

/// Article body with its entity mentions.
struct ArticleText {
  std::string id;
  textkit::TokenizedText text;
  std::vector<textkit::EntityMention> mentions;
};

ArticleText prepare(const corpus::Article& article);
ArticleText prepare(std::string id, std::string_view body);

/// Corpus-wide person names and acronym expansions, built once and shared.
class NameIndex {
 public:
  NameIndex() = default;
  static NameIndex build(std::span<const ArticleText> articles);

  /// Most frequent multi-word person name containing `part` as a word; ties
  /// go to the name seen first.
  [[nodiscard]] std::optional<std::string> full_name(std::string_view part) const;
  [[nodiscard]] bool is_name_part(std::string_view word) const { return name_parts_.contains(std::string(word)); }
  /// Full organization name with matching initials that co-occurs most often
  /// with the acronym in a sentence; ties go to the pair seen first.
  [[nodiscard]] std::optional<std::string> expand_acronym(std::string_view acronym) const;

 private:
  struct Tally {
    std::size_t count = 0;
    std::size_t first = 0;
  };
  std::map<std::string, Tally> full_names_;
  std::set<std::string> name_parts_;
  std::map<std::string, std::map<std::string, Tally>> acronyms_;
};

/// Word class of every token of an article; tokens inside one quoted span
/// all get QuoteMarkSpan.
std::vector<WordClass> classify(const ArticleText& article, const WordClassLexicon& lexicon,
                                const NameIndex* names = nullptr);

/// Sentences (indices) that contain text between quote marks.
std::vector<std::size_t> baseline_quote_sentences(const ArticleText& article);

struct Candidate {
  std::size_t sentence = 0;
  std::vector<std::string> patterns;  // names of the matching patterns
};

class QuoteExtractor {
 public:
  explicit QuoteExtractor(WordClassLexicon lexicon, std::vector<Pattern> patterns = bundled_patterns());

  [[nodiscard]] std::vector<Candidate> extract(const ArticleText& article, const NameIndex* names = nullptr) const;
  [[nodiscard]] const WordClassLexicon& lexicon() const { return lexicon_; }

 private:
  struct Compiled;
  WordClassLexicon lexicon_;
  std::vector<Pattern> patterns_;
  std::vector<std::shared_ptr<const Compiled>> compiled_;
};

enum class QuoteeKind { NamedPerson, Organization, UnnamedScientist, UnnamedStudy };

std::string_view to_string(QuoteeKind kind);

struct Quote {
  std::string article_id;
  std::size_t sentence_index = 0;
  std::string text;
  QuoteeKind quotee_kind = QuoteeKind::UnnamedScientist;
  std::optional<std::string> quotee;
  std::optional<std::string> affiliation;
  /// False when a partial name or an acronym could not be expanded.
  bool resolved = true;

  friend bool operator==(const Quote&, const Quote&) = default;
};

std::vector<Quote> attribute(std::span<const Candidate> candidates, const ArticleText& article,
                             const WordClassLexicon& lexicon, const NameIndex& names);

/// Sentences naming an allowlisted domain or a scientific organization, plus
/// sentences of study-attributed quotes; each sentence counted once.
std::size_t scientific_mentions(const ArticleText& article, const corpus::Allowlist& allowlist,
                                std::span<const Quote> quotes);

struct QuoteStats {
  std::size_t total_quotes = 0;
  std::size_t person_quotes = 0;
  std::size_t scientific_mentions = 0;
  std::size_t weasel_quotes = 0;
};

QuoteStats quote_stats(std::span<const Quote> quotes, std::size_t scientific_mentions);

}  // namespace newsgauge::quotes
