#pragma once

// Self-contained English text analytics: tokenization, sentence and
// paragraph segmentation, coarse part-of-speech tags, rule-based entities,
// readability, lexicon sentiment and word embeddings.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace newsgauge::textkit {

enum class PosTag : std::uint8_t { Noun, Verb, Adj, Adv, Pron, Det, Adp, Num, Propn, Punct, Other };

std::string_view to_string(PosTag tag);

struct Token {
  std::string surface;
  std::string lower;
  PosTag pos = PosTag::Other;
  std::size_t begin = 0;  // byte offsets into TokenizedText::text
  std::size_t end = 0;
};

/// Half-open index range.
struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;

  [[nodiscard]] std::size_t size() const { return end - begin; }
  [[nodiscard]] bool empty() const { return begin == end; }
  [[nodiscard]] bool contains(std::size_t i) const { return i >= begin && i < end; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Tokens plus sentence ranges (over tokens) and paragraph ranges (over
/// sentences). Both partitions are contiguous and cover everything.
struct TokenizedText {
  std::string text;
  std::vector<Token> tokens;
  std::vector<Range> sentences;
  std::vector<Range> paragraphs;

  [[nodiscard]] std::span<const Token> tokens_in(Range r) const {
    return std::span<const Token>(tokens).subspan(r.begin, r.size());
  }
  /// Source text covered by a token range, verbatim.
  [[nodiscard]] std::string_view source(Range token_range) const;
  [[nodiscard]] std::string_view sentence_text(std::size_t sentence) const {
    return source(sentences.at(sentence));
  }
  /// Token range spanned by a paragraph.
  [[nodiscard]] Range paragraph_tokens(std::size_t paragraph) const;
};

TokenizedText analyze(std::string_view text);

/// Joins paragraphs with blank lines and analyzes the result, so paragraph
/// boundaries are preserved.
TokenizedText analyze_paragraphs(std::span<const std::string> paragraphs);

bool is_word(const Token& token);
bool is_url(const Token& token);
bool is_number(const Token& token);

// --- entities ---------------------------------------------------------------

enum class EntityKind : std::uint8_t { Person, Organization, Date, Number, Percentage };

struct EntityMention {
  EntityKind kind;
  Range tokens;
  std::string surface;
};

struct EntitySet {
  std::set<std::string> persons;
  std::set<std::string> organizations;
  std::set<std::string> dates;
  std::set<std::string> numbers;
  std::set<std::string> percentages;

  friend bool operator==(const EntitySet&, const EntitySet&) = default;
};

/// All entity mentions in document order.
std::vector<EntityMention> find_entities(const TokenizedText& text);

EntitySet extract_entities(const TokenizedText& text);

/// Entity set restricted to mentions lying entirely inside a token range.
EntitySet collect_entities(std::span<const EntityMention> mentions, Range token_range);

/// True for capitalized acronyms that the entity rules would treat as
/// organizations ("WHO", "NASA").
bool is_org_acronym(std::string_view surface);

/// Initial letters of the capitalized words of a name, skipping connectives:
/// "World Health Organization" -> "WHO".
std::string name_initials(std::string_view name);

// --- readability ------------------------------------------------------------

/// Vowel-group syllable count with a silent-e rule; at least 1.
int count_syllables(std::string_view word);

/// Flesch reading ease. Throws PreconditionError when there are no words.
double flesch_reading_ease(const TokenizedText& text);

// --- sentiment --------------------------------------------------------------

struct SentimentScore {
  double polarity = 0.0;      // [-1, 1]
  double subjectivity = 0.0;  // [0, 1]
};

class SentimentLexicon {
 public:
  /// Positive/negative opinion words shipped with the library.
  static const SentimentLexicon& bundled();
  static SentimentLexicon load(const std::filesystem::path& positive, const std::filesystem::path& negative);

  SentimentLexicon(std::unordered_set<std::string> positive, std::unordered_set<std::string> negative);

  [[nodiscard]] bool is_positive(std::string_view word) const;
  [[nodiscard]] bool is_negative(std::string_view word) const;

 private:
  std::unordered_set<std::string> positive_;
  std::unordered_set<std::string> negative_;
};

struct SentimentCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t tokens = 0;  // non-punctuation tokens
};

SentimentCounts sentiment_counts(const TokenizedText& text, const SentimentLexicon& lexicon = SentimentLexicon::bundled());

/// polarity = (P - N) / (P + N), subjectivity = (P + N) / tokens.
SentimentScore sentiment(const TokenizedText& text, const SentimentLexicon& lexicon = SentimentLexicon::bundled());

/// Words that negate ("not", "never", "n't", ...).
const std::unordered_set<std::string>& negation_words();

/// Words dropped before topic modelling.
const std::unordered_set<std::string>& stopwords();

// --- embeddings -------------------------------------------------------------

using Vector = std::vector<double>;

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  /// Adds or replaces a word's vector. Throws DataError on dimension mismatch.
  void insert(std::string word, Vector vector);

  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  [[nodiscard]] std::size_t size() const { return words_.size(); }
  /// Case-folded lookup.
  [[nodiscard]] const Vector* find(std::string_view word) const;
  /// Vocabulary in insertion (file) order.
  [[nodiscard]] const std::vector<std::string>& words() const { return words_; }

 private:
  std::size_t dimension_ = 0;
  std::vector<std::string> words_;
  std::unordered_map<std::string, Vector> vectors_;
};

/// Reads "word v1 ... vD" lines. Throws DataError on inconsistent dimension.
EmbeddingTable load_embeddings(const std::filesystem::path& path);

/// Mean vector of in-vocabulary lowercase tokens; zero vector when none.
Vector doc_vector(const TokenizedText& text, const EmbeddingTable& table);
Vector doc_vector(std::span<const Token> tokens, const EmbeddingTable& table);

/// Cosine similarity; 0 when either vector is zero.
double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace newsgauge::textkit
