#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "newsgauge/error.hpp"
#include "newsgauge/textkit.hpp"
#include "strings.hpp"

namespace newsgauge {
namespace detail {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace detail

namespace textkit {
namespace {

using detail::is_ascii_alpha;
using detail::is_ascii_digit;
using detail::is_ascii_space;
using detail::is_ascii_upper;

// UTF-8 punctuation that gets its own token.
constexpr std::array<std::string_view, 7> kMultibytePunct = {
    "\xE2\x80\x9C", "\xE2\x80\x9D",  // curly double quotes
    "\xE2\x80\x98", "\xE2\x80\x99",  // curly single quotes
    "\xE2\x80\x94", "\xE2\x80\x93",  // em and en dash
    "\xE2\x80\xA6",                  // ellipsis
};

const std::unordered_map<std::string, PosTag>& pos_lexicon() {
  static const auto lexicon = [] {
    std::unordered_map<std::string, PosTag> map;
    const std::unordered_map<std::string_view, PosTag> names = {
        {"NOUN", PosTag::Noun}, {"VERB", PosTag::Verb}, {"ADJ", PosTag::Adj},   {"ADV", PosTag::Adv},
        {"PRON", PosTag::Pron}, {"DET", PosTag::Det},   {"ADP", PosTag::Adp},   {"NUM", PosTag::Num},
        {"PROPN", PosTag::Propn}, {"PUNCT", PosTag::Punct}, {"OTHER", PosTag::Other}};
    for (const auto& line : detail::content_lines(detail::bundled("pos_lexicon.tsv"))) {
      const auto fields = detail::split(line, '\t');
      if (fields.size() < 2) continue;
      const auto tag = names.find(detail::trim(fields[1]));
      if (tag == names.end()) continue;
      map.emplace(detail::to_lower(detail::trim(fields[0])), tag->second);
    }
    return map;
  }();
  return lexicon;
}

const std::unordered_set<std::string>& abbreviations() {
  static const auto set = detail::bundled_word_set("abbreviations.txt");
  return set;
}

bool is_word_byte(char c) {
  return is_ascii_alpha(c) || is_ascii_digit(c) || static_cast<unsigned char>(c) >= 0x80;
}

std::size_t multibyte_punct_at(std::string_view text, std::size_t i) {
  for (auto p : kMultibytePunct) {
    if (text.substr(i, p.size()) == p) return p.size();
  }
  return 0;
}

bool is_apostrophe_at(std::string_view text, std::size_t i, std::size_t* width) {
  if (i < text.size() && text[i] == '\'') {
    *width = 1;
    return true;
  }
  if (text.substr(i, 3) == "\xE2\x80\x99") {
    *width = 3;
    return true;
  }
  return false;
}

struct RawToken {
  std::size_t begin;
  std::size_t end;
  bool paragraph_break_before;
};

bool is_url_start(std::string_view text, std::size_t i) {
  const auto rest = text.substr(i);
  return detail::starts_with_ci(rest, "http://") || detail::starts_with_ci(rest, "https://") ||
         detail::starts_with_ci(rest, "www.");
}

// Scheme-less host such as nature.com or news.bbc.co.uk/health. The last
// label must be 2-6 lowercase letters so "e.g." and "end.The" don't match.
std::size_t scan_bare_domain(std::string_view text, std::size_t i) {
  const auto label_end = [&](std::size_t k) {
    while (k < text.size() && (is_ascii_alpha(text[k]) || is_ascii_digit(text[k]) || text[k] == '-')) ++k;
    return k;
  };
  std::size_t j = label_end(i);
  if (j == i) return i;
  std::size_t labels = 1;
  bool tld_ok = false;
  while (j + 1 < text.size() && text[j] == '.') {
    const std::size_t k = label_end(j + 1);
    if (k == j + 1) break;
    const auto label = text.substr(j + 1, k - j - 1);
    tld_ok = label.size() >= 2 && label.size() <= 6 &&
             std::all_of(label.begin(), label.end(), [](char ch) { return ch >= 'a' && ch <= 'z'; });
    j = k;
    ++labels;
  }
  if (labels < 2 || !tld_ok) return i;
  if (j < text.size() && text[j] == '/') {
    while (j < text.size() && !is_ascii_space(text[j])) ++j;
    while (std::string_view(".,;:!?)\"'").find(text[j - 1]) != std::string_view::npos) --j;
  }
  return j;
}

// Scans a date-like or numeric token: 2017-03-05, 3/5/2017, 1,200.5
std::size_t scan_number(std::string_view text, std::size_t i) {
  std::size_t j = i;
  while (j < text.size() && is_ascii_digit(text[j])) ++j;
  while (j + 1 < text.size() && (text[j] == '.' || text[j] == ',' || text[j] == '/' || text[j] == '-') &&
         is_ascii_digit(text[j + 1])) {
    // Hyphens only inside ISO dates.
    if (text[j] == '-' && !(j - i == 4 || j - i == 7)) break;
    ++j;
    while (j < text.size() && is_ascii_digit(text[j])) ++j;
  }
  return j;
}

std::vector<RawToken> split_tokens(std::string_view text) {
  std::vector<RawToken> out;
  std::size_t i = 0;
  int newlines = 0;
  const auto push = [&](std::size_t b, std::size_t e) {
    out.push_back({b, e, newlines >= 2 && !out.empty()});
    newlines = 0;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (is_ascii_space(c)) {
      if (c == '\n') ++newlines;
      ++i;
      continue;
    }
    if (const auto e = scan_bare_domain(text, i); e > i && !is_ascii_digit(c)) {
      push(i, e);
      i = e;
      continue;
    }
    if (is_url_start(text, i)) {
      std::size_t j = i;
      while (j < text.size() && !is_ascii_space(text[j])) ++j;
      while (j > i && std::string_view(".,;:!?)\"'").find(text[j - 1]) != std::string_view::npos) --j;
      push(i, j);
      i = j;
      continue;
    }
    if (const auto w = multibyte_punct_at(text, i); w > 0) {
      push(i, i + w);
      i += w;
      continue;
    }
    if (is_ascii_digit(c)) {
      const std::size_t j = scan_number(text, i);
      // Digits glued to letters ("3D", "10th") form one word.
      std::size_t k = j;
      while (k < text.size() && is_ascii_alpha(text[k])) ++k;
      push(i, k);
      i = k;
      continue;
    }
    if (is_word_byte(c)) {
      std::size_t j = i;
      while (j < text.size()) {
        if (multibyte_punct_at(text, j) > 0) {
          std::size_t aw = 0;
          if (is_apostrophe_at(text, j, &aw) && j + aw < text.size() && is_word_byte(text[j + aw])) {
            j += aw;
            continue;
          }
          break;
        }
        if (is_word_byte(text[j])) {
          ++j;
          continue;
        }
        if ((text[j] == '\'' || text[j] == '-') && j + 1 < text.size() && is_word_byte(text[j + 1]) &&
            static_cast<unsigned char>(text[j + 1]) < 0x80) {
          ++j;
          continue;
        }
        break;
      }
      std::string_view word = text.substr(i, j - i);
      // Split contractions: don't -> do n't, Roe's -> Roe 's
      const auto lower = detail::to_lower(word);
      std::size_t split_at = std::string::npos;
      if (lower.size() > 3 && lower.ends_with("n't")) {
        split_at = word.size() - 3;
      } else if (lower.size() > 5 && lower.ends_with("n\xE2\x80\x99t")) {
        split_at = word.size() - 5;
      } else if (lower.size() > 2 && lower.ends_with("'s")) {
        split_at = word.size() - 2;
      } else if (lower.size() > 4 && lower.ends_with("\xE2\x80\x99s")) {
        split_at = word.size() - 4;
      }
      if (split_at != std::string::npos) {
        push(i, i + split_at);
        push(i + split_at, j);
        i = j;
        continue;
      }
      // Abbreviations and single-letter initials keep their period.
      if (j < text.size() && text[j] == '.' &&
          (abbreviations().contains(lower) || (word.size() == 1 && is_ascii_upper(word[0])))) {
        ++j;
      }
      push(i, j);
      i = j;
      continue;
    }
    push(i, i + 1);
    ++i;
  }
  return out;
}

bool is_terminator(std::string_view s) { return s == "." || s == "!" || s == "?" || s == "\xE2\x80\xA6"; }

bool is_closer(std::string_view s) {
  return s == "\"" || s == "'" || s == ")" || s == "]" || s == "\xE2\x80\x9D" || s == "\xE2\x80\x99";
}

bool is_punct_surface(std::string_view s) {
  if (s.empty()) return true;
  for (auto p : kMultibytePunct) {
    if (s == p) return true;
  }
  for (char ch : s) {
    if (is_word_byte(ch)) return false;
  }
  return true;
}

bool is_capitalized(std::string_view s) { return !s.empty() && is_ascii_upper(s.front()); }

std::optional<PosTag> suffix_tag(std::string_view w) {
  const auto ends = [&](std::string_view suf, std::size_t min_len) { return w.size() >= min_len && w.ends_with(suf); };
  if (ends("ing", 5) || ends("ed", 4)) return PosTag::Verb;
  if (ends("ly", 4)) return PosTag::Adv;
  for (auto suf : {"tion", "sion", "ment", "ness", "ity", "ism", "ance", "ence", "ship", "ist", "ogy"}) {
    if (ends(suf, std::string_view(suf).size() + 2)) return PosTag::Noun;
  }
  for (auto suf : {"ous", "ful", "ive", "able", "ible", "less", "ish", "ical", "ic", "al"}) {
    if (ends(suf, std::string_view(suf).size() + 3)) return PosTag::Adj;
  }
  return std::nullopt;
}

std::optional<PosTag> lexicon_tag(const std::string& lower) {
  const auto& lex = pos_lexicon();
  if (auto it = lex.find(lower); it != lex.end()) return it->second;
  // Plural / third-person forms.
  if (lower.size() > 4 && lower.ends_with("ies")) {
    if (auto it = lex.find(lower.substr(0, lower.size() - 3) + "y"); it != lex.end()) return it->second;
  }
  if (lower.size() > 3 && lower.ends_with("es")) {
    if (auto it = lex.find(lower.substr(0, lower.size() - 2)); it != lex.end()) return it->second;
  }
  if (lower.size() > 2 && lower.ends_with('s')) {
    if (auto it = lex.find(lower.substr(0, lower.size() - 1)); it != lex.end()) return it->second;
  }
  return std::nullopt;
}

PosTag tag_token(const Token& tok, bool sentence_initial) {
  if (is_punct_surface(tok.surface)) return PosTag::Punct;
  if (is_number(tok)) return PosTag::Num;
  if (is_url(tok)) return PosTag::Other;
  if (auto t = lexicon_tag(tok.lower)) return *t;
  if (is_capitalized(tok.surface) && !sentence_initial) return PosTag::Propn;
  if (auto t = suffix_tag(tok.lower)) return *t;
  if (is_capitalized(tok.surface)) return PosTag::Propn;
  return PosTag::Other;
}

}  // namespace

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Verb: return "VERB";
    case PosTag::Adj: return "ADJ";
    case PosTag::Adv: return "ADV";
    case PosTag::Pron: return "PRON";
    case PosTag::Det: return "DET";
    case PosTag::Adp: return "ADP";
    case PosTag::Num: return "NUM";
    case PosTag::Propn: return "PROPN";
    case PosTag::Punct: return "PUNCT";
    case PosTag::Other: return "OTHER";
  }
  return "OTHER";
}

bool is_word(const Token& token) {
  if (is_url(token)) return false;
  return std::any_of(token.surface.begin(), token.surface.end(),
                     [](char c) { return is_ascii_alpha(c) || static_cast<unsigned char>(c) >= 0x80; }) &&
         !is_punct_surface(token.surface);
}

bool is_url(const Token& token) {
  return detail::starts_with_ci(token.surface, "http://") || detail::starts_with_ci(token.surface, "https://") ||
         detail::starts_with_ci(token.surface, "www.") ||
         (!token.surface.empty() && scan_bare_domain(token.surface, 0) == token.surface.size());
}

bool is_number(const Token& token) {
  if (token.surface.empty() || !is_ascii_digit(token.surface.front())) return false;
  return std::all_of(token.surface.begin(), token.surface.end(), [](char c) {
    return is_ascii_digit(c) || c == '.' || c == ',' || c == '/' || c == '-';
  });
}

std::string_view TokenizedText::source(Range token_range) const {
  if (token_range.empty()) return {};
  const auto b = tokens.at(token_range.begin).begin;
  const auto e = tokens.at(token_range.end - 1).end;
  return std::string_view(text).substr(b, e - b);
}

Range TokenizedText::paragraph_tokens(std::size_t paragraph) const {
  const auto& p = paragraphs.at(paragraph);
  if (p.empty()) return {};
  return {sentences.at(p.begin).begin, sentences.at(p.end - 1).end};
}

TokenizedText analyze(std::string_view text) {
  TokenizedText out;
  out.text = std::string(text);
  const auto raw = split_tokens(out.text);
  out.tokens.reserve(raw.size());
  std::vector<bool> para_break;
  para_break.reserve(raw.size());
  for (const auto& r : raw) {
    Token tok;
    tok.surface = out.text.substr(r.begin, r.end - r.begin);
    tok.lower = detail::to_lower(tok.surface);
    tok.begin = r.begin;
    tok.end = r.end;
    out.tokens.push_back(std::move(tok));
    para_break.push_back(r.paragraph_break_before);
  }

  // Sentences: end after a run of terminators plus closing quotes/brackets,
  // and always at a paragraph break.
  std::vector<bool> sentence_starts_paragraph;
  std::size_t start = 0;
  const std::size_t n = out.tokens.size();
  const auto close_sentence = [&](std::size_t end) {
    if (end > start) {
      sentence_starts_paragraph.push_back(out.sentences.empty() || para_break[start]);
      out.sentences.push_back({start, end});
      start = end;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (i > start && para_break[i]) close_sentence(i);
    if (!is_terminator(out.tokens[i].surface)) continue;
    std::size_t j = i + 1;
    while (j < n && !para_break[j] && (is_terminator(out.tokens[j].surface) || is_closer(out.tokens[j].surface))) ++j;
    close_sentence(j);
    i = j - 1;
  }
  close_sentence(n);

  for (std::size_t s = 0; s < out.sentences.size(); ++s) {
    if (sentence_starts_paragraph[s] && s > 0) out.paragraphs.back().end = s;
    if (sentence_starts_paragraph[s]) out.paragraphs.push_back({s, s + 1});
  }
  if (!out.paragraphs.empty()) out.paragraphs.back().end = out.sentences.size();

  for (const auto& sent : out.sentences) {
    bool initial = true;
    for (std::size_t i = sent.begin; i < sent.end; ++i) {
      auto& tok = out.tokens[i];
      tok.pos = tag_token(tok, initial);
      // Still sentence-initial after leading quotes or brackets.
      if (tok.pos != PosTag::Punct) initial = false;
    }
  }
  return out;
}

TokenizedText analyze_paragraphs(std::span<const std::string> paragraphs) {
  std::string joined;
  for (const auto& p : paragraphs) {
    if (!joined.empty()) joined += "\n\n";
    joined += p;
  }
  return analyze(joined);
}

// --- readability --------------------------------------------------------------

int count_syllables(std::string_view word) {
  const auto lower = detail::to_lower(word);
  const auto is_vowel = [](char c) { return std::string_view("aeiouy").find(c) != std::string_view::npos; };
  int groups = 0;
  bool in_group = false;
  for (char c : lower) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  // Silent trailing e ("make"), but not "-le" ("table").
  if (groups > 1 && lower.size() > 2 && lower.back() == 'e' && !is_vowel(lower[lower.size() - 2]) &&
      !(lower[lower.size() - 2] == 'l' && !is_vowel(lower[lower.size() - 3]))) {
    --groups;
  }
  return std::max(groups, 1);
}

double flesch_reading_ease(const TokenizedText& text) {
  std::size_t words = 0;
  std::size_t syllables = 0;
  for (const auto& tok : text.tokens) {
    if (!is_word(tok)) continue;
    ++words;
    syllables += static_cast<std::size_t>(count_syllables(tok.surface));
  }
  if (words == 0 || text.sentences.empty()) throw PreconditionError("flesch_reading_ease: text has no words");
  const double wps = static_cast<double>(words) / static_cast<double>(text.sentences.size());
  const double spw = static_cast<double>(syllables) / static_cast<double>(words);
  return 206.835 - 1.015 * wps - 84.6 * spw;
}

// --- sentiment ----------------------------------------------------------------

SentimentLexicon::SentimentLexicon(std::unordered_set<std::string> positive, std::unordered_set<std::string> negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {}

const SentimentLexicon& SentimentLexicon::bundled() {
  static const SentimentLexicon lexicon(detail::bundled_word_set("positive_words.txt"),
                                        detail::bundled_word_set("negative_words.txt"));
  return lexicon;
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& positive, const std::filesystem::path& negative) {
  const auto read_set = [](const std::filesystem::path& p) {
    std::unordered_set<std::string> words;
    for (auto& line : detail::content_lines(detail::read_file(p))) words.insert(detail::to_lower(line));
    return words;
  };
  return SentimentLexicon(read_set(positive), read_set(negative));
}

bool SentimentLexicon::is_positive(std::string_view word) const { return positive_.contains(std::string(word)); }
bool SentimentLexicon::is_negative(std::string_view word) const { return negative_.contains(std::string(word)); }

SentimentCounts sentiment_counts(const TokenizedText& text, const SentimentLexicon& lexicon) {
  SentimentCounts counts;
  for (const auto& tok : text.tokens) {
    if (tok.pos == PosTag::Punct) continue;
    ++counts.tokens;
    if (lexicon.is_positive(tok.lower)) ++counts.positive;
    if (lexicon.is_negative(tok.lower)) ++counts.negative;
  }
  return counts;
}

SentimentScore sentiment(const TokenizedText& text, const SentimentLexicon& lexicon) {
  const auto c = sentiment_counts(text, lexicon);
  SentimentScore score;
  const auto hits = static_cast<double>(c.positive + c.negative);
  if (hits > 0) {
    score.polarity = (static_cast<double>(c.positive) - static_cast<double>(c.negative)) / hits;
    score.subjectivity = std::min(1.0, hits / static_cast<double>(c.tokens));
  }
  return score;
}

const std::unordered_set<std::string>& negation_words() {
  static const auto set = detail::bundled_word_set("negations.txt");
  return set;
}

const std::unordered_set<std::string>& stopwords() {
  static const auto set = detail::bundled_word_set("stopwords.txt");
  return set;
}

}  // namespace textkit
}  // namespace newsgauge
