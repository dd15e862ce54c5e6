#include <algorithm>
#include <regex>

#include "newsgauge/error.hpp"
#include "newsgauge/quotes.hpp"
#include "strings.hpp"

namespace newsgauge::quotes {
namespace {

using textkit::EntityKind;
using textkit::EntityMention;
using textkit::PosTag;
using textkit::Range;
using textkit::Token;

const std::set<std::string> kSeedReportingVerbs = {"say",     "claim",  "prove",   "analyze", "find",
                                                   "show",    "report", "suggest", "argue",   "conclude"};
const std::set<std::string> kSeedStudyNouns = {"study", "survey", "analysis", "research", "report", "trial"};
const std::set<std::string> kSeedScientistNouns = {"researcher", "scientist", "analyst", "expert", "author"};
const std::set<std::string> kPronouns = {"he", "she", "they"};
const std::set<std::string> kDeterminerLike = {"the", "a",     "an",   "this", "that", "these", "those", "their",
                                               "his", "her",   "its",  "our",  "new",  "recent", "latest", "earlier"};
const std::set<std::string> kScienceOrgWords = {"university", "institute", "laboratory", "journal"};

const std::unordered_map<std::string, std::string>& irregular_forms() {
  static const auto table = [] {
    std::unordered_map<std::string, std::string> m;
    for (const auto& line : detail::content_lines(detail::bundled("irregular_forms.tsv"))) {
      const auto f = detail::split(line, '\t');
      if (f.size() == 2) m.emplace(detail::to_lower(f[0]), detail::to_lower(f[1]));
    }
    return m;
  }();
  return table;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() + 1 && s.substr(s.size() - suffix.size()) == suffix;
}

// Base-form guesses for an inflected lowercase word, the word itself first.
std::vector<std::string> lemma_candidates(const std::string& w) {
  std::vector<std::string> out{w};
  if (auto it = irregular_forms().find(w); it != irregular_forms().end()) out.push_back(it->second);
  const auto cut = [&](std::size_t n) { return w.substr(0, w.size() - n); };
  if (ends_with(w, "ies") || ends_with(w, "ied")) out.push_back(cut(3) + "y");
  if (ends_with(w, "es")) out.push_back(cut(2));
  if (ends_with(w, "s") && !ends_with(w, "ss")) out.push_back(cut(1));
  if (ends_with(w, "ed")) {
    out.push_back(cut(2));
    out.push_back(cut(1));
  }
  if (ends_with(w, "ing")) {
    out.push_back(cut(3));
    out.push_back(cut(3) + "e");
  }
  return out;
}

bool in_class(const std::set<std::string>& words, const std::string& lower) {
  for (const auto& l : lemma_candidates(lower)) {
    if (words.contains(l)) return true;
  }
  return false;
}

bool is_capitalized(const Token& t) { return !t.surface.empty() && detail::is_ascii_upper(t.surface.front()); }

bool is_open_quote(std::string_view s) { return s == "\xE2\x80\x9C"; }
bool is_close_quote(std::string_view s) { return s == "\xE2\x80\x9D"; }
bool is_straight_quote(std::string_view s) { return s == "\""; }

// Tokens inside a quoted span (marks included). Straight quotes toggle;
// spans never cross a paragraph boundary.
std::vector<bool> quoted_tokens(const textkit::TokenizedText& text) {
  std::vector<bool> quoted(text.tokens.size(), false);
  for (std::size_t p = 0; p < text.paragraphs.size(); ++p) {
    const Range r = text.paragraph_tokens(p);
    bool open = false;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      const auto& s = text.tokens[i].surface;
      if (is_straight_quote(s)) {
        quoted[i] = true;
        open = !open;
      } else if (is_open_quote(s)) {
        quoted[i] = true;
        open = true;
      } else if (is_close_quote(s)) {
        quoted[i] = true;
        open = false;
      } else {
        quoted[i] = open;
      }
    }
  }
  return quoted;
}

std::vector<std::string> words_of(std::string_view name) {
  std::vector<std::string> out;
  for (auto w : detail::split(name, ' ')) {
    if (!w.empty()) out.emplace_back(w);
  }
  return out;
}

bool has_word(std::string_view name, std::string_view word) {
  const auto ws = words_of(name);
  return std::find(ws.begin(), ws.end(), word) != ws.end();
}

const EntityMention* mention_at(const std::vector<EntityMention>& mentions, std::size_t token, EntityKind kind) {
  for (const auto& m : mentions) {
    if (m.kind == kind && m.tokens.contains(token)) return &m;
  }
  return nullptr;
}

std::string escape_regex(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

std::string class_atom(char code) { return std::string("(?: ") + code + ":[^ ]*)"; }

// Pattern syntax -> ECMAScript regex over the sentence encoding
// " C:word C:word ...".
std::string translate(const Pattern& p) {
  static const std::map<std::string, char> kClasses = {
      {"QUOTE_MARK_SPAN", 'Q'}, {"REPORTING_VERB", 'V'}, {"STUDY_NOUN", 'S'}, {"SCIENTIST_NOUN", 'N'},
      {"PERSON", 'P'},          {"ORG", 'O'},            {"PRONOUN", 'R'},    {"OTHER", 'X'}};
  const std::string& src = p.source;
  std::string out;
  for (std::size_t i = 0; i < src.size();) {
    const char c = src[i];
    if (detail::is_ascii_space(c)) {
      ++i;
    } else if (detail::is_ascii_alpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (detail::is_ascii_alpha(src[j]) || src[j] == '_')) ++j;
      const std::string ident = src.substr(i, j - i);
      if (ident == "ANY") {
        out += "(?: [A-Z]:[^ ]*)";
      } else if (auto it = kClasses.find(ident); it != kClasses.end()) {
        out += class_atom(it->second);
      } else {
        throw DataError("pattern " + p.name + ": unknown word class '" + ident + "'");
      }
      i = j;
    } else if (c == '\'') {
      const auto close = src.find('\'', i + 1);
      if (close == std::string::npos) throw DataError("pattern " + p.name + ": unterminated literal");
      out += "(?: [A-Z]:" + escape_regex(detail::to_lower(src.substr(i + 1, close - i - 1))) + ")";
      i = close + 1;
    } else if (c == '(') {
      out += "(?:";
      ++i;
    } else if (c == ')' || c == '|' || c == '?' || c == '*' || c == '+') {
      out += c;
      ++i;
    } else if (c == '{') {
      const auto close = src.find('}', i);
      if (close == std::string::npos) throw DataError("pattern " + p.name + ": unterminated quantifier");
      const auto body = src.substr(i + 1, close - i - 1);
      if (body.empty() || !std::all_of(body.begin(), body.end(), [](char b) { return detail::is_ascii_digit(b) || b == ','; })) {
        throw DataError("pattern " + p.name + ": bad quantifier {" + body + "}");
      }
      out += src.substr(i, close - i + 1);
      i = close + 1;
    } else {
      throw DataError("pattern " + p.name + ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

std::vector<Pattern> parse_patterns(std::string_view blob, const std::string& origin) {
  std::vector<Pattern> out;
  for (const auto& line : detail::content_lines(blob)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError(origin + ": pattern line without a tab: " + line);
    out.push_back({std::string(detail::trim(std::string_view(line).substr(0, tab))),
                   std::string(detail::trim(std::string_view(line).substr(tab + 1)))});
  }
  return out;
}

// Sentence encoding; runs of one quoted span, person or organization collapse
// into a single symbol.
std::string encode(const ArticleText& article, const std::vector<WordClass>& classes, Range sentence) {
  std::string code;
  char prev = 0;
  for (std::size_t i = sentence.begin; i < sentence.end; ++i) {
    const char c = static_cast<char>(classes[i]);
    if (c == prev && (c == 'Q' || c == 'P' || c == 'O')) continue;
    prev = c;
    code += ' ';
    code += c;
    code += ':';
    code += c == 'Q' ? std::string("\"") : article.text.tokens[i].lower;
  }
  return code;
}

struct Tally {
  std::size_t count = 0;
  std::size_t first = 0;
};

template <typename Map>
std::optional<std::string> best_of(const Map& tallies) {
  const typename Map::value_type* best = nullptr;
  for (const auto& kv : tallies) {
    if (best == nullptr || kv.second.count > best->second.count ||
        (kv.second.count == best->second.count && kv.second.first < best->second.first)) {
      best = &kv;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->first;
}

}  // namespace

// --- lexicon ------------------------------------------------------------------

WordClassLexicon WordClassLexicon::seeds() {
  WordClassLexicon l;
  l.reporting_verbs = l.seed_reporting_verbs = kSeedReportingVerbs;
  l.study_nouns = l.seed_study_nouns = kSeedStudyNouns;
  l.scientist_nouns = l.seed_scientist_nouns = kSeedScientistNouns;
  return l;
}

std::set<std::string> expand_lexicon(const std::set<std::string>& seeds, const textkit::EmbeddingTable& table,
                                     std::size_t k, std::vector<ExpansionEntry>* review) {
  std::set<std::string> out = seeds;
  if (k == 0) return out;
  for (const auto& seed : seeds) {
    const auto* sv = table.find(seed);
    if (sv == nullptr) continue;
    std::vector<std::pair<double, const std::string*>> scored;
    scored.reserve(table.size());
    for (const auto& w : table.words()) {
      if (w == detail::to_lower(seed)) continue;
      scored.emplace_back(textkit::cosine(*sv, *table.find(w)), &w);
    }
    const auto better = [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : *a.second < *b.second;
    };
    const std::size_t take = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(), better);
    for (std::size_t i = 0; i < take; ++i) {
      out.insert(*scored[i].second);
      if (review != nullptr) review->push_back({*scored[i].second, seed, scored[i].first});
    }
  }
  return out;
}

WordClassLexicon expand(const WordClassLexicon& seeds, const textkit::EmbeddingTable& table, std::size_t k,
                        std::vector<ExpansionEntry>* review) {
  WordClassLexicon l = seeds;
  l.reporting_verbs = expand_lexicon(seeds.reporting_verbs, table, k, review);
  l.study_nouns = expand_lexicon(seeds.study_nouns, table, k, review);
  l.scientist_nouns = expand_lexicon(seeds.scientist_nouns, table, k, review);
  return l;
}

void write_review(const std::filesystem::path& path, std::span<const ExpansionEntry> entries) {
  std::string out = "word\tseed\tcosine\n";
  char buf[32];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%.6f", e.cosine);
    out += e.word + '\t' + e.seed + '\t' + buf + '\n';
  }
  detail::write_file(path, out);
}

// --- patterns -----------------------------------------------------------------

const std::vector<Pattern>& bundled_patterns() {
  static const auto patterns = parse_patterns(detail::bundled("quote_patterns.txt"), "quote_patterns.txt");
  return patterns;
}

std::vector<Pattern> load_patterns(const std::filesystem::path& path) {
  return parse_patterns(detail::read_file(path), path.string());
}

struct QuoteExtractor::Compiled {
  std::regex regex;
};

QuoteExtractor::QuoteExtractor(WordClassLexicon lexicon, std::vector<Pattern> patterns)
    : lexicon_(std::move(lexicon)), patterns_(std::move(patterns)) {
  for (const auto& p : patterns_) {
    try {
      compiled_.push_back(std::make_shared<const Compiled>(Compiled{std::regex(translate(p), std::regex::ECMAScript)}));
    } catch (const std::regex_error& e) {
      throw DataError("pattern " + p.name + ": " + e.what());
    }
  }
}

// --- articles and names ---------------------------------------------------------

ArticleText prepare(const corpus::Article& article) {
  ArticleText a;
  a.id = article.id;
  a.text = textkit::analyze_paragraphs(article.paragraphs);
  a.mentions = textkit::find_entities(a.text);
  return a;
}

ArticleText prepare(std::string id, std::string_view body) {
  ArticleText a;
  a.id = std::move(id);
  a.text = textkit::analyze(body);
  a.mentions = textkit::find_entities(a.text);
  return a;
}

NameIndex NameIndex::build(std::span<const ArticleText> articles) {
  NameIndex ix;
  std::size_t seq = 0;
  for (const auto& a : articles) {
    for (const auto& m : a.mentions) {
      if (m.kind != EntityKind::Person) continue;
      const auto words = words_of(m.surface);
      for (const auto& w : words) ix.name_parts_.insert(w);
      if (words.size() < 2) continue;
      auto [it, inserted] = ix.full_names_.try_emplace(m.surface, Tally{0, seq});
      ++it->second.count;
      if (inserted) ++seq;
    }
    for (std::size_t s = 0; s < a.text.sentences.size(); ++s) {
      const Range r = a.text.sentences[s];
      std::vector<std::string> acronyms;
      std::vector<std::string> full;
      for (const auto& m : a.mentions) {
        if (m.kind != EntityKind::Organization || m.tokens.begin < r.begin || m.tokens.end > r.end) continue;
        if (textkit::is_org_acronym(m.surface)) {
          acronyms.push_back(m.surface);
        } else if (words_of(m.surface).size() >= 2) {
          full.push_back(m.surface);
        }
      }
      for (const auto& acr : acronyms) {
        for (const auto& f : full) {
          if (textkit::name_initials(f) != acr) continue;
          auto [it, inserted] = ix.acronyms_[acr].try_emplace(f, Tally{0, seq});
          ++it->second.count;
          if (inserted) ++seq;
        }
      }
    }
  }
  return ix;
}

std::optional<std::string> NameIndex::full_name(std::string_view part) const {
  std::map<std::string, Tally> matches;
  for (const auto& [name, tally] : full_names_) {
    if (has_word(name, part)) matches.emplace(name, Tally{tally.count, tally.first});
  }
  return best_of(matches);
}

std::optional<std::string> NameIndex::expand_acronym(std::string_view acronym) const {
  const auto it = acronyms_.find(std::string(acronym));
  if (it == acronyms_.end()) return std::nullopt;
  std::map<std::string, Tally> matches;
  for (const auto& [name, tally] : it->second) matches.emplace(name, Tally{tally.count, tally.first});
  return best_of(matches);
}

// --- classification -------------------------------------------------------------

std::vector<WordClass> classify(const ArticleText& article, const WordClassLexicon& lexicon, const NameIndex* names) {
  const auto& tokens = article.text.tokens;
  std::vector<WordClass> classes(tokens.size(), WordClass::Other);
  const auto quoted = quoted_tokens(article.text);
  std::set<std::string> article_name_parts;
  for (const auto& m : article.mentions) {
    if (m.kind != EntityKind::Person) continue;
    for (const auto& w : words_of(m.surface)) article_name_parts.insert(w);
  }
  for (const auto& sentence : article.text.sentences) {
    for (std::size_t i = sentence.begin; i < sentence.end; ++i) {
      const Token& t = tokens[i];
      if (quoted[i]) {
        classes[i] = WordClass::QuoteMarkSpan;
        continue;
      }
      if (mention_at(article.mentions, i, EntityKind::Person) != nullptr ||
          (is_capitalized(t) && textkit::is_word(t) &&
           (article_name_parts.contains(t.surface) || (names != nullptr && names->is_name_part(t.surface))))) {
        classes[i] = WordClass::Person;
        continue;
      }
      if (mention_at(article.mentions, i, EntityKind::Organization) != nullptr) {
        classes[i] = WordClass::Org;
        continue;
      }
      if (kPronouns.contains(t.lower)) {
        classes[i] = WordClass::Pronoun;
        continue;
      }
      if (!textkit::is_word(t)) continue;
      if (in_class(lexicon.scientist_nouns, t.lower)) {
        classes[i] = WordClass::ScientistNoun;
        continue;
      }
      const bool study = in_class(lexicon.study_nouns, t.lower);
      const bool verb = in_class(lexicon.reporting_verbs, t.lower);
      const bool after_determiner =
          i > sentence.begin && (kDeterminerLike.contains(tokens[i - 1].lower) || tokens[i - 1].pos == PosTag::Det ||
                                 tokens[i - 1].pos == PosTag::Adj);
      if (study && (!verb || after_determiner)) {
        classes[i] = WordClass::StudyNoun;
      } else if (verb && !after_determiner) {
        classes[i] = WordClass::ReportingVerb;
      }
    }
  }
  return classes;
}

std::vector<std::size_t> baseline_quote_sentences(const ArticleText& article) {
  const auto quoted = quoted_tokens(article.text);
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < article.text.sentences.size(); ++s) {
    const Range r = article.text.sentences[s];
    for (std::size_t i = r.begin; i < r.end; ++i) {
      const auto& surface = article.text.tokens[i].surface;
      const bool mark = is_straight_quote(surface) || is_open_quote(surface) || is_close_quote(surface);
      if (quoted[i] && !mark) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

std::vector<Candidate> QuoteExtractor::extract(const ArticleText& article, const NameIndex* names) const {
  const auto classes = classify(article, lexicon_, names);
  std::vector<Candidate> out;
  for (std::size_t s = 0; s < article.text.sentences.size(); ++s) {
    const auto code = encode(article, classes, article.text.sentences[s]);
    Candidate c{s, {}};
    for (std::size_t p = 0; p < patterns_.size(); ++p) {
      if (std::regex_search(code, compiled_[p]->regex)) c.patterns.push_back(patterns_[p].name);
    }
    if (!c.patterns.empty()) out.push_back(std::move(c));
  }
  return out;
}

// --- attribution ------------------------------------------------------------------

std::string_view to_string(QuoteeKind kind) {
  switch (kind) {
    case QuoteeKind::NamedPerson:
      return "named_person";
    case QuoteeKind::Organization:
      return "organization";
    case QuoteeKind::UnnamedScientist:
      return "unnamed_scientist";
    case QuoteeKind::UnnamedStudy:
      return "unnamed_study";
  }
  return "?";
}

namespace {

class Attributor {
 public:
  Attributor(const ArticleText& article, const std::vector<WordClass>& classes, const NameIndex& names)
      : a_(article), classes_(classes), names_(names) {}

  Quote run(const Candidate& c) {
    Quote q;
    q.article_id = a_.id;
    q.sentence_index = c.sentence;
    q.text = std::string(a_.text.sentence_text(c.sentence));
    const Range r = a_.text.sentences[c.sentence];
    const auto subject = find_subject(r);
    if (!subject) {
      q.quotee_kind = QuoteeKind::UnnamedScientist;
      return q;
    }
    switch (classes_[*subject]) {
      case WordClass::Person:
        q.quotee_kind = QuoteeKind::NamedPerson;
        resolve_person(*subject, q);
        break;
      case WordClass::Org:
        q.quotee_kind = QuoteeKind::Organization;
        resolve_org(*subject, q);
        break;
      case WordClass::StudyNoun:
        q.quotee_kind = QuoteeKind::UnnamedStudy;
        break;
      case WordClass::Pronoun:
        resolve_pronoun(r.begin, q);
        break;
      default:
        q.quotee_kind = QuoteeKind::UnnamedScientist;
    }
    return q;
  }

 private:
  static bool subject_class(WordClass c) {
    return c == WordClass::Org || c == WordClass::ScientistNoun || c == WordClass::StudyNoun ||
           c == WordClass::Pronoun;
  }

  // A named person anywhere in the sentence wins (closest to the reporting
  // verb). Otherwise the head after "according to", else the leftmost
  // subject-like token before the verb, else the first one after it.
  std::optional<std::size_t> find_subject(Range r) const {
    std::optional<std::size_t> verb;
    std::optional<std::size_t> according;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      if (!verb && classes_[i] == WordClass::ReportingVerb) verb = i;
      if (!according && i + 1 < r.end && a_.text.tokens[i].lower == "according" && a_.text.tokens[i + 1].lower == "to") {
        according = i + 2;
      }
    }
    const std::size_t anchor = verb.value_or(r.begin);
    std::optional<std::size_t> person;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      if (classes_[i] != WordClass::Person) continue;
      const auto dist = [&](std::size_t x) { return x > anchor ? x - anchor : anchor - x; };
      if (!person || dist(i) < dist(*person)) person = i;
    }
    if (person) return person;
    if (according) {
      for (std::size_t i = *according; i < r.end; ++i) {
        if (subject_class(classes_[i])) return i;
      }
    }
    for (std::size_t i = r.begin; i < anchor; ++i) {
      if (subject_class(classes_[i])) return i;
    }
    for (std::size_t i = anchor; i < r.end; ++i) {
      if (subject_class(classes_[i])) return i;
    }
    return std::nullopt;
  }

  std::string full_name_for(const std::string& part, bool& resolved) const {
    std::map<std::string, Tally> in_article;
    std::size_t seq = 0;
    for (const auto& m : a_.mentions) {
      if (m.kind != EntityKind::Person || words_of(m.surface).size() < 2 || !has_word(m.surface, part)) continue;
      auto [it, inserted] = in_article.try_emplace(m.surface, Tally{0, seq++});
      ++it->second.count;
    }
    if (auto best = best_of(in_article)) return *best;
    if (auto corpus = names_.full_name(part)) return *corpus;
    resolved = false;
    return part;
  }

  void resolve_person(std::size_t token, Quote& q) const {
    std::string name;
    if (const auto* m = mention_at(a_.mentions, token, EntityKind::Person)) {
      name = m->surface;
    } else {
      name = a_.text.tokens[token].surface;
    }
    if (words_of(name).size() < 2) name = full_name_for(name, q.resolved);
    q.quotee = name;
    q.affiliation = affiliation(name);
  }

  // Organization most often mentioned in the same sentence as the person,
  // scanning from the start of the article; ties go to the earliest.
  std::optional<std::string> affiliation(const std::string& name) const {
    const auto parts = words_of(name);
    std::map<std::string, Tally> orgs;
    for (std::size_t s = 0; s < a_.text.sentences.size(); ++s) {
      const Range r = a_.text.sentences[s];
      bool mentions_person = false;
      for (std::size_t i = r.begin; i < r.end && !mentions_person; ++i) {
        mentions_person = std::find(parts.begin(), parts.end(), a_.text.tokens[i].surface) != parts.end() &&
                          is_capitalized(a_.text.tokens[i]);
      }
      if (!mentions_person) continue;
      for (const auto& m : a_.mentions) {
        if (m.kind != EntityKind::Organization || m.tokens.begin < r.begin || m.tokens.end > r.end) continue;
        auto [it, inserted] = orgs.try_emplace(m.surface, Tally{0, s});
        ++it->second.count;
      }
    }
    return best_of(orgs);
  }

  void resolve_org(std::size_t token, Quote& q) const {
    const auto* m = mention_at(a_.mentions, token, EntityKind::Organization);
    const std::string surface = m != nullptr ? m->surface : a_.text.tokens[token].surface;
    if (!textkit::is_org_acronym(surface)) {
      q.quotee = surface;
      return;
    }
    for (const auto& other : a_.mentions) {
      if (other.kind == EntityKind::Organization && words_of(other.surface).size() >= 2 &&
          textkit::name_initials(other.surface) == surface) {
        q.quotee = other.surface;
        return;
      }
    }
    if (auto expanded = names_.expand_acronym(surface)) {
      q.quotee = *expanded;
      return;
    }
    q.quotee = surface;
    q.resolved = false;
  }

  // Nearest person mentioned before the sentence; without one the pronoun
  // gives no name and the quote counts as unattributed.
  void resolve_pronoun(std::size_t sentence_begin, Quote& q) const {
    const EntityMention* last = nullptr;
    for (const auto& m : a_.mentions) {
      if (m.kind == EntityKind::Person && m.tokens.end <= sentence_begin) last = &m;
    }
    if (last == nullptr) {
      q.quotee_kind = QuoteeKind::UnnamedScientist;
      return;
    }
    q.quotee_kind = QuoteeKind::NamedPerson;
    std::string name = last->surface;
    if (words_of(name).size() < 2) name = full_name_for(name, q.resolved);
    q.quotee = name;
    q.affiliation = affiliation(name);
  }

  const ArticleText& a_;
  const std::vector<WordClass>& classes_;
  const NameIndex& names_;
};

}  // namespace

std::vector<Quote> attribute(std::span<const Candidate> candidates, const ArticleText& article,
                             const WordClassLexicon& lexicon, const NameIndex& names) {
  const auto classes = classify(article, lexicon, &names);
  Attributor attributor(article, classes, names);
  std::vector<Quote> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(attributor.run(c));
  return out;
}

std::size_t scientific_mentions(const ArticleText& article, const corpus::Allowlist& allowlist,
                                std::span<const Quote> quotes) {
  std::set<std::size_t> sentences;
  for (std::size_t s = 0; s < article.text.sentences.size(); ++s) {
    const auto lower = detail::to_lower(article.text.sentence_text(s));
    for (const auto& d : allowlist.science_domains) {
      if (corpus::contains_keyword(lower, d)) {
        sentences.insert(s);
        break;
      }
    }
  }
  for (const auto& m : article.mentions) {
    if (m.kind != EntityKind::Organization) continue;
    const auto words = words_of(detail::to_lower(m.surface));
    if (std::none_of(words.begin(), words.end(), [](const std::string& w) { return kScienceOrgWords.contains(w); })) {
      continue;
    }
    for (std::size_t s = 0; s < article.text.sentences.size(); ++s) {
      if (article.text.sentences[s].contains(m.tokens.begin)) sentences.insert(s);
    }
  }
  for (const auto& q : quotes) {
    if (q.quotee_kind == QuoteeKind::UnnamedStudy) sentences.insert(q.sentence_index);
  }
  return sentences.size();
}

QuoteStats quote_stats(std::span<const Quote> quotes, std::size_t scientific_mentions) {
  QuoteStats s;
  s.total_quotes = quotes.size();
  s.scientific_mentions = scientific_mentions;
  for (const auto& q : quotes) {
    if (q.quotee_kind == QuoteeKind::NamedPerson) ++s.person_quotes;
    if (q.quotee_kind == QuoteeKind::UnnamedScientist || q.quotee_kind == QuoteeKind::UnnamedStudy) ++s.weasel_quotes;
  }
  return s;
}

}  // namespace newsgauge::quotes
