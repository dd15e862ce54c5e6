#include <algorithm>
#include <array>

#include "newsgauge/textkit.hpp"
#include "strings.hpp"

namespace newsgauge::textkit {
namespace {

using detail::is_ascii_digit;
using detail::is_ascii_upper;

const std::unordered_set<std::string>& given_names() {
  static const auto set = detail::bundled_word_set("given_names.txt");
  return set;
}

const std::unordered_set<std::string>& org_keywords() {
  static const auto set = detail::bundled_word_set("org_keywords.txt");
  return set;
}

const std::unordered_set<std::string>& acronym_stoplist() {
  static const auto set = detail::bundled_word_set("acronym_stoplist.txt");
  return set;
}

constexpr std::array<std::string_view, 7> kHonorifics = {"dr.", "dr", "prof.", "prof", "mr.", "ms.", "mrs."};
constexpr std::array<std::string_view, 3> kOrgConnectives = {"of", "for", "on"};
constexpr std::array<std::string_view, 24> kMonths = {
    "january", "february", "march", "april", "may", "june", "july", "august", "september", "october", "november",
    "december", "jan.", "feb.", "mar.", "apr.", "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec."};

template <std::size_t N>
bool one_of(const std::array<std::string_view, N>& set, std::string_view s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

bool is_cap_word(const Token& t) {
  return !t.surface.empty() && is_ascii_upper(t.surface.front()) && is_word(t) &&
         t.surface.find('.') == std::string::npos;
}

bool all_caps(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return is_ascii_upper(c); });
}

// Sentence-initial capitalized words that cannot start a name ("The", "Yesterday").
bool is_function_word(const Token& t) {
  switch (t.pos) {
    case PosTag::Det:
    case PosTag::Adv:
    case PosTag::Pron:
    case PosTag::Adp:
    case PosTag::Verb:
    case PosTag::Other: return true;
    default: return false;
  }
}

bool is_honorific(const Token& t) { return one_of(kHonorifics, t.lower); }

bool is_org_keyword(const Token& t) { return is_cap_word(t) && org_keywords().contains(t.lower); }

bool is_year(const Token& t) {
  if (t.surface.size() != 4 || !std::all_of(t.surface.begin(), t.surface.end(), is_ascii_digit)) return false;
  const int y = std::stoi(t.surface);
  return y >= 1900 && y <= 2099;
}

bool is_day(const Token& t) {
  if (t.surface.empty() || t.surface.size() > 2 || !std::all_of(t.surface.begin(), t.surface.end(), is_ascii_digit)) {
    return false;
  }
  const int d = std::stoi(t.surface);
  return d >= 1 && d <= 31;
}

bool is_iso_or_numeric_date(const Token& t) {
  const auto& s = t.surface;
  const auto digits_at = [&](std::size_t b, std::size_t n) {
    return b + n <= s.size() && std::all_of(s.begin() + static_cast<long>(b), s.begin() + static_cast<long>(b + n), is_ascii_digit);
  };
  if (s.size() == 10 && s[4] == '-' && s[7] == '-' && digits_at(0, 4) && digits_at(5, 2) && digits_at(8, 2)) return true;
  const auto parts = detail::split(s, '/');
  if (parts.size() == 3) {
    return std::all_of(parts.begin(), parts.end(), [](std::string_view p) {
             return !p.empty() && p.size() <= 4 && std::all_of(p.begin(), p.end(), is_ascii_digit);
           }) &&
           parts[0].size() <= 2 && parts[1].size() <= 2;
  }
  return false;
}

class EntityFinder {
 public:
  explicit EntityFinder(const TokenizedText& text) : text_(text), taken_(text.tokens.size(), false) {}

  std::vector<EntityMention> run() {
    for (const auto& sent : text_.sentences) {
      find_organizations(sent);
      find_persons(sent);
      find_acronyms(sent);
      find_dates(sent);
      find_quantities(sent);
    }
    std::sort(mentions_.begin(), mentions_.end(), [](const EntityMention& a, const EntityMention& b) {
      return a.tokens.begin != b.tokens.begin ? a.tokens.begin < b.tokens.begin : a.kind < b.kind;
    });
    return std::move(mentions_);
  }

 private:
  const Token& tok(std::size_t i) const { return text_.tokens[i]; }

  void add(EntityKind kind, Range r, bool claim = true) {
    mentions_.push_back({kind, r, std::string(text_.source(r))});
    if (claim) {
      for (std::size_t i = r.begin; i < r.end; ++i) taken_[i] = true;
    }
  }

  void find_organizations(Range sent) {
    for (std::size_t i = sent.begin; i < sent.end; ++i) {
      if (taken_[i] || !is_org_keyword(tok(i))) continue;
      std::size_t b = i;
      while (b > sent.begin && !taken_[b - 1] && is_cap_word(tok(b - 1)) && !is_honorific(tok(b - 1)) &&
             !(b - 1 == sent.begin && is_function_word(tok(b - 1))) && !all_caps(tok(b - 1).surface)) {
        --b;
      }
      std::size_t e = i + 1;
      while (e < sent.end) {
        if (is_cap_word(tok(e)) && !all_caps(tok(e).surface)) {
          ++e;
        } else if (e + 1 < sent.end && one_of(kOrgConnectives, tok(e).lower) && is_cap_word(tok(e + 1))) {
          e += 2;
        } else {
          break;
        }
      }
      add(EntityKind::Organization, {b, e});
      i = e - 1;
    }
  }

  // Run of capitalized, non-keyword tokens starting at i.
  std::size_t name_run_end(std::size_t i, std::size_t limit, std::size_t max_len) const {
    std::size_t e = i;
    while (e < limit && e - i < max_len && !taken_[e] && is_cap_word(tok(e)) && !is_org_keyword(tok(e)) &&
           !all_caps(tok(e).surface)) {
      ++e;
    }
    return e;
  }

  void find_persons(Range sent) {
    for (std::size_t i = sent.begin; i < sent.end; ++i) {
      if (taken_[i]) continue;
      if (is_honorific(tok(i)) && i + 1 < sent.end) {
        const std::size_t e = name_run_end(i + 1, sent.end, 3);
        if (e > i + 1) {
          add(EntityKind::Person, {i + 1, e});
          i = e - 1;
        }
        continue;
      }
      if (is_cap_word(tok(i)) && given_names().contains(tok(i).lower)) {
        const std::size_t e = name_run_end(i, sent.end, 3);
        if (e >= i + 2) {
          add(EntityKind::Person, {i, e});
          i = e - 1;
        }
      }
    }
  }

  void find_acronyms(Range sent) {
    for (std::size_t i = sent.begin; i < sent.end; ++i) {
      if (!taken_[i] && is_org_acronym(tok(i).surface)) add(EntityKind::Organization, {i, i + 1});
    }
  }

  void find_dates(Range sent) {
    for (std::size_t i = sent.begin; i < sent.end; ++i) {
      if (taken_[i]) continue;
      const Token& t = tok(i);
      if (is_iso_or_numeric_date(t)) {
        add(EntityKind::Date, {i, i + 1});
        continue;
      }
      if (is_cap_word(t) || (t.surface.size() > 1 && is_ascii_upper(t.surface[0]) && t.surface.back() == '.')) {
        if (!one_of(kMonths, t.lower)) continue;
        // "May" alone is too ambiguous; require a day or year next to it.
        std::size_t b = i;
        std::size_t e = i + 1;
        if (b > sent.begin && is_day(tok(b - 1)) && !taken_[b - 1]) --b;
        if (e < sent.end && is_day(tok(e)) && b == i) ++e;
        if (e < sent.end && tok(e).surface == "," && e + 1 < sent.end && is_year(tok(e + 1))) {
          e += 2;
        } else if (e < sent.end && is_year(tok(e))) {
          ++e;
        }
        if (e - b >= 2) {
          add(EntityKind::Date, {b, e});
          i = e - 1;
        }
        continue;
      }
      if (is_year(t)) {
        const bool percent_follows =
            i + 1 < sent.end && (tok(i + 1).surface == "%" || tok(i + 1).lower == "percent");
        if (!percent_follows) add(EntityKind::Date, {i, i + 1});
      }
    }
  }

  void find_quantities(Range sent) {
    for (std::size_t i = sent.begin; i < sent.end; ++i) {
      if (taken_[i] || !is_number(tok(i))) continue;
      add(EntityKind::Number, {i, i + 1}, false);
      if (i + 1 < sent.end && (tok(i + 1).surface == "%" || tok(i + 1).lower == "percent")) {
        add(EntityKind::Percentage, {i, i + 2}, false);
      } else if (i + 2 < sent.end && tok(i + 1).lower == "per" && tok(i + 2).lower == "cent") {
        add(EntityKind::Percentage, {i, i + 3}, false);
      }
    }
  }

  const TokenizedText& text_;
  std::vector<bool> taken_;
  std::vector<EntityMention> mentions_;
};

}  // namespace

bool is_org_acronym(std::string_view surface) {
  if (surface.size() < 2 || surface.size() > 6 || !all_caps(surface)) return false;
  return !acronym_stoplist().contains(detail::to_lower(surface));
}

std::string name_initials(std::string_view name) {
  std::string initials;
  for (auto word : detail::split(name, ' ')) {
    word = detail::trim(word);
    if (word.empty() || !is_ascii_upper(word.front())) continue;
    initials += word.front();
  }
  return initials;
}

std::vector<EntityMention> find_entities(const TokenizedText& text) { return EntityFinder(text).run(); }

EntitySet collect_entities(std::span<const EntityMention> mentions, Range token_range) {
  EntitySet set;
  for (const auto& m : mentions) {
    if (m.tokens.begin < token_range.begin || m.tokens.end > token_range.end) continue;
    switch (m.kind) {
      case EntityKind::Person: set.persons.insert(m.surface); break;
      case EntityKind::Organization: set.organizations.insert(m.surface); break;
      case EntityKind::Date: set.dates.insert(m.surface); break;
      case EntityKind::Number: set.numbers.insert(m.surface); break;
      case EntityKind::Percentage: set.percentages.insert(m.surface); break;
    }
  }
  return set;
}

EntitySet extract_entities(const TokenizedText& text) {
  const auto mentions = find_entities(text);
  return collect_entities(mentions, {0, text.tokens.size()});
}

}  // namespace newsgauge::textkit
