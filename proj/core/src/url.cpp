#include <algorithm>
#include <unordered_set>

#include "newsgauge/corpus.hpp"
#include "strings.hpp"

namespace newsgauge::corpus {
namespace {

const std::unordered_set<std::string>& public_suffixes() {
  static const auto set = detail::bundled_word_set("public_suffixes.txt");
  return set;
}

bool valid_host(std::string_view host) {
  if (host.empty() || host.size() > 253 || host.find('.') == std::string_view::npos) return false;
  const auto labels = detail::split(host, '.');
  for (auto label : labels) {
    if (label.empty() || label.size() > 63 || label.front() == '-' || label.back() == '-') return false;
    for (char c : label) {
      if (!(detail::is_ascii_alpha(c) || detail::is_ascii_digit(c) || c == '-')) return false;
    }
  }
  const auto tld = labels.back();
  return tld.size() >= 2 && std::all_of(tld.begin(), tld.end(), detail::is_ascii_alpha);
}

}  // namespace

std::optional<Url> parse_url(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) return std::nullopt;
  if (std::any_of(text.begin(), text.end(), [](char c) { return detail::is_ascii_space(c) || c < 0x20; })) {
    return std::nullopt;
  }
  Url url;
  if (const auto sep = text.find("://"); sep != std::string_view::npos) {
    url.scheme = detail::to_lower(text.substr(0, sep));
    if (url.scheme != "http" && url.scheme != "https") return std::nullopt;
    text.remove_prefix(sep + 3);
  } else {
    url.scheme = "http";
  }
  const auto auth_end = text.find_first_of("/?#");
  std::string_view authority = text.substr(0, auth_end);
  std::string_view rest = auth_end == std::string_view::npos ? std::string_view{} : text.substr(auth_end);
  if (authority.find('@') != std::string_view::npos) return std::nullopt;
  if (const auto colon = authority.find(':'); colon != std::string_view::npos) {
    const auto port = authority.substr(colon + 1);
    if (port.empty() || port.size() > 5 || !std::all_of(port.begin(), port.end(), detail::is_ascii_digit)) {
      return std::nullopt;
    }
    url.port = std::stoi(std::string(port));
    if (*url.port > 65535) return std::nullopt;
    authority = authority.substr(0, colon);
  }
  url.host = detail::to_lower(authority);
  if (!url.host.empty() && url.host.back() == '.') url.host.pop_back();
  if (!valid_host(url.host)) return std::nullopt;

  if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
  if (const auto q = rest.find('?'); q != std::string_view::npos) {
    url.query = std::string(rest.substr(q + 1));
    rest = rest.substr(0, q);
  }
  url.path = std::string(rest);
  return url;
}

bool is_valid_url(std::string_view text) { return parse_url(text).has_value(); }

std::optional<std::string> normalize_url(std::string_view text) {
  auto url = parse_url(text);
  if (!url) return std::nullopt;
  std::string out = url->scheme + "://" + url->host;
  const bool default_port =
      url->port && ((url->scheme == "http" && *url->port == 80) || (url->scheme == "https" && *url->port == 443));
  if (url->port && !default_port) out += ":" + std::to_string(*url->port);
  while (!url->path.empty() && url->path.back() == '/') url->path.pop_back();
  out += url->path;
  if (!url->query.empty()) out += "?" + url->query;
  return out;
}

std::string registrable_domain(std::string_view host_or_url) {
  std::string host;
  if (auto url = parse_url(host_or_url)) {
    host = url->host;
  } else {
    host = detail::to_lower(detail::trim(host_or_url));
  }
  const auto labels = detail::split(host, '.');
  if (labels.size() <= 2) return host;
  const auto join_last = [&](std::size_t n) {
    std::string out;
    for (std::size_t i = labels.size() - n; i < labels.size(); ++i) {
      if (!out.empty()) out += '.';
      out += labels[i];
    }
    return out;
  };
  const auto suffix = join_last(2);
  return public_suffixes().contains(suffix) ? join_last(3) : suffix;
}

}  // namespace newsgauge::corpus
