#include "odpx/iri.hpp"

#include <optional>

#include "odpx/error.hpp"

namespace odpx {

namespace {

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Length of the scheme (excluding ':') or 0 if none.
std::size_t scheme_length(std::string_view text) {
  if (text.empty() || !is_alpha(text[0])) return 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ':') return i;
    if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.')) return 0;
  }
  return 0;
}

struct IriParts {
  std::optional<std::string> scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;
};

IriParts split(std::string_view s) {
  IriParts parts;
  if (const auto n = scheme_length(s); n > 0) {
    parts.scheme = std::string(s.substr(0, n));
    s.remove_prefix(n + 1);
  }
  if (const auto hash = s.find('#'); hash != std::string_view::npos) {
    parts.fragment = std::string(s.substr(hash + 1));
    s = s.substr(0, hash);
  }
  if (const auto q = s.find('?'); q != std::string_view::npos) {
    parts.query = std::string(s.substr(q + 1));
    s = s.substr(0, q);
  }
  if (s.starts_with("//")) {
    s.remove_prefix(2);
    const auto slash = s.find('/');
    parts.authority = std::string(s.substr(0, slash));
    s = slash == std::string_view::npos ? std::string_view{} : s.substr(slash);
  }
  parts.path = std::string(s);
  return parts;
}

std::string remove_dot_segments(std::string_view input) {
  std::string in(input);
  std::string out;
  while (!in.empty()) {
    if (in.starts_with("../")) {
      in.erase(0, 3);
    } else if (in.starts_with("./")) {
      in.erase(0, 2);
    } else if (in.starts_with("/./")) {
      in.erase(0, 2);
    } else if (in == "/.") {
      in = "/";
    } else if (in.starts_with("/../") || in == "/..") {
      in = in == "/.." ? "/" : in.substr(3);
      const auto last = out.rfind('/');
      out.erase(last == std::string::npos ? 0 : last);
    } else if (in == "." || in == "..") {
      in.clear();
    } else {
      const std::size_t start = in[0] == '/' ? 1 : 0;
      const auto next = in.find('/', start);
      const std::size_t len = next == std::string::npos ? in.size() : next;
      out += in.substr(0, len);
      in.erase(0, len);
    }
  }
  return out;
}

std::string recompose(const IriParts& p) {
  std::string out;
  if (p.scheme) out += *p.scheme + ":";
  if (p.authority) out += "//" + *p.authority;
  out += p.path;
  if (p.query) out += "?" + *p.query;
  if (p.fragment) out += "#" + *p.fragment;
  return out;
}

}  // namespace

bool is_valid_iri_reference(std::string_view text) noexcept {
  for (unsigned char c : text) {
    if (c <= 0x20) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

bool is_absolute_iri(std::string_view text) noexcept {
  return scheme_length(text) > 0 && is_valid_iri_reference(text);
}

Iri Iri::parse(std::string_view text) {
  if (!is_absolute_iri(text)) {
    throw InvalidIriError("invalid absolute IRI: '" + std::string(text) + "'");
  }
  return Iri(std::string(text));
}

std::optional<Iri> Iri::try_parse(std::string_view text) {
  if (!is_absolute_iri(text)) return std::nullopt;
  return Iri(std::string(text));
}

std::string_view Iri::local_name() const noexcept {
  const std::string_view v = value_;
  const auto pos = v.find_last_of("#/:");
  if (pos == std::string_view::npos || pos + 1 == v.size()) return v;
  return v.substr(pos + 1);
}

std::string resolve_iri(std::string_view base, std::string_view reference) {
  const IriParts r = split(reference);
  const IriParts b = split(base);
  IriParts t;
  if (r.scheme) {
    t = r;
    t.path = remove_dot_segments(r.path);
  } else {
    if (r.authority) {
      t.authority = r.authority;
      t.path = remove_dot_segments(r.path);
      t.query = r.query;
    } else {
      if (r.path.empty()) {
        t.path = b.path;
        t.query = r.query ? r.query : b.query;
      } else {
        if (r.path[0] == '/') {
          t.path = remove_dot_segments(r.path);
        } else {
          std::string merged;
          if (b.authority && b.path.empty()) {
            merged = "/" + r.path;
          } else {
            const auto last = b.path.rfind('/');
            merged = (last == std::string::npos ? std::string{} : b.path.substr(0, last + 1)) + r.path;
          }
          t.path = remove_dot_segments(merged);
        }
        t.query = r.query;
      }
      t.authority = b.authority;
    }
    t.scheme = b.scheme;
  }
  t.fragment = r.fragment;
  return recompose(t);
}

}  // namespace odpx
