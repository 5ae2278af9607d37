#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "odpx/rdf_parser.hpp"
#include "odpx/vocab.hpp"

namespace odpx {

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
                       const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      kind_(kind),
      line_(line),
      column_(column) {}

std::optional<Syntax> syntax_from_name(std::string_view name) {
  if (name == "turtle" || name == "ttl") return Syntax::turtle;
  if (name == "ntriples" || name == "nt" || name == "n-triples") return Syntax::ntriples;
  return std::nullopt;
}

std::string_view to_string(Syntax syntax) {
  return syntax == Syntax::turtle ? "turtle" : "ntriples";
}

Syntax syntax_from_path(std::string_view path) {
  return path.ends_with(".nt") ? Syntax::ntriples : Syntax::turtle;
}

std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) noexcept {
  const auto* s = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = s[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      if ((s[i + k] & 0xc0) != 0x80) return i;
      cp = (cp << 6) | (s[i + k] & 0x3f);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                          (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) return i;
    i += len;
  }
  return std::nullopt;
}

namespace {

constexpr std::size_t kMaxNesting = 256;

bool is_ascii_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) {
  return is_digit(c) || (c >= 'A' && c <= 'F') || (c >= 'a' && c <= 'f');
}
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }
bool is_pn_chars_base(char c) { return is_ascii_alpha(c) || is_high(c); }
bool is_pn_chars_u(char c) { return is_pn_chars_base(c) || c == '_'; }
bool is_pn_chars(char c) { return is_pn_chars_u(c) || c == '-' || is_digit(c); }
bool is_local_escapable(char c) {
  return std::string_view("_~.-!$&'()*+,;=/?#@%").find(c) != std::string_view::npos;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

class Parser {
 public:
  Parser(GraphBuilder& builder, std::string_view src, Syntax syntax, std::optional<std::string> base)
      : builder_(builder), src_(src), ntriples_(syntax == Syntax::ntriples), base_(std::move(base)) {}

  void run() {
    if (const auto bad = find_invalid_utf8(src_)) {
      advance_to(*bad);
      fail(ParseErrorKind::invalid_utf8, "input is not valid UTF-8");
    }
    if (src_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
    while (true) {
      skip_ws();
      if (at_end()) break;
      statement();
    }
  }

 private:
  // --- cursor -------------------------------------------------------------
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char get() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xc0) != 0x80) {
      ++col_;
    }
    return c;
  }
  void advance_to(std::size_t target) {
    while (pos_ < target && !at_end()) get();
  }

  [[noreturn]] void fail(ParseErrorKind kind, const std::string& what) const {
    throw ParseError(kind, line_, col_, what);
  }
  [[noreturn]] void syntax_error(const std::string& what) const {
    fail(ParseErrorKind::syntax, what);
  }
  [[noreturn]] void unexpected(const char* expected) const {
    if (at_end()) syntax_error(std::string("unexpected end of input, expected ") + expected);
    std::string shown(1, peek());
    if (peek() == '\n') shown = "\\n";
    syntax_error("unexpected '" + shown + "', expected " + expected);
  }

  void skip_ws() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (peek() != c || at_end()) unexpected(what);
    get();
  }

  /// Maximal run of name characters starting at the cursor, not consumed.
  std::string_view peek_word() const {
    std::size_t end = pos_;
    while (end < src_.size() && (is_pn_chars(src_[end]) || src_[end] == '.')) ++end;
    return src_.substr(pos_, end - pos_);
  }

  static std::string_view strip_trailing_dots(std::string_view w) {
    while (!w.empty() && w.back() == '.') w.remove_suffix(1);
    return w;
  }

  bool word_is(std::string_view expected, bool case_insensitive) const {
    const std::string_view w = strip_trailing_dots(peek_word());
    if (w.size() != expected.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      char a = w[i];
      if (case_insensitive && a >= 'a' && a <= 'z') a = static_cast<char>(a - 32);
      if (a != expected[i]) return false;
    }
    const char after = pos_ + w.size() < src_.size() ? src_[pos_ + w.size()] : '\0';
    return after != ':';
  }

  void nest() {
    if (++depth_ > kMaxNesting) syntax_error("nesting too deep");
  }
  void unnest() { --depth_; }

  // --- statements ---------------------------------------------------------
  void statement() {
    if (!ntriples_) {
      if (peek() == '@') {
        get();
        if (src_.substr(pos_).starts_with("prefix")) {
          advance_to(pos_ + 6);
          prefix_directive();
          expect('.', "'.' after @prefix");
          return;
        }
        if (src_.substr(pos_).starts_with("base")) {
          advance_to(pos_ + 4);
          base_directive();
          expect('.', "'.' after @base");
          return;
        }
        syntax_error("unknown directive");
      }
      if (word_is("PREFIX", true)) {
        advance_to(pos_ + 6);
        prefix_directive();
        return;
      }
      if (word_is("BASE", true)) {
        advance_to(pos_ + 4);
        base_directive();
        return;
      }
    }
    triples();
    expect('.', "'.' at end of statement");
  }

  void prefix_directive() {
    skip_ws();
    std::string prefix;
    if (peek() != ':') {
      if (!is_pn_chars_base(peek())) unexpected("prefix name");
      while (!at_end() && (is_pn_chars(peek()) || peek() == '.')) prefix.push_back(get());
      if (prefix.back() == '.') syntax_error("prefix name may not end with '.'");
    }
    if (peek() != ':') unexpected("':' after prefix name");
    get();
    skip_ws();
    if (peek() != '<') unexpected("IRI after prefix declaration");
    prefixes_[prefix] = iriref();
  }

  void base_directive() {
    skip_ws();
    if (peek() != '<') unexpected("IRI after base declaration");
    base_ = iriref();
  }

  void triples() {
    skip_ws();
    if (!ntriples_ && peek() == '[') {
      const Term subject = bracket();
      skip_ws();
      if (peek() == '.') return;
      predicate_object_list(subject);
      return;
    }
    const Term s = subject();
    predicate_object_list(s);
  }

  Term subject() {
    skip_ws();
    const char c = peek();
    if (c == '<') return Term::iri(Iri::unchecked(iriref()));
    if (c == '_' && peek(1) == ':') return labeled_blank();
    if (ntriples_) unexpected("subject IRI or blank node");
    if (c == '(') return collection();
    if (c == ':' || is_pn_chars_base(c)) {
      const std::string_view w = peek_word();
      if (pos_ + w.size() < src_.size() && src_[pos_ + w.size()] == ':') {
        return Term::iri(Iri::unchecked(prefixed_name()));
      }
      if (c == ':') return Term::iri(Iri::unchecked(prefixed_name()));
    }
    if (c == '"' || c == '\'' || is_digit(c) || c == '+' || c == '-') {
      syntax_error("literal in subject position");
    }
    unexpected("subject");
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      const Iri p = verb();
      object_list(subject, p);
      skip_ws();
      if (ntriples_ || peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      // A trailing ';' may end the list.
      if (peek() == '.' || peek() == ']' || at_end()) return;
    }
  }

  Iri verb() {
    skip_ws();
    const char c = peek();
    if (c == '<') return Iri::unchecked(iriref());
    if (ntriples_) unexpected("predicate IRI");
    if (c == 'a' && word_is("a", false)) {
      get();
      return Iri::unchecked(std::string(vocab::kRdfType));
    }
    if (c == ':' || is_pn_chars_base(c)) return Iri::unchecked(prefixed_name());
    unexpected("predicate");
  }

  void object_list(const Term& subject, const Iri& predicate) {
    while (true) {
      Term o = object();
      builder_.add(subject, predicate, std::move(o));
      skip_ws();
      if (ntriples_ || peek() != ',') return;
      get();
    }
  }

  Term object() {
    skip_ws();
    const char c = peek();
    if (c == '<') return Term::iri(Iri::unchecked(iriref()));
    if (c == '_' && peek(1) == ':') return labeled_blank();
    if (c == '"') return string_literal();
    if (ntriples_) unexpected("object");
    if (c == '\'') return string_literal();
    if (c == '[') return bracket();
    if (c == '(') return collection();
    if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(peek(1)))) {
      return numeric_literal();
    }
    if (c == ':' || is_pn_chars_base(c)) {
      if (word_is("true", false) || word_is("false", false)) {
        const bool value = c == 't';
        advance_to(pos_ + (value ? 4 : 5));
        return Term::literal(value ? "true" : "false", std::string(vocab::kXsdBoolean));
      }
      return Term::iri(Iri::unchecked(prefixed_name()));
    }
    unexpected("object");
  }

  /// '[' predicateObjectList? ']'
  Term bracket() {
    get();
    nest();
    const Term node = Term::blank(builder_.fresh_blank_label());
    skip_ws();
    if (peek() != ']') predicate_object_list(node);
    expect(']', "']' closing blank node property list");
    unnest();
    return node;
  }

  Term collection() {
    get();
    nest();
    std::vector<Term> items;
    while (true) {
      skip_ws();
      if (at_end()) unexpected("')' closing collection");
      if (peek() == ')') {
        get();
        break;
      }
      items.push_back(object());
    }
    unnest();
    const Iri first = Iri::unchecked(std::string(vocab::kRdfFirst));
    const Iri rest = Iri::unchecked(std::string(vocab::kRdfRest));
    Term tail = Term::iri(Iri::unchecked(std::string(vocab::kRdfNil)));
    if (items.empty()) return tail;
    std::vector<Term> cells;
    for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(Term::blank(builder_.fresh_blank_label()));
    for (std::size_t i = 0; i < items.size(); ++i) {
      builder_.add(cells[i], first, items[i]);
      builder_.add(cells[i], rest, i + 1 < items.size() ? cells[i + 1] : tail);
    }
    return cells.front();
  }

  Term labeled_blank() {
    get();
    get();
    std::string label;
    const char first = peek();
    if (!(is_pn_chars_u(first) || is_digit(first))) unexpected("blank node label");
    std::size_t trailing_dots = 0;
    while (!at_end() && (is_pn_chars(peek()) || peek() == '.')) {
      trailing_dots = peek() == '.' ? trailing_dots + 1 : 0;
      label.push_back(get());
    }
    retreat(trailing_dots);
    label.resize(label.size() - trailing_dots);
    auto [it, inserted] = blank_labels_.try_emplace(label);
    if (inserted) it->second = builder_.fresh_blank_label();
    return Term::blank(it->second);
  }

  /// Un-reads `count` trailing '.' characters (never newlines).
  void retreat(std::size_t count) {
    pos_ -= count;
    col_ -= count;
  }

  std::uint32_t read_hex(std::size_t digits) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      if (!is_hex(peek()) || at_end()) syntax_error("invalid unicode escape");
      const char c = get();
      v = (v << 4) | static_cast<std::uint32_t>(is_digit(c) ? c - '0' : (c | 0x20) - 'a' + 10);
    }
    return v;
  }

  void append_uchar(std::string& out) {
    const char kind = get();
    const std::uint32_t cp = read_hex(kind == 'u' ? 4 : 8);
    if (cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) syntax_error("invalid code point in escape");
    append_utf8(out, cp);
  }

  /// '<' ... '>' resolved to an absolute IRI string.
  std::string iriref() {
    get();
    std::string raw;
    while (true) {
      if (at_end()) syntax_error("unterminated IRI");
      const char c = peek();
      if (c == '>') {
        get();
        break;
      }
      if (c == '\\') {
        get();
        if (peek() != 'u' && peek() != 'U') syntax_error("invalid escape in IRI");
        append_uchar(raw);
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail(ParseErrorKind::invalid_iri, "invalid character in IRI");
      }
      raw.push_back(get());
    }
    if (!is_valid_iri_reference(raw)) fail(ParseErrorKind::invalid_iri, "invalid IRI <" + raw + ">");
    if (is_absolute_iri(raw)) return raw;
    if (ntriples_) fail(ParseErrorKind::invalid_iri, "relative IRI <" + raw + "> in N-Triples");
    if (!base_) fail(ParseErrorKind::invalid_iri, "relative IRI <" + raw + "> without a base");
    std::string resolved = resolve_iri(*base_, raw);
    if (!is_absolute_iri(resolved)) fail(ParseErrorKind::invalid_iri, "cannot resolve <" + raw + ">");
    return resolved;
  }

  std::string prefixed_name() {
    const std::size_t start_line = line_;
    const std::size_t start_col = col_;
    std::string prefix;
    while (!at_end() && peek() != ':') {
      if (!(is_pn_chars(peek()) || peek() == '.')) unexpected("prefixed name");
      prefix.push_back(get());
    }
    if (at_end()) unexpected("':' in prefixed name");
    if (!prefix.empty() && (prefix.back() == '.' || !is_pn_chars_base(prefix.front()))) {
      syntax_error("malformed prefix '" + prefix + "'");
    }
    get();
    const auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) {
      throw ParseError(ParseErrorKind::undefined_prefix, start_line, start_col,
                       "undefined prefix '" + prefix + ":'");
    }
    std::string local;
    std::size_t trailing_dots = 0;
    bool first = true;
    while (!at_end()) {
      const char c = peek();
      if (c == '%') {
        if (!is_hex(peek(1)) || !is_hex(peek(2))) syntax_error("invalid percent escape in local name");
        local.push_back(get());
        local.push_back(get());
        local.push_back(get());
      } else if (c == '\\') {
        get();
        if (!is_local_escapable(peek()) || at_end()) syntax_error("invalid escape in local name");
        local.push_back(get());
      } else if (is_pn_chars_u(c) || c == ':' || is_digit(c) || (!first && (c == '-' || c == '.'))) {
        local.push_back(get());
      } else {
        break;
      }
      trailing_dots = c == '.' ? trailing_dots + 1 : 0;
      first = false;
    }
    retreat(trailing_dots);
    local.resize(local.size() - trailing_dots);
    std::string iri = it->second + local;
    if (!is_absolute_iri(iri)) fail(ParseErrorKind::invalid_iri, "invalid IRI from prefixed name: " + iri);
    return iri;
  }

  Term string_literal() {
    const char quote = get();
    std::string value;
    const bool long_form = peek() == quote && peek(1) == quote;
    if (long_form) {
      if (ntriples_) syntax_error("long string in N-Triples");
      get();
      get();
    }
    while (true) {
      if (at_end()) syntax_error("unterminated string");
      const char c = peek();
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          get();
          get();
          get();
          break;
        }
      } else {
        if (c == quote) {
          get();
          break;
        }
        if (c == '\n' || c == '\r') syntax_error("newline in short string");
      }
      if (c == '\\') {
        get();
        const char e = peek();
        switch (e) {
          case 't': value.push_back('\t'); get(); break;
          case 'b': value.push_back('\b'); get(); break;
          case 'n': value.push_back('\n'); get(); break;
          case 'r': value.push_back('\r'); get(); break;
          case 'f': value.push_back('\f'); get(); break;
          case '"': value.push_back('"'); get(); break;
          case '\'': value.push_back('\''); get(); break;
          case '\\': value.push_back('\\'); get(); break;
          case 'u':
          case 'U': append_uchar(value); break;
          default: syntax_error("invalid escape sequence in string");
        }
        continue;
      }
      value.push_back(get());
    }
    if (peek() == '@') {
      get();
      std::string tag;
      while (!at_end() && is_ascii_alpha(peek())) tag.push_back(get());
      if (tag.empty()) syntax_error("empty language tag");
      while (peek() == '-') {
        tag.push_back(get());
        std::size_t n = 0;
        while (!at_end() && (is_ascii_alpha(peek()) || is_digit(peek()))) {
          tag.push_back(get());
          ++n;
        }
        if (n == 0) syntax_error("malformed language tag");
      }
      return Term::literal(std::move(value), {}, std::move(tag));
    }
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      std::string datatype;
      if (peek() == '<') {
        datatype = iriref();
      } else if (!ntriples_ && (peek() == ':' || is_pn_chars_base(peek()))) {
        datatype = prefixed_name();
      } else {
        unexpected("datatype IRI");
      }
      return Term::literal(std::move(value), std::move(datatype));
    }
    return Term::literal(std::move(value));
  }

  Term numeric_literal() {
    std::string text;
    if (peek() == '+' || peek() == '-') text.push_back(get());
    bool has_dot = false;
    bool has_exp = false;
    std::size_t int_digits = 0;
    while (is_digit(peek()) && !at_end()) {
      text.push_back(get());
      ++int_digits;
    }
    if (peek() == '.' && is_digit(peek(1))) {
      has_dot = true;
      text.push_back(get());
      while (is_digit(peek()) && !at_end()) text.push_back(get());
    }
    if ((peek() == 'e' || peek() == 'E') && (int_digits > 0 || has_dot)) {
      has_exp = true;
      text.push_back(get());
      if (peek() == '+' || peek() == '-') text.push_back(get());
      if (!is_digit(peek())) syntax_error("malformed exponent");
      while (is_digit(peek()) && !at_end()) text.push_back(get());
    }
    if (int_digits == 0 && !has_dot) syntax_error("malformed number");
    const std::string_view datatype =
        has_exp ? vocab::kXsdDouble : (has_dot ? vocab::kXsdDecimal : vocab::kXsdInteger);
    return Term::literal(std::move(text), std::string(datatype));
  }

  GraphBuilder& builder_;
  std::string_view src_;
  bool ntriples_;
  std::optional<std::string> base_;
  std::map<std::string, std::string> prefixes_;
  std::map<std::string, std::string> blank_labels_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::size_t depth_ = 0;
};

}  // namespace

void parse_into(GraphBuilder& builder, std::string_view bytes, Syntax syntax,
                const std::optional<Iri>& base) {
  std::optional<std::string> base_text;
  if (base) base_text = base->str();
  Parser(builder, bytes, syntax, std::move(base_text)).run();
}

OntologyGraph parse_document(std::string_view bytes, Syntax syntax, const std::optional<Iri>& base) {
  GraphBuilder builder;
  parse_into(builder, bytes, syntax, base);
  return std::move(builder).build();
}

}  // namespace odpx
