#include "deflog/dsl.hpp"

#include <charconv>
#include <map>
#include <set>

namespace deflog {

ParseError::ParseError(ParseErrorKind kind, SourcePos pos, std::string reason)
    : std::runtime_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + reason),
      kind_(kind),
      pos_(pos),
      reason_(std::move(reason)) {}

std::optional<std::string> TheoryDocument::meta(std::string_view key) const {
  for (const MetaEntry& m : metadata)
    if (m.key == key) return m.value;
  return std::nullopt;
}

namespace {

// Tree depth bound keeps the recursive formula algorithms within stack
// limits; nesting bounds the parser's own recursion.
constexpr std::size_t kMaxDepth = 2000;
constexpr std::size_t kMaxNesting = 256;

enum class Tok { kIdent, kTrue, kFalse, kNot, kAnd, kOr, kImplies, kIff, kLParen, kRParen, kColon, kSlash, kDot, kGt, kAt, kEnd };

std::string describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kTrue: return "'true'";
    case Tok::kFalse: return "'false'";
    case Tok::kNot: return "'!'";
    case Tok::kAnd: return "'&'";
    case Tok::kOr: return "'|'";
    case Tok::kImplies: return "'->'";
    case Tok::kIff: return "'<->'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kColon: return "':'";
    case Tok::kSlash: return "'/'";
    case Tok::kDot: return "'.'";
    case Tok::kGt: return "'>'";
    case Tok::kAt: return "'@'";
    case Tok::kEnd: return "end of input";
  }
  return "token";
}

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text, SourcePos origin = {}) : text_(text), line_(origin.line), col_(origin.column) {}

  const Token& peek() {
    if (!have_) {
      cur_ = scan();
      have_ = true;
    }
    return cur_;
  }

  Token next() {
    peek();
    have_ = false;
    return cur_;
  }

  // Raw text from the current position to the end of the line, consuming it.
  // Only valid right after an '@' KEY was consumed with no peeked token.
  std::string rest_of_line() {
    std::string out;
    while (i_ < text_.size() && text_[i_] != '\n') out += advance();
    const auto first = out.find_first_not_of(" \t");
    const auto last = out.find_last_not_of(" \t\r");
    return first == std::string::npos ? std::string() : out.substr(first, last - first + 1);
  }

  std::string key_after_at() {
    const SourcePos p = here();
    std::string key;
    while (i_ < text_.size() && is_word_char(text_[i_])) key += advance();
    if (!is_valid_atom_name(key) && !(key == "true" || key == "false")) {
      if (key.empty()) throw ParseError(ParseErrorKind::kSyntax, p, "expected a key after '@'");
      throw ParseError(ParseErrorKind::kMalformedAtom, p, "malformed key '" + key + "'");
    }
    return key;
  }

  SourcePos here() const { return {line_, col_}; }

 private:
  char advance() {
    const char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token scan() {
    skip_blank();
    Token t;
    t.pos = here();
    if (i_ >= text_.size()) return t;
    const char c = text_[i_];
    if (is_word_char(c)) {
      while (i_ < text_.size() && is_word_char(text_[i_])) t.text += advance();
      if (t.text == "true") {
        t.kind = Tok::kTrue;
      } else if (t.text == "false") {
        t.kind = Tok::kFalse;
      } else if (!is_valid_atom_name(t.text)) {
        throw ParseError(ParseErrorKind::kMalformedAtom, t.pos, "malformed atom '" + t.text + "'");
      } else {
        t.kind = Tok::kIdent;
      }
      return t;
    }
    auto single = [&](Tok k) {
      t.text = std::string(1, advance());
      t.kind = k;
      return t;
    };
    switch (c) {
      case '!': return single(Tok::kNot);
      case '&': return single(Tok::kAnd);
      case '|': return single(Tok::kOr);
      case '(': return single(Tok::kLParen);
      case ')': return single(Tok::kRParen);
      case ':': return single(Tok::kColon);
      case '/': return single(Tok::kSlash);
      case '.': return single(Tok::kDot);
      case '>': return single(Tok::kGt);
      case '@': return single(Tok::kAt);
      case '-':
        if (text_.substr(i_).starts_with("->")) {
          advance();
          advance();
          t.kind = Tok::kImplies;
          t.text = "->";
          return t;
        }
        break;
      case '<':
        if (text_.substr(i_).starts_with("<->")) {
          advance();
          advance();
          advance();
          t.kind = Tok::kIff;
          t.text = "<->";
          return t;
        }
        break;
      default: break;
    }
    const unsigned char uc = static_cast<unsigned char>(c);
    std::string shown = (uc >= 0x20 && uc < 0x7f) ? "'" + std::string(1, c) + "'" : "byte 0x" + hex(uc);
    throw ParseError(ParseErrorKind::kSyntax, t.pos, "unexpected character " + shown);
  }

  static std::string hex(unsigned char b) {
    static const char* digits = "0123456789abcdef";
    return {digits[b >> 4], digits[b & 15]};
  }

  std::string_view text_;
  std::size_t i_ = 0;
  std::size_t line_;
  std::size_t col_;
  Token cur_;
  bool have_ = false;
};

[[noreturn]] void unexpected(const Token& got, const std::string& expected) {
  const std::string found = got.kind == Tok::kEnd ? "end of input" : "'" + got.text + "'";
  throw ParseError(ParseErrorKind::kSyntax, got.pos, "expected " + expected + " but found " + found);
}

class FormulaParser {
 public:
  explicit FormulaParser(Lexer& lx) : lx_(lx) {}

  Formula parse() { return iff().f; }

 private:
  struct Parsed {
    Formula f;
    std::size_t depth;
  };

  Parsed combine(Connective op, const Parsed& a, const Parsed& b, SourcePos pos) {
    const std::size_t depth = std::max(a.depth, b.depth) + 1;
    check_depth(depth, pos);
    switch (op) {
      case Connective::kAnd: return {Formula::And(a.f, b.f), depth};
      case Connective::kOr: return {Formula::Or(a.f, b.f), depth};
      case Connective::kImplies: return {Formula::Implies(a.f, b.f), depth};
      default: return {Formula::Iff(a.f, b.f), depth};
    }
  }

  static void check_depth(std::size_t depth, SourcePos pos) {
    if (depth > kMaxDepth) throw ParseError(ParseErrorKind::kTooDeep, pos, "formula nested too deeply");
  }

  Parsed iff() {
    Parsed acc = implies();
    while (lx_.peek().kind == Tok::kIff) {
      const SourcePos p = lx_.next().pos;
      acc = combine(Connective::kIff, acc, implies(), p);
    }
    return acc;
  }

  Parsed implies() {
    Parsed lhs = disj();
    if (lx_.peek().kind != Tok::kImplies) return lhs;
    const SourcePos p = lx_.next().pos;
    enter(p);
    Parsed rhs = implies();
    leave();
    return combine(Connective::kImplies, lhs, rhs, p);
  }

  Parsed disj() {
    Parsed acc = conj();
    while (lx_.peek().kind == Tok::kOr) {
      const SourcePos p = lx_.next().pos;
      acc = combine(Connective::kOr, acc, conj(), p);
    }
    return acc;
  }

  Parsed conj() {
    Parsed acc = unary();
    while (lx_.peek().kind == Tok::kAnd) {
      const SourcePos p = lx_.next().pos;
      acc = combine(Connective::kAnd, acc, unary(), p);
    }
    return acc;
  }

  Parsed unary() {
    if (lx_.peek().kind == Tok::kNot) {
      const SourcePos p = lx_.next().pos;
      enter(p);
      Parsed inner = unary();
      leave();
      check_depth(inner.depth + 1, p);
      return {Formula::Not(inner.f), inner.depth + 1};
    }
    return primary();
  }

  Parsed primary() {
    Token t = lx_.next();
    switch (t.kind) {
      case Tok::kIdent: return {Formula::Var(t.text), 1};
      case Tok::kTrue: return {Formula::True(), 1};
      case Tok::kFalse: return {Formula::False(), 1};
      case Tok::kLParen: {
        enter(t.pos);
        Parsed inner = iff();
        leave();
        const Token close = lx_.next();
        if (close.kind != Tok::kRParen) unexpected(close, "')'");
        return inner;
      }
      default: unexpected(t, "identifier, 'true', 'false', '!' or '('");
    }
  }

  // Bounds recursion of the parser itself, independent of tree depth.
  void enter(SourcePos p) {
    if (++nesting_ > kMaxNesting) throw ParseError(ParseErrorKind::kTooDeep, p, "formula nested too deeply");
  }
  void leave() { --nesting_; }

  Lexer& lx_;
  std::size_t nesting_ = 0;
};

Token expect(Lexer& lx, Tok kind) {
  Token t = lx.next();
  if (t.kind != kind) unexpected(t, describe(kind));
  return t;
}

Formula formula_in(Lexer& lx) { return FormulaParser(lx).parse(); }

std::string default_line(const Default& d) {
  return "default " + d.name + ": " + d.prerequisite.to_string() + " : " + d.justification.to_string() + " / " +
         d.consequent.to_string() + ".";
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Lexer lx(text);
  Formula f = formula_in(lx);
  if (lx.peek().kind != Tok::kEnd) unexpected(lx.peek(), "end of formula");
  return f;
}

TheoryDocument parse_theory(std::string_view text) {
  Lexer lx(text);
  TheoryDocument doc;
  std::set<std::string> names;
  std::vector<std::pair<std::string, SourcePos>> prefer_refs;

  while (lx.peek().kind != Tok::kEnd) {
    const Token head = lx.next();
    if (head.kind == Tok::kAt) {
      MetaEntry m;
      m.key = lx.key_after_at();
      m.value = lx.rest_of_line();
      doc.metadata.push_back(std::move(m));
      continue;
    }
    if (head.kind != Tok::kIdent || (head.text != "fact" && head.text != "default" && head.text != "prefer")) {
      unexpected(head, "'fact', 'default', 'prefer' or '@'");
    }
    if (head.text == "fact") {
      doc.facts.push_back(formula_in(lx));
    } else if (head.text == "default") {
      const Token name = expect(lx, Tok::kIdent);
      if (!names.insert(name.text).second) {
        throw ParseError(ParseErrorKind::kDuplicateName, name.pos, "duplicate default name '" + name.text + "'");
      }
      expect(lx, Tok::kColon);
      Default d;
      d.name = name.text;
      d.prerequisite = formula_in(lx);
      expect(lx, Tok::kColon);
      d.justification = formula_in(lx);
      expect(lx, Tok::kSlash);
      d.consequent = formula_in(lx);
      doc.defaults.push_back(std::move(d));
    } else {
      const Token hi = expect(lx, Tok::kIdent);
      expect(lx, Tok::kGt);
      const Token lo = expect(lx, Tok::kIdent);
      prefer_refs.emplace_back(hi.text, hi.pos);
      prefer_refs.emplace_back(lo.text, lo.pos);
      doc.priorities.push_back({hi.text, lo.text});
    }
    expect(lx, Tok::kDot);
  }

  for (const auto& [name, pos] : prefer_refs) {
    if (!names.contains(name)) {
      throw ParseError(ParseErrorKind::kUnknownName, pos, "unknown default '" + name + "' in prefer");
    }
  }
  return doc;
}

std::string serialize_theory(const TheoryDocument& doc) {
  std::string out;
  for (const MetaEntry& m : doc.metadata) {
    out += '@' + m.key;
    if (!m.value.empty()) out += ' ' + m.value;
    out += '\n';
  }
  for (const Formula& f : doc.facts) out += "fact " + f.to_string() + ".\n";
  for (const Default& d : doc.defaults) out += default_line(d) + '\n';
  for (const Priority& p : doc.priorities) out += "prefer " + p.higher + " > " + p.lower + ".\n";
  return out;
}

DefaultTheory to_theory(const TheoryDocument& doc) {
  return DefaultTheory(FormulaSet(doc.facts), doc.defaults, doc.priorities);
}

TheoryDocument to_document(const DefaultTheory& theory) {
  TheoryDocument doc;
  doc.facts = theory.hard().items();
  doc.defaults = theory.defaults();
  doc.priorities = theory.priorities();
  return doc;
}

std::vector<ManifestEntry> parse_corpus_manifest(std::string_view text) {
  std::vector<ManifestEntry> out;
  std::set<std::string> ids;
  struct Seen {
    bool theory = false, gloss = false, expect = false;
  } seen;

  auto close_block = [&]() {
    if (out.empty()) return;
    const ManifestEntry& e = out.back();
    if (e.theory_path.empty())
      throw ParseError(ParseErrorKind::kSyntax, e.pos, "entry '" + e.id + "' has no @theory");
    if (e.gold.empty()) throw ParseError(ParseErrorKind::kSyntax, e.pos, "entry '" + e.id + "' has no @gold");
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::size_t i = raw.find_first_not_of(" \t\r");
    if (i == std::string_view::npos || raw[i] == '#') continue;
    const SourcePos at{line_no, i + 1};
    if (raw[i] != '@') throw ParseError(ParseErrorKind::kSyntax, at, "expected '@' at start of manifest line");

    std::size_t k = i + 1;
    while (k < raw.size() && is_word_char(raw[k])) ++k;
    const std::string key(raw.substr(i + 1, k - i - 1));
    std::string_view value = raw.substr(k);
    const std::size_t vstart = value.find_first_not_of(" \t");
    const std::size_t value_col = k + 1 + (vstart == std::string_view::npos ? 0 : vstart);
    value = vstart == std::string_view::npos ? std::string_view{} : value.substr(vstart);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t' || value.back() == '\r')) value.remove_suffix(1);
    const SourcePos vpos{line_no, value_col};

    if (key == "id") {
      close_block();
      if (!is_valid_atom_name(value))
        throw ParseError(ParseErrorKind::kMalformedAtom, vpos, "malformed sentence id '" + std::string(value) + "'");
      if (!ids.insert(std::string(value)).second)
        throw ParseError(ParseErrorKind::kDuplicateName, vpos, "duplicate sentence id '" + std::string(value) + "'");
      ManifestEntry e;
      e.id = std::string(value);
      e.pos = at;
      out.push_back(std::move(e));
      seen = {};
      continue;
    }
    if (key != "theory" && key != "gloss" && key != "gold" && key != "gold_absent" && key != "expect_extensions") {
      throw ParseError(ParseErrorKind::kSyntax, at, "unknown manifest key '@" + key + "'");
    }
    if (out.empty()) throw ParseError(ParseErrorKind::kSyntax, at, "'@" + key + "' before any @id");
    ManifestEntry& e = out.back();

    auto once = [&](bool& flag) {
      if (flag) throw ParseError(ParseErrorKind::kSyntax, at, "repeated '@" + key + "' in entry '" + e.id + "'");
      flag = true;
    };
    auto formula_value = [&]() {
      Lexer lx(value, vpos);
      Formula f = formula_in(lx);
      if (lx.peek().kind != Tok::kEnd) unexpected(lx.peek(), "end of formula");
      return f;
    };

    if (key == "theory") {
      once(seen.theory);
      if (value.empty()) throw ParseError(ParseErrorKind::kSyntax, vpos, "empty @theory path");
      e.theory_path = std::string(value);
    } else if (key == "gloss") {
      once(seen.gloss);
      e.gloss = std::string(value);
    } else if (key == "gold") {
      e.gold.push_back(formula_value());
    } else if (key == "gold_absent") {
      e.gold_absent.push_back(formula_value());
    } else {
      once(seen.expect);
      std::size_t n = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
        throw ParseError(ParseErrorKind::kSyntax, vpos, "expected a non-negative integer");
      e.expect_extensions = n;
    }
  }
  close_block();
  return out;
}

}  // namespace deflog
