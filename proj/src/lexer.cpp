#include "lexer.hpp"

#include <array>

namespace soalg {

ParseError::ParseError(const std::string& message, Position where)
    : Error(std::to_string(where.line) + ":" + std::to_string(where.column) +
            ": " + message),
      where_(where),
      bare_(message) {}

namespace text {

namespace {

struct Alias {
  std::string_view glyph;
  std::string_view ascii;
};

constexpr std::array<Alias, 5> kAliases{{
    {"\xE2\x96\xB7", "|>"},  // white right-pointing triangle
    {"\xE2\x8A\xA2", "|-"},  // right tack
    {"\xE2\x89\xA1", "=="},  // identical to
    {"\xE2\x9F\xA8", "<"},   // mathematical left angle bracket
    {"\xE2\x9F\xA9", ">"},
}};

constexpr std::array<std::string_view, 6> kLongPunct{"|>", "|-", "==",
                                                     ":=", "=>", "->"};
constexpr std::string_view kShortPunct = "()[]{},;:.<>=*+";

}  // namespace

bool is_name_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '\'' || c >= 0x80;
}

Lexer::Lexer(std::string_view text, Position origin)
    : text_(text), origin_(origin), here_(origin) {
  advance();
}

Position Lexer::pos_at(std::size_t offset) const {
  Position p = here_;
  for (std::size_t i = offset_; i < offset && i < text_.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text_[i]);
    if (c == '\n') {
      ++p.line;
      p.column = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++p.column;
    }
  }
  return p;
}

void Lexer::skip_space() {
  std::size_t i = offset_;
  while (i < text_.size()) {
    char c = text_[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
    } else if (c == '#') {
      while (i < text_.size() && text_[i] != '\n') ++i;
    } else {
      break;
    }
  }
  here_ = pos_at(i);
  offset_ = i;
}

void Lexer::advance() {
  skip_space();
  current_ = Token{};
  current_.pos = here_;
  current_.offset = offset_;
  if (offset_ >= text_.size()) return;

  std::string_view rest = text_.substr(offset_);
  auto take = [&](Token::Kind kind, std::string text, std::size_t len) {
    current_.kind = kind;
    current_.text = std::move(text);
    here_ = pos_at(offset_ + len);
    offset_ += len;
  };

  for (const auto& a : kAliases)
    if (rest.substr(0, a.glyph.size()) == a.glyph)
      return take(Token::Kind::kPunct, std::string(a.ascii), a.glyph.size());
  for (auto p : kLongPunct)
    if (rest.substr(0, p.size()) == p)
      return take(Token::Kind::kPunct, std::string(p), p.size());
  if (kShortPunct.find(rest[0]) != std::string_view::npos)
    return take(Token::Kind::kPunct, std::string(1, rest[0]), 1);

  std::size_t len = 0;
  bool digits = true;
  while (len < rest.size() &&
         is_name_byte(static_cast<unsigned char>(rest[len]))) {
    bool alias = false;
    for (const auto& a : kAliases)
      if (rest.substr(len, a.glyph.size()) == a.glyph) alias = true;
    if (alias) break;
    if (rest[len] < '0' || rest[len] > '9') digits = false;
    ++len;
  }
  if (len == 0)
    fail("unexpected character '" + std::string(1, rest[0]) + "'");
  take(digits ? Token::Kind::kNumber : Token::Kind::kName,
       std::string(rest.substr(0, len)), len);
}

Token Lexer::next() {
  Token t = current_;
  advance();
  return t;
}

bool Lexer::is(std::string_view punct) const {
  return current_.kind == Token::Kind::kPunct && current_.text == punct;
}

bool Lexer::accept(std::string_view punct) {
  if (!is(punct)) return false;
  advance();
  return true;
}

namespace {

std::string describe(const Token& t) {
  if (t.kind == Token::Kind::kEnd) return "end of input";
  return "'" + t.text + "'";
}

}  // namespace

void Lexer::expect(std::string_view punct) {
  if (!accept(punct))
    fail("expected '" + std::string(punct) + "' but found " +
         describe(current_));
}

std::string Lexer::expect_name(std::string_view what) {
  if (current_.kind != Token::Kind::kName)
    fail("expected " + std::string(what) + " but found " + describe(current_));
  return next().text;
}

std::size_t Lexer::expect_number(std::string_view what) {
  if (current_.kind != Token::Kind::kNumber)
    fail("expected " + std::string(what) + " but found " + describe(current_));
  Token t = next();
  try {
    return static_cast<std::size_t>(std::stoull(t.text));
  } catch (const std::exception&) {
    fail("number out of range", t.pos);
  }
}

std::pair<std::string_view, Position> Lexer::take_until(
    std::initializer_list<std::string_view> stops) {
  std::size_t start = current_.offset;
  Position start_pos = current_.pos;
  int depth = 0;
  std::size_t i = start;
  for (; i < text_.size(); ++i) {
    char c = text_[i];
    if (c == '#') {
      while (i < text_.size() && text_[i] != '\n') ++i;
      continue;
    }
    if (depth == 0) {
      bool stop = false;
      for (auto s : stops)
        if (text_.substr(i, s.size()) == s) stop = true;
      if (stop) break;
    }
    if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      if (depth == 0) break;
      --depth;
    }
  }
  std::string_view taken = text_.substr(start, i - start);
  // Re-anchor the lexer at the stop point.
  here_ = start_pos;
  offset_ = start;
  here_ = pos_at(i);
  offset_ = i;
  advance();
  while (!taken.empty() && (taken.back() == ' ' || taken.back() == '\n' ||
                            taken.back() == '\t' || taken.back() == '\r'))
    taken.remove_suffix(1);
  return {taken, start_pos};
}

void Lexer::fail(const std::string& message) const {
  fail(message, current_.pos);
}

void Lexer::fail(const std::string& message, Position at) const {
  throw ParseError(message, at);
}

}  // namespace text
}  // namespace soalg
