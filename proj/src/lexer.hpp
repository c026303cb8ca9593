#pragma once

// Tokenizer shared by every text format. Internal header.

#include <cstddef>
#include <string>
#include <string_view>

#include "soalg/syntax.hpp"

namespace soalg::text {

struct Token {
  enum class Kind { kName, kNumber, kPunct, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  Position pos;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text, Position origin = {});

  const Token& peek() const { return current_; }
  Token next();
  bool at_end() const { return current_.kind == Token::Kind::kEnd; }

  bool is(std::string_view punct) const;
  bool accept(std::string_view punct);
  void expect(std::string_view punct);
  std::string expect_name(std::string_view what);
  std::size_t expect_number(std::string_view what);

  // Raw text from the current token up to (excluding) the first top-level
  // occurrence of one of `stops` (parentheses and brackets are balanced).
  // Consumes it and returns it with its starting position.
  std::pair<std::string_view, Position> take_until(
      std::initializer_list<std::string_view> stops);

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail(const std::string& message, Position at) const;

  std::string_view source() const { return text_; }

 private:
  void advance();
  void skip_space();
  Position pos_at(std::size_t offset) const;

  std::string_view text_;
  Position origin_;
  std::size_t offset_ = 0;
  Position here_;
  Token current_;
};

bool is_name_byte(unsigned char c);

}  // namespace soalg::text
