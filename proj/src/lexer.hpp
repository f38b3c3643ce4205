#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "akb/parser.hpp"

namespace akb::detail {

enum class Tok {
  Ident,
  Number,
  String,
  OccursIn,  // occurs-in
  Wildcard,  // _
  Rest,      // _*
  LBrace, RBrace, LParen, RParen, LBracket, RBracket, Lt, Gt, Geq,
  Comma, Semi, Colon, DoubleColon, Dot, Bar, Plus, Star, Bang, Question,
  Eq, At, Implies, AndAnd, OrOr,
  End,
};

std::string_view describe(Tok kind);

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier / number / unescaped string contents
  std::size_t line = 1;
  std::size_t column = 1;
};

// Throws ParseError{SyntaxError} on an unexpected character or an
// unterminated string.
std::vector<Token> lex(std::string_view text, const std::string& file);

}  // namespace akb::detail
