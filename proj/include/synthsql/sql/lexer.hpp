#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace synthsql::sql {

enum class TokenKind {
  Keyword,     // recognized SQL keyword, normalized upper-case in `upper`
  Identifier,  // bare or quoted identifier
  Number,      // integer or float literal
  String,      // 'quoted' string literal, value unescaped in `text`
  Operator,    // punctuation / operators
  End,
};

struct Token {
  TokenKind kind;
  std::string text;   // raw value (identifier name, string value, number text, op)
  std::string upper;  // upper-cased text for keywords/identifiers
  std::size_t offset; // byte offset into the input
};

// Tokenizes one SQL statement. Throws ParseError on unterminated strings
// or illegal characters.
std::vector<Token> lex(const std::string& sql);

}  // namespace synthsql::sql
