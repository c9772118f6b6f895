#include "synthsql/sql/lexer.hpp"

#include <cctype>
#include <unordered_set>

#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql::sql {

namespace {

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kw = {
      "SELECT", "FROM", "WHERE", "GROUP", "BY", "HAVING", "ORDER", "LIMIT",
      "OFFSET", "AS", "ON", "JOIN", "INNER", "LEFT", "RIGHT", "FULL", "OUTER",
      "CROSS", "NATURAL", "UNION", "INTERSECT", "EXCEPT", "ALL", "DISTINCT",
      "WITH", "RECURSIVE", "INSERT", "INTO", "VALUES", "UPDATE", "SET",
      "DELETE", "ALTER", "TABLE", "ADD", "COLUMN", "RENAME", "DROP", "TO",
      "AND", "OR", "NOT", "IN", "LIKE", "ESCAPE", "BETWEEN", "IS", "NULL",
      "EXISTS", "CASE", "WHEN", "THEN", "ELSE", "END", "CAST", "OVER",
      "PARTITION", "ASC", "DESC", "TRUE", "FALSE", "DEFAULT", "CREATE",
      "DROP", "TRUNCATE", "REPLACE", "PRAGMA", "EXPLAIN", "VACUUM", "GLOB",
  };
  return kw;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> lex(const std::string& sql) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = sql.size();
  while (i < n) {
    char c = sql[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '-' && i + 1 < n && sql[i + 1] == '-') {
      while (i < n && sql[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && sql[i + 1] == '*') {
      i += 2;
      while (i + 1 < n && !(sql[i] == '*' && sql[i + 1] == '/')) ++i;
      if (i + 1 >= n) throw ParseError(start, "*/", "unterminated block comment");
      i += 2;
      continue;
    }
    if (c == '\'') {
      std::string value;
      ++i;
      bool closed = false;
      while (i < n) {
        if (sql[i] == '\'') {
          if (i + 1 < n && sql[i + 1] == '\'') {
            value.push_back('\'');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        value.push_back(sql[i++]);
      }
      if (!closed) throw ParseError(start, "'", "unterminated string literal");
      out.push_back({TokenKind::String, value, "", start});
      continue;
    }
    if (c == '"' || c == '`' || c == '[') {
      char close = c == '[' ? ']' : c;
      std::string name;
      ++i;
      bool closed = false;
      while (i < n) {
        if (sql[i] == close) {
          ++i;
          closed = true;
          break;
        }
        name.push_back(sql[i++]);
      }
      if (!closed) throw ParseError(start, std::string(1, close), "unterminated quoted identifier");
      Token t{TokenKind::Identifier, name, "", start};
      for (char& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      t.upper = name;
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(sql[i + 1])))) {
      std::string num;
      bool seen_dot = false, seen_exp = false;
      while (i < n) {
        char d = sql[i];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          num.push_back(d);
          ++i;
        } else if (d == '.' && !seen_dot && !seen_exp) {
          seen_dot = true;
          num.push_back(d);
          ++i;
        } else if ((d == 'e' || d == 'E') && !seen_exp && !num.empty()) {
          seen_exp = true;
          num.push_back(d);
          ++i;
          if (i < n && (sql[i] == '+' || sql[i] == '-')) num.push_back(sql[i++]);
        } else {
          break;
        }
      }
      out.push_back({TokenKind::Number, num, "", start});
      continue;
    }
    if (is_ident_start(c)) {
      std::string word;
      while (i < n && is_ident_char(sql[i])) word.push_back(sql[i++]);
      std::string up = word;
      for (char& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      if (keywords().count(up)) {
        out.push_back({TokenKind::Keyword, word, up, start});
      } else {
        out.push_back({TokenKind::Identifier, word, up, start});
      }
      continue;
    }
    // multi-char operators first
    auto two = i + 1 < n ? sql.substr(i, 2) : std::string();
    if (two == "<>" || two == "!=" || two == "<=" || two == ">=" || two == "||" ||
        two == "->") {
      if (two == "->" && i + 2 < n && sql[i + 2] == '>') {
        out.push_back({TokenKind::Operator, "->>", "", start});
        i += 3;
        continue;
      }
      out.push_back({TokenKind::Operator, two, "", start});
      i += 2;
      continue;
    }
    static const std::string singles = "(),.*=<>+-/%;";
    if (singles.find(c) != std::string::npos) {
      out.push_back({TokenKind::Operator, std::string(1, c), "", start});
      ++i;
      continue;
    }
    throw ParseError(start, "", std::string("illegal character '") + c + "'");
  }
  out.push_back({TokenKind::End, "", "", n});
  return out;
}

}  // namespace synthsql::sql
