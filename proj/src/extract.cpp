#include "synthsql/gateway/extract.hpp"

#include "synthsql/errors.hpp"

namespace synthsql {

namespace {

// Scans for the first balanced {...} or [...] block that parses as JSON.
nlohmann::json first_json_block(const std::string& text, bool want_list) {
  char open = want_list ? '[' : '{';
  char close = want_list ? ']' : '}';
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != open) continue;
    int depth = 0;
    bool in_string = false;
    for (std::size_t j = i; j < text.size(); ++j) {
      char c = text[j];
      if (in_string) {
        if (c == '\\') ++j;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == open) ++depth;
      else if (c == close) {
        if (--depth == 0) {
          auto parsed = nlohmann::json::parse(text.substr(i, j - i + 1), nullptr, false);
          if (!parsed.is_discarded()) return parsed;
          break;  // malformed block, keep scanning from the next opener
        }
      }
    }
  }
  return nlohmann::json();
}

std::string strip_fences(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 3, "```") == 0) {
      i += 3;
      while (i < text.size() && text[i] != '\n') ++i;  // drop the language tag
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

}  // namespace

nlohmann::json extract_structured(const std::string& response, const ExpectedShape& shape) {
  nlohmann::json value = first_json_block(response, shape.is_list);
  if (value.is_null()) value = first_json_block(strip_fences(response), shape.is_list);
  if (value.is_null())
    throw ExtractionError("no structured block found in response: " +
                          response.substr(0, std::min<std::size_t>(response.size(), 120)));
  if (shape.is_list) {
    if (!value.is_array()) throw ExtractionError("expected a list");
    return value;
  }
  if (!value.is_object()) throw ExtractionError("expected an object");
  for (const auto& field : shape.required_fields) {
    if (!value.contains(field))
      throw ExtractionError("missing required field '" + field + "' in: " + value.dump());
  }
  return value;
}

}  // namespace synthsql
