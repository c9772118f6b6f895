#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace synthsql {

// Expected top-level shape of a structured response.
struct ExpectedShape {
  bool is_list = false;
  std::vector<std::string> required_fields;  // for objects
};

// Locates the first well-formed JSON block in a model response, stripping
// markdown fences and surrounding prose. Validates required fields.
// Throws ExtractionError.
nlohmann::json extract_structured(const std::string& response, const ExpectedShape& shape);

}  // namespace synthsql
