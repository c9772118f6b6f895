#include "synthsql/dbforge/forge.hpp"

#include <map>

#include "synthsql/errors.hpp"
#include "synthsql/gateway/extract.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += "; ";
    out += l;
  }
  return out;
}

DatabaseSchema parse_schema_response(const std::string& response) {
  auto value = extract_structured(response, ExpectedShape{false, {"scenario", "tables"}});
  return database_schema_from_json(value);
}

}  // namespace

nlohmann::json to_json(const SourceTable& source) {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t limit = std::min<std::size_t>(source.rows.size(), 5);
  for (std::size_t i = 0; i < limit; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& cell : source.rows[i]) row.push_back(cell == kNullCell ? "" : cell);
    rows.push_back(std::move(row));
  }
  return nlohmann::json{
      {"id", source.id}, {"header", source.header}, {"types", source.types}, {"rows", rows}};
}

DatabaseSchema generate_database(const SourceTable& source, Gateway& gateway, int attempts,
                                 std::vector<std::string>* call_ids) {
  if (source.header.empty() || source.rows.empty())
    throw std::invalid_argument("source table " + source.id + " needs a header and >=1 row");

  std::vector<std::string> failures;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    std::string call_id;
    std::string response = gateway.call(
        "database_generation",
        {{"source_table", to_json(source).dump(2)}, {"attempt", std::to_string(attempt)}},
        &call_id);
    if (call_ids) call_ids->push_back(call_id);
    try {
      DatabaseSchema schema = parse_schema_response(response);
      auto violations = validate_schema(schema);
      if (violations.empty()) {
        schema.id = schema.content_hash();
        return schema;
      }
      failures.push_back("attempt " + std::to_string(attempt) + ": " + join_lines(violations));
    } catch (const ExtractionError& e) {
      failures.push_back("attempt " + std::to_string(attempt) + ": " + e.what());
    } catch (const ConfigError& e) {
      failures.push_back("attempt " + std::to_string(attempt) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      failures.push_back("attempt " + std::to_string(attempt) + ": " + e.what());
    }
  }
  throw SchemaRejected("database generation for " + source.id + " failed validation: " +
                       join_lines(failures));
}

DatabaseSchema enhance_database(const DatabaseSchema& schema, Gateway& gateway, int attempts,
                                std::vector<std::string>* call_ids) {
  auto fk_count = [](const DatabaseSchema& s) {
    std::size_t n = 0;
    for (const auto& t : s.tables) n += t.foreign_keys.size();
    return n;
  };

  std::vector<std::string> failures;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    std::string call_id;
    std::string response = gateway.call(
        "database_enhancement",
        {{"schema", to_json(schema).dump(2)}, {"attempt", std::to_string(attempt)}}, &call_id);
    if (call_ids) call_ids->push_back(call_id);

    std::vector<std::string> diff;
    try {
      DatabaseSchema enhanced = parse_schema_response(response);
      // Rows missing values for newly added columns default to NULL; the
      // validator then rejects NULLs landing in non-nullable columns.
      for (auto& t : enhanced.tables)
        for (auto& row : t.sample_rows)
          while (row.size() < t.columns.size()) row.push_back(kNullCell);
      for (const auto& t : schema.tables) {
        const TableSchema* match = enhanced.find_table(t.name);
        if (!match) {
          diff.push_back("table " + t.name + " dropped");
          continue;
        }
        if (match->columns.size() < t.columns.size())
          diff.push_back("table " + t.name + " lost columns (" +
                         std::to_string(t.columns.size()) + " -> " +
                         std::to_string(match->columns.size()) + ")");
      }
      if (fk_count(enhanced) < fk_count(schema))
        diff.push_back("foreign-key edge count decreased (" + std::to_string(fk_count(schema)) +
                       " -> " + std::to_string(fk_count(enhanced)) + ")");
      auto violations = validate_schema(enhanced);
      diff.insert(diff.end(), violations.begin(), violations.end());
      if (diff.empty()) {
        enhanced.id = enhanced.content_hash();
        return enhanced;
      }
    } catch (const ExtractionError& e) {
      diff.push_back(e.what());
    } catch (const ConfigError& e) {
      diff.push_back(e.what());
    } catch (const nlohmann::json::exception& e) {
      diff.push_back(e.what());
    }
    failures.push_back("attempt " + std::to_string(attempt) + ": " + join_lines(diff));
  }
  throw EnhancementRejected("enhancement of " + schema.id + " rejected: " + join_lines(failures));
}

}  // namespace synthsql
