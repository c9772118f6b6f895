#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace synthsql {

struct ColumnSchema {
  std::string name;
  std::string description;
  std::string type;  // dialect type: INTEGER, REAL, TEXT, ...
  bool nullable = true;
};

struct ForeignKey {
  std::vector<std::string> local_columns;
  std::string referenced_table;
  std::vector<std::string> referenced_columns;
};

// Sample-row cell; empty optional = NULL.
using Row = std::vector<std::string>;  // "\0NULL" sentinel encodes NULL

inline const std::string kNullCell = "\x01NULL";

struct TableSchema {
  std::string name;
  std::string description;
  std::vector<ColumnSchema> columns;
  std::vector<std::string> primary_key;
  std::vector<ForeignKey> foreign_keys;
  std::vector<Row> sample_rows;

  const ColumnSchema* find_column(const std::string& name) const;
};

struct DatabaseSchema {
  std::string id;
  std::string scenario;  // business-scenario description
  std::vector<TableSchema> tables;

  const TableSchema* find_table(const std::string& name) const;
  // Stable content hash of the canonicalized schema.
  std::string content_hash() const;
};

nlohmann::json to_json(const ColumnSchema&);
nlohmann::json to_json(const TableSchema&);
nlohmann::json to_json(const DatabaseSchema&);
DatabaseSchema database_schema_from_json(const nlohmann::json&);

// Pure structural validation: name uniqueness, key existence, FK arity and
// type compatibility, sample-row conformance, acyclicity.
std::vector<std::string> validate_schema(const DatabaseSchema& schema);

// Source-table input (WikiSQL release layout): header, type tags, rows.
struct SourceTable {
  std::string id;
  std::vector<std::string> header;
  std::vector<std::string> types;  // "text" | "real"
  std::vector<Row> rows;
};

std::vector<SourceTable> load_source_tables(const std::string& path);

}  // namespace synthsql
