#pragma once

#include <string>
#include <vector>

#include "synthsql/dbforge/schema.hpp"

namespace synthsql {

// Kahn topological order over the FK dependency graph: every referenced
// (parent) table precedes its children; ties broken by table name.
// Throws CycleError listing one directed cycle.
std::vector<std::string> topo_order(const DatabaseSchema& schema);

// Creates the database file: tables in topological order with PK/FK
// constraints enabled, sample rows inserted. Throws ConstraintViolation /
// CycleError / IoError.
void initialize_database(const DatabaseSchema& schema, const std::string& path);

// Reads names, columns, keys and rows back from a database file.
DatabaseSchema read_back_schema(const std::string& path);

}  // namespace synthsql
