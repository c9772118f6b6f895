#pragma once

#include <string>

#include "synthsql/sql/ast.hpp"

namespace synthsql::sql {

// Parses one statement of the embedded-database dialect and resolves
// column-reference scopes. Throws ParseError / UnsupportedFeature.
SqlTree parse_sql(const std::string& text, const std::string& dialect = "sqlite");

}  // namespace synthsql::sql
