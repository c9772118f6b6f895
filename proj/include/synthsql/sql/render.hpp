#pragma once

#include <string>

#include "synthsql/sql/ast.hpp"

namespace synthsql::sql {

// Renders a tree back to SQL text. render(parse_sql(s)) re-parses to a
// structurally equal tree.
std::string render(const SqlTree& tree);
std::string render_expr(const Expr& e);

// Structural equality ignoring byte offsets and token counts.
bool tree_equal(const SqlTree& a, const SqlTree& b);

}  // namespace synthsql::sql
