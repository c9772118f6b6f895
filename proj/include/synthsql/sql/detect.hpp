#pragma once

#include <string>
#include <vector>

#include "synthsql/sql/ast.hpp"
#include "synthsql/sql/function_table.hpp"
#include "synthsql/taxonomy/categories.hpp"

namespace synthsql::sql {

// Accepted formats for hardcoded temporal literals. Entries use the
// placeholder spelling from the config file (YYYY-MM-DD etc).
struct TemporalFormats {
  std::vector<std::string> formats = {"YYYY-MM-DD", "YYYY-MM-DD HH:MM:SS", "HH:MM:SS", "YYYY"};
  bool matches(const std::string& literal) const;
};

struct SqlFeatureSummary {
  StatementType statement_type = StatementType::Select;
  StructureSet syntax_structures;
  ActionSet key_actions;
  int distinct_table_count = 0;
  int token_count = 1;
  int function_count = 0;
  int join_count = 0;
  int window_function_count = 0;
  int cte_count = 0;
  int subquery_count = 0;
  std::vector<std::string> warnings;
};

// Throws UnsupportedStatement for top-level verbs outside the five types.
StatementType detect_statement_type(const SqlTree& tree);

StructureSet detect_syntax_structures(const SqlTree& tree,
                                      std::vector<std::string>* warnings = nullptr);

ActionSet detect_key_actions(const SqlTree& tree, const FunctionTable& functions,
                             const TemporalFormats& temporal,
                             std::vector<std::string>* warnings = nullptr);

SqlFeatureSummary summarize(const std::string& question, const std::string& sql,
                            const std::string& dialect, const FunctionTable& functions,
                            const TemporalFormats& temporal);

SqlFeatureSummary summarize_tree(const SqlTree& tree, const FunctionTable& functions,
                                 const TemporalFormats& temporal);

}  // namespace synthsql::sql
