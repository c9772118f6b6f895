#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synthsql/records.hpp"

namespace synthsql {

// 1 when the prediction's execution result (SELECT: multiset of rows, row
// order only when the gold query has a top-level ORDER BY) or post-execution
// database state (DML/DDL) equals the gold query's; 0 otherwise. Throws
// GoldFailure when the gold query itself fails.
int execution_match(const std::string& pred_sql, const std::string& gold_sql,
                    const std::string& db_path, double timeout_secs = 10.0);

struct EvalPair {
  std::string id;
  std::string pred_sql;
  std::string gold_sql;
  std::string db_path;
  std::optional<TaxonomyLabels> labels;  // for breakdowns
};

struct AccuracyReport {
  double accuracy = 0.0;
  std::size_t matched = 0;
  std::size_t total = 0;
  // category name -> (matched, total); present when a breakdown was asked
  std::map<std::string, std::pair<std::size_t, std::size_t>> breakdown;
};

// breakdown_by: "" | "core_intent" | "statement_type" | "syntax_structure" |
// "key_action" (set dimensions attribute a pair to every present category).
AccuracyReport execution_accuracy(const std::vector<EvalPair>& pairs,
                                  const std::string& breakdown_by = "",
                                  double timeout_secs = 10.0, unsigned jobs = 1);

}  // namespace synthsql
