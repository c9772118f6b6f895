#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "synthsql/records.hpp"
#include "synthsql/sql/detect.hpp"

namespace synthsql {

struct CorpusStats {
  std::size_t database_count = 0;
  std::size_t sql_count = 0;
  double tables_per_sql = 0.0;
  double tokens_per_sql = 0.0;
  double functions_per_sql = 0.0;
  std::size_t join_count = 0;
  std::size_t window_function_count = 0;
  std::size_t cte_count = 0;
  std::size_t subquery_count = 0;
  std::size_t function_count = 0;
};

// Propagates ParseError annotated with the offending record id.
CorpusStats corpus_stats(const std::vector<DatasetRecord>& records,
                         const sql::FunctionTable& functions,
                         const sql::TemporalFormats& temporal);

nlohmann::json to_json(const CorpusStats& stats);
std::string format_stats_table(const CorpusStats& stats);

}  // namespace synthsql
