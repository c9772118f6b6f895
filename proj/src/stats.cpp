#include "synthsql/eval/stats.hpp"

#include <cstdio>
#include <set>

#include "synthsql/errors.hpp"

namespace synthsql {

CorpusStats corpus_stats(const std::vector<DatasetRecord>& records,
                         const sql::FunctionTable& functions,
                         const sql::TemporalFormats& temporal) {
  if (records.empty()) throw EmptyCorpus("corpus_stats: no records");
  CorpusStats stats;
  stats.sql_count = records.size();
  std::set<std::string> databases;
  std::size_t tables_sum = 0, tokens_sum = 0;
  for (const auto& r : records) {
    if (!r.db_id.empty()) databases.insert(r.db_id);
    sql::SqlFeatureSummary summary;
    try {
      summary = sql::summarize(r.question, r.sql, "sqlite", functions, temporal);
    } catch (const ParseError& e) {
      throw ParseError(e.offset, e.expected,
                       "record " + r.id + ": " + std::string(e.what()));
    }
    tables_sum += static_cast<std::size_t>(summary.distinct_table_count);
    tokens_sum += static_cast<std::size_t>(summary.token_count);
    stats.function_count += static_cast<std::size_t>(summary.function_count);
    stats.join_count += static_cast<std::size_t>(summary.join_count);
    stats.window_function_count += static_cast<std::size_t>(summary.window_function_count);
    stats.cte_count += static_cast<std::size_t>(summary.cte_count);
    stats.subquery_count += static_cast<std::size_t>(summary.subquery_count);
  }
  stats.database_count = databases.size();
  stats.tables_per_sql = double(tables_sum) / double(stats.sql_count);
  stats.tokens_per_sql = double(tokens_sum) / double(stats.sql_count);
  stats.functions_per_sql = double(stats.function_count) / double(stats.sql_count);
  return stats;
}

nlohmann::json to_json(const CorpusStats& stats) {
  return nlohmann::json{{"database_count", stats.database_count},
                        {"sql_count", stats.sql_count},
                        {"tables_per_sql", stats.tables_per_sql},
                        {"tokens_per_sql", stats.tokens_per_sql},
                        {"functions_per_sql", stats.functions_per_sql},
                        {"join_count", stats.join_count},
                        {"window_function_count", stats.window_function_count},
                        {"cte_count", stats.cte_count},
                        {"subquery_count", stats.subquery_count},
                        {"function_count", stats.function_count}};
}

std::string format_stats_table(const CorpusStats& stats) {
  char buf[96];
  std::string out = "Metric                      Value\n";
  auto row_u = [&](const char* name, std::size_t v) {
    std::snprintf(buf, sizeof(buf), "%-26s %8zu\n", name, v);
    out += buf;
  };
  auto row_d = [&](const char* name, double v) {
    std::snprintf(buf, sizeof(buf), "%-26s %8.2f\n", name, v);
    out += buf;
  };
  row_u("Databases", stats.database_count);
  row_u("SQL queries", stats.sql_count);
  row_d("Tables per SQL", stats.tables_per_sql);
  row_d("Tokens per SQL", stats.tokens_per_sql);
  row_d("Functions per SQL", stats.functions_per_sql);
  row_u("Joins", stats.join_count);
  row_u("Window functions", stats.window_function_count);
  row_u("CTEs", stats.cte_count);
  row_u("Subqueries", stats.subquery_count);
  row_u("Functions", stats.function_count);
  return out;
}

}  // namespace synthsql
