#include "synthsql/eval/execution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <thread>

#include "synthsql/dbforge/sqlite.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/eval/db_state.hpp"
#include "synthsql/sql/parser.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

constexpr double kFloatTolerance = 1e-6;

struct Cell {
  int type = 0;  // 0 null, 1 numeric, 2 text, 3 blob
  double num = 0.0;
  std::string text;
};

Cell to_cell(const SqliteValue& v) {
  Cell c;
  switch (v.kind) {
    case SqliteValue::Kind::Null: c.type = 0; break;
    case SqliteValue::Kind::Integer:
      c.type = 1;
      c.num = static_cast<double>(v.integer);
      break;
    case SqliteValue::Kind::Real:
      c.type = 1;
      c.num = v.real;
      break;
    case SqliteValue::Kind::Blob:
      c.type = 3;
      c.text = v.text;
      break;
    default:
      c.type = 2;
      c.text = v.text;
      break;
  }
  return c;
}

bool cell_less(const Cell& a, const Cell& b) {
  if (a.type != b.type) return a.type < b.type;  // NULL sentinel orders first
  if (a.type == 1) return a.num < b.num;
  return a.text < b.text;
}

bool cell_equal(const Cell& a, const Cell& b) {
  if (a.type != b.type) return false;
  if (a.type == 1) return std::fabs(a.num - b.num) <= kFloatTolerance;
  return a.text == b.text;
}

using CellRow = std::vector<Cell>;

bool row_less(const CellRow& a, const CellRow& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), cell_less);
}

bool row_equal(const CellRow& a, const CellRow& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!cell_equal(a[i], b[i])) return false;
  return true;
}

std::vector<CellRow> to_cells(const QueryResult& result) {
  std::vector<CellRow> rows;
  rows.reserve(result.rows.size());
  for (const auto& r : result.rows) {
    CellRow row;
    row.reserve(r.size());
    for (const auto& v : r) row.push_back(to_cell(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

bool results_equal(std::vector<CellRow> a, std::vector<CellRow> b, bool ordered) {
  if (a.size() != b.size()) return false;
  if (!a.empty() && !b.empty() && a[0].size() != b[0].size()) return false;
  if (!ordered) {
    std::sort(a.begin(), a.end(), row_less);
    std::sort(b.begin(), b.end(), row_less);
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!row_equal(a[i], b[i])) return false;
  return true;
}

bool is_select(const std::string& statement, bool* ordered) {
  try {
    sql::SqlTree tree = sql::parse_sql(statement, "sqlite");
    if (tree.kind == sql::StatementKind::Select) {
      if (ordered) *ordered = !tree.select->order_by.empty();
      return true;
    }
    return false;
  } catch (const std::exception&) {
    // fall back to the leading keyword; execution decides validity
    std::string head = to_lower(trim(statement).substr(0, 6));
    if (ordered) *ordered = to_lower(statement).find("order by") != std::string::npos;
    return head == "select" || head.rfind("with", 0) == 0;
  }
}

std::string scratch_copy(const std::string& db_path, const std::string& tag) {
  static std::atomic<unsigned long long> counter{0};
  std::string copy = db_path + "." + tag + "-" +
                     std::to_string(counter.fetch_add(1)) + "-" +
                     std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) %
                                    100000) +
                     ".tmp";
  copy_database_file(db_path, copy);
  return copy;
}

struct ScratchDb {
  std::string path;
  explicit ScratchDb(const std::string& db_path, const std::string& tag)
      : path(scratch_copy(db_path, tag)) {}
  ~ScratchDb() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

}  // namespace

int execution_match(const std::string& pred_sql, const std::string& gold_sql,
                    const std::string& db_path, double timeout_secs) {
  bool gold_ordered = false;
  bool gold_select = is_select(gold_sql, &gold_ordered);

  if (gold_select) {
    QueryResult gold_result;
    {
      ScratchDb gold_db(db_path, "gold");
      SqliteDb db(gold_db.path);
      if (auto error = db.run_guarded(gold_sql, timeout_secs, &gold_result))
        throw GoldFailure("gold query failed on " + db_path + ": " + *error);
    }
    QueryResult pred_result;
    {
      ScratchDb pred_db(db_path, "pred");
      SqliteDb db(pred_db.path);
      if (db.run_guarded(pred_sql, timeout_secs, &pred_result)) return 0;
    }
    return results_equal(to_cells(pred_result), to_cells(gold_result), gold_ordered) ? 1 : 0;
  }

  // DML/DDL: compare post-execution states on isolated copies
  ScratchDb gold_db(db_path, "gold");
  {
    SqliteDb db(gold_db.path);
    if (auto error = db.run_guarded(gold_sql, timeout_secs))
      throw GoldFailure("gold query failed on " + db_path + ": " + *error);
  }
  ScratchDb pred_db(db_path, "pred");
  {
    SqliteDb db(pred_db.path);
    if (db.run_guarded(pred_sql, timeout_secs)) return 0;
  }
  return snapshot_state(gold_db.path) == snapshot_state(pred_db.path) ? 1 : 0;
}

AccuracyReport execution_accuracy(const std::vector<EvalPair>& pairs,
                                  const std::string& breakdown_by, double timeout_secs,
                                  unsigned jobs) {
  AccuracyReport report;
  report.total = pairs.size();
  if (pairs.empty()) return report;

  std::vector<int> matches(pairs.size(), 0);
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    matches[i] = execution_match(pairs[i].pred_sql, pairs[i].gold_sql, pairs[i].db_path,
                                 timeout_secs);
  });

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    report.matched += static_cast<std::size_t>(matches[i]);
    if (breakdown_by.empty() || !pairs[i].labels) continue;
    const TaxonomyLabels& labels = *pairs[i].labels;
    std::vector<std::string> cats;
    if (breakdown_by == "core_intent") cats.push_back(name_of(labels.core_intent));
    else if (breakdown_by == "statement_type") cats.push_back(name_of(labels.statement_type));
    else if (breakdown_by == "syntax_structure")
      for (auto s : labels.syntax_structures) cats.push_back(name_of(s));
    else if (breakdown_by == "key_action")
      for (auto a : labels.key_actions) cats.push_back(name_of(a));
    for (const auto& c : cats) {
      auto& [m, t] = report.breakdown[c];
      m += static_cast<std::size_t>(matches[i]);
      t += 1;
    }
  }
  report.accuracy = double(report.matched) / double(report.total);
  return report;
}

}  // namespace synthsql
