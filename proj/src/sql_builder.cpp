#include "synthsql/gateway/sql_builder.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <vector>

#include "synthsql/taxonomy/classify.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

std::string qi(const std::string& name) { return "\"" + name + "\""; }

bool has(const StructureSet& s, SyntaxStructure x) { return s.count(x) > 0; }
bool has(const ActionSet& a, KeyAction x) { return a.count(x) > 0; }

bool is_numeric_type(const std::string& type) {
  std::string t = to_lower(type);
  return t.rfind("int", 0) == 0 || t.rfind("real", 0) == 0 || t.rfind("numeric", 0) == 0 ||
         t.rfind("float", 0) == 0 || t.rfind("double", 0) == 0;
}

// Select-list expression exercising exactly one key action. `col` is a
// fully qualified column reference; pass an empty string for
// literal-only contexts (INSERT VALUES).
std::string action_expr(KeyAction action, const std::string& col, std::uint64_t variant) {
  std::string c = col.empty() ? "'x'" : col;
  switch (action) {
    case KeyAction::SpecificTime:
      return "'2021-01-0" + std::to_string(variant % 9 + 1) + "'";
    case KeyAction::WildcardFiltering:
      return c + " LIKE '%a%'";
    case KeyAction::TimeFunction:
      return "date('now')";
    case KeyAction::JsonFunction:
      return "json_extract('{\"k\": 3}', '$.k')";
    case KeyAction::WindowFunction:
      return "SUM(" + (col.empty() ? std::string("1") : col) + ") OVER ()";
    case KeyAction::StringFunction:
      return "upper(" + c + ")";
    case KeyAction::Cast:
      return "CAST(" + c + " AS TEXT)";
    case KeyAction::ConditionJudgement:
      return "CASE WHEN " + c + " IS NULL THEN 0 ELSE 1 END";
    case KeyAction::AggregateFunction:
      return "COUNT(*)";
  }
  return c;
}

struct Tables {
  const TableSchema* t1 = nullptr;
  const TableSchema* t2 = nullptr;
  const TableSchema* t3 = nullptr;
};

Tables pick_tables(const DatabaseSchema& schema) {
  Tables t;
  std::vector<const TableSchema*> usable;
  for (const auto& table : schema.tables)
    if (!table.columns.empty()) usable.push_back(&table);
  if (usable.empty()) return t;
  t.t1 = usable[0];
  t.t2 = usable[1 % usable.size()];
  t.t3 = usable[2 % usable.size()];
  return t;
}

BuiltPair unrealizable(const std::string& reason) {
  BuiltPair out;
  out.reason = reason;
  return out;
}

BuiltPair build_select(const Combination& combo, const Tables& t, std::uint64_t variant) {
  const StructureSet& S = combo.labels.syntax_structures;
  const ActionSet& A = combo.labels.key_actions;
  const std::string col1 = "a0." + qi(t.t1->columns[0].name);
  const std::string col2 = qi(t.t2->columns[0].name);

  BuiltPair out;
  out.realizable = true;

  bool scalar = has(S, SyntaxStructure::ScalarSubquery);
  bool corr = has(S, SyntaxStructure::CorrelatedSubquery);
  bool where = has(S, SyntaxStructure::Where);

  std::vector<std::string> items;
  items.push_back(col1);
  if (scalar) {
    std::string inner = corr ? col1 : "b0." + col2;
    items.push_back("(SELECT " + inner + " FROM " + qi(t.t2->name) + " AS b0)");
  }
  std::string corr_in =
      col1 + " IN (SELECT " + col1 + " FROM " + qi(t.t2->name) + " AS b1)";
  if (corr && !scalar && !where) items.push_back(corr_in);
  for (KeyAction a : A) items.push_back(action_expr(a, col1, variant));

  std::string from = qi(t.t1->name) + " AS a0";
  if (has(S, SyntaxStructure::InnerJoin))
    from += " JOIN " + qi(t.t2->name) + " AS j1 ON " + col1 + " = j1." + col2;
  if (has(S, SyntaxStructure::CrossJoin)) from += " CROSS JOIN " + qi(t.t3->name) + " AS j2";
  if (has(S, SyntaxStructure::OuterJoin))
    from += " LEFT JOIN " + qi(t.t2->name) + " AS j3 ON " + col1 + " = j3." + col2;

  std::string sql;
  if (has(S, SyntaxStructure::CommonTableExpression))
    sql += "WITH helper_cte AS (SELECT b9." + col2 + " FROM " + qi(t.t2->name) + " AS b9) ";
  sql += "SELECT ";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) sql += ", ";
    sql += items[i];
  }
  sql += " FROM " + from;
  if (where) {
    sql += " WHERE ";
    sql += (corr && !scalar) ? corr_in : col1 + " IS NOT NULL";
  }
  if (has(S, SyntaxStructure::GroupBy)) sql += " GROUP BY " + col1;
  if (has(S, SyntaxStructure::Having)) sql += " HAVING " + col1 + " IS NOT NULL";

  int side = 0;
  for (SyntaxStructure op :
       {SyntaxStructure::Union, SyntaxStructure::Intersect, SyntaxStructure::Except}) {
    if (!has(S, op)) continue;
    ++side;
    std::string alias = "u" + std::to_string(side);
    const char* kw = op == SyntaxStructure::Union      ? " UNION SELECT "
                     : op == SyntaxStructure::Intersect ? " INTERSECT SELECT "
                                                        : " EXCEPT SELECT ";
    sql += kw;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) sql += ", ";
      sql += alias + "." + col2;
    }
    sql += " FROM " + qi(t.t2->name) + " AS " + alias;
  }

  if (has(S, SyntaxStructure::OrderBy)) sql += " ORDER BY 1";
  if (has(S, SyntaxStructure::LimitOffset)) sql += " LIMIT 3";

  out.sql = sql;
  return out;
}

// Table whose rows no other table references (safe DELETE target).
const TableSchema* leaf_table(const DatabaseSchema& schema) {
  for (const auto& cand : schema.tables) {
    if (cand.columns.empty()) continue;
    bool referenced = false;
    for (const auto& other : schema.tables)
      for (const auto& fk : other.foreign_keys)
        if (to_lower(fk.referenced_table) == to_lower(cand.name)) referenced = true;
    if (!referenced) return &cand;
  }
  return nullptr;
}

// Table with no outgoing foreign keys (safe INSERT target).
const TableSchema* root_table(const DatabaseSchema& schema) {
  for (const auto& cand : schema.tables)
    if (!cand.columns.empty() && cand.foreign_keys.empty()) return &cand;
  return nullptr;
}

// Columns of `table` playing no role in its primary key or any foreign key.
std::vector<const ColumnSchema*> safe_columns(const DatabaseSchema& schema,
                                              const TableSchema& table) {
  std::set<std::string> keyed;
  for (const auto& c : table.primary_key) keyed.insert(to_lower(c));
  for (const auto& fk : table.foreign_keys)
    for (const auto& c : fk.local_columns) keyed.insert(to_lower(c));
  for (const auto& other : schema.tables)
    for (const auto& fk : other.foreign_keys)
      if (to_lower(fk.referenced_table) == to_lower(table.name))
        for (const auto& c : fk.referenced_columns) keyed.insert(to_lower(c));
  std::vector<const ColumnSchema*> out;
  for (const auto& c : table.columns)
    if (!keyed.count(to_lower(c.name))) out.push_back(&c);
  return out;
}

BuiltPair build_insert(const Combination& combo, const DatabaseSchema& schema,
                       std::uint64_t variant) {
  const StructureSet& S = combo.labels.syntax_structures;
  const ActionSet& A = combo.labels.key_actions;
  if (!S.empty()) return unrealizable("INSERT cannot carry syntax structures");
  if (has(A, KeyAction::AggregateFunction) || has(A, KeyAction::WindowFunction))
    return unrealizable("aggregate/window functions are invalid inside INSERT VALUES");
  const TableSchema* t = root_table(schema);
  if (!t) return unrealizable("no foreign-key-free table to insert into");

  std::set<std::string> pk;
  for (const auto& c : t->primary_key) pk.insert(to_lower(c));
  std::vector<KeyAction> pending(A.begin(), A.end());
  std::size_t next_action = 0;
  std::vector<std::string> values;
  for (const auto& c : t->columns) {
    if (pk.count(to_lower(c.name))) {
      values.push_back(is_numeric_type(c.type) ? std::to_string(900000 + variant % 1000)
                                               : "'zz_" + std::to_string(variant % 1000) + "'");
    } else if (next_action < pending.size()) {
      values.push_back(action_expr(pending[next_action++], "", variant));
    } else {
      values.push_back(is_numeric_type(c.type) ? "0" : "'x'");
    }
  }
  if (next_action < pending.size())
    return unrealizable("not enough non-key columns to host all key actions");

  BuiltPair out;
  out.realizable = true;
  out.sql = "INSERT INTO " + qi(t->name) + " VALUES (";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.sql += ", ";
    out.sql += values[i];
  }
  out.sql += ")";
  return out;
}

BuiltPair build_update(const Combination& combo, const DatabaseSchema& schema,
                       std::uint64_t variant) {
  const StructureSet& S = combo.labels.syntax_structures;
  const ActionSet& A = combo.labels.key_actions;
  for (SyntaxStructure s : S)
    if (s != SyntaxStructure::Where && s != SyntaxStructure::ScalarSubquery &&
        s != SyntaxStructure::CorrelatedSubquery)
      return unrealizable("UPDATE supports only Where and subquery structures");
  if (has(A, KeyAction::AggregateFunction) || has(A, KeyAction::WindowFunction))
    return unrealizable("aggregate/window functions are invalid inside UPDATE");

  const TableSchema* target = nullptr;
  std::vector<const ColumnSchema*> safe;
  for (const auto& cand : schema.tables) {
    auto cols = safe_columns(schema, cand);
    if (!cols.empty()) {
      target = &cand;
      safe = cols;
      break;
    }
  }
  if (!target) return unrealizable("no key-free column to update");
  const TableSchema* other = nullptr;
  for (const auto& cand : schema.tables)
    if (&cand != target && !cand.columns.empty()) other = &cand;
  if (!other) other = target;

  bool scalar = has(S, SyntaxStructure::ScalarSubquery);
  bool corr = has(S, SyntaxStructure::CorrelatedSubquery);
  bool where = has(S, SyntaxStructure::Where);
  const std::string self_col = qi(target->name) + "." + qi(target->columns[0].name);
  const std::string other_col = "b0." + qi(other->columns[0].name);
  std::string corr_in =
      self_col + " IN (SELECT " + self_col + " FROM " + qi(other->name) + " AS b2)";

  std::vector<std::string> assignments;
  std::vector<KeyAction> pending(A.begin(), A.end());
  std::size_t slot = 0;
  if (scalar) {
    std::string inner = corr ? self_col : other_col;
    if (slot >= safe.size()) return unrealizable("not enough key-free columns");
    assignments.push_back(qi(safe[slot++]->name) + " = (SELECT " + inner + " FROM " +
                          qi(other->name) + " AS b0)");
  } else if (corr && !where) {
    if (slot >= safe.size()) return unrealizable("not enough key-free columns");
    assignments.push_back(qi(safe[slot++]->name) + " = " + corr_in);
  }
  for (KeyAction a : pending) {
    if (slot >= safe.size()) return unrealizable("not enough key-free columns for all actions");
    assignments.push_back(qi(safe[slot++]->name) + " = " + action_expr(a, self_col, variant));
  }
  if (assignments.empty()) assignments.push_back(qi(safe[0]->name) + " = 'updated'");

  BuiltPair out;
  out.realizable = true;
  out.sql = "UPDATE " + qi(target->name) + " SET ";
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (i) out.sql += ", ";
    out.sql += assignments[i];
  }
  if (where) {
    out.sql += " WHERE ";
    out.sql += (corr && !scalar) ? corr_in : self_col + " IS NOT NULL";
  }
  return out;
}

BuiltPair build_delete(const Combination& combo, const DatabaseSchema& schema,
                       std::uint64_t variant) {
  const StructureSet& S = combo.labels.syntax_structures;
  const ActionSet& A = combo.labels.key_actions;
  for (SyntaxStructure s : S)
    if (s != SyntaxStructure::Where && s != SyntaxStructure::ScalarSubquery &&
        s != SyntaxStructure::CorrelatedSubquery)
      return unrealizable("DELETE supports only Where and subquery structures");
  bool where = has(S, SyntaxStructure::Where);
  if (!where && S.size() > 0) return unrealizable("DELETE subqueries need a WHERE clause");
  if (!where && !A.empty()) return unrealizable("DELETE key actions need a WHERE clause");
  if (has(A, KeyAction::AggregateFunction) || has(A, KeyAction::WindowFunction))
    return unrealizable("aggregate/window functions are invalid inside DELETE");

  const TableSchema* t = leaf_table(schema);
  if (!t) return unrealizable("every table is referenced by a foreign key");
  const TableSchema* other = nullptr;
  for (const auto& cand : schema.tables)
    if (&cand != t && !cand.columns.empty()) other = &cand;
  if (!other) other = t;

  const std::string self_col = qi(t->name) + "." + qi(t->columns[0].name);
  bool scalar = has(S, SyntaxStructure::ScalarSubquery);
  bool corr = has(S, SyntaxStructure::CorrelatedSubquery);

  BuiltPair out;
  out.realizable = true;
  out.sql = "DELETE FROM " + qi(t->name);
  if (where) {
    std::vector<std::string> conds;
    if (scalar) {
      std::string inner = corr ? self_col : "b0." + qi(other->columns[0].name);
      conds.push_back(self_col + " = (SELECT " + inner + " FROM " + qi(other->name) + " AS b0)");
    } else if (corr) {
      conds.push_back(self_col + " IN (SELECT " + self_col + " FROM " + qi(other->name) +
                      " AS b2)");
    } else if (A.empty()) {
      conds.push_back(self_col + " IS NOT NULL");
    }
    for (KeyAction a : A) conds.push_back("(" + action_expr(a, self_col, variant) + ") IS NOT NULL");
    out.sql += " WHERE ";
    for (std::size_t i = 0; i < conds.size(); ++i) {
      if (i) out.sql += " AND ";
      out.sql += conds[i];
    }
  }
  return out;
}

BuiltPair build_alter(const Combination& combo, const Tables& t, std::uint64_t variant) {
  if (!combo.labels.syntax_structures.empty() || !combo.labels.key_actions.empty())
    return unrealizable(
        "ALTER ADD COLUMN cannot carry structures or actions (non-constant defaults are "
        "rejected by the engine)");
  BuiltPair out;
  out.realizable = true;
  out.sql = "ALTER TABLE " + qi(t.t1->name) + " ADD COLUMN " +
            qi("added_col_" + std::to_string(variant % 7)) + " TEXT";
  return out;
}

// --- question synthesis ---------------------------------------------------

struct IntentTemplates {
  const char* plain;
  const char* rich[3];  // %T table, %C column, %S scenario words
};

const IntentTemplates& templates_for(CoreIntent intent) {
  static const IntentTemplates table[] = {
      /* BasicQuery */
      {"List every value stored in the table.",
       {"List every %C entry kept in %T.", "Retrieve all %C values from %T %S.",
        "Show all rows of %T."}},
      /* ConditionFiltering */
      {"Which records match only the given condition.",
       {"Which %T rows match only the stated condition?",
        "Find %T entries whose %C is present %S.", "Pick out %T rows that have a usable %C."}},
      /* SortingAndPagination */
      {"Show the sorted values from the table.",
       {"Show the sorted %C values from %T.", "Arrange %T by %C in a fixed order %S.",
        "Give the top three %C values of %T."}},
      /* BasicAggregation */
      {"How many entries does the table hold.",
       {"How many rows does %T hold?", "Count the %C entries of %T %S.",
        "What is the total number of %T rows?"}},
      /* TimeOperation */
      {"Which entries fall on the given date.",
       {"Which %T rows fall on the given date?", "Pull %T entries recorded on that date %S.",
        "What date values appear in %T?"}},
      /* FormatTransformation */
      {"Convert the stored values for display.",
       {"Convert the %C values of %T for display.", "Cast the %C entries of %T to plain strings %S.",
        "Reformat the %C values held in %T."}},
      /* SetOperation */
      {"Give the combined results from the two lists.",
       {"Give the combined results across %T.", "Merge the union of rows drawn from %T %S.",
        "Which values appear in both %T partitions?"}},
      /* DataChange */
      {"Apply the requested change to the records.",
       {"Apply the requested change to %T.", "Amend the %C values stored in %T %S.",
        "Put the new %T entry in place."}},
      /* StructureChange */
      {"Adjust the table layout.",
       {"Adjust the layout of %T.", "Extend %T with an extra %C slot %S.",
        "Reshape the definition of %T."}},
      /* DistributionAnalysis */
      {"What is the distribution of values in the table.",
       {"What is the distribution of %C across %T?", "Describe the frequency of %C values in %T %S.",
        "Give the %C breakdown by group for %T."}},
      /* AdvancedStatistics */
      {"Rank the values recorded in the table.",
       {"Rank the %C values recorded in %T.", "Compute a running total of %C over %T %S.",
        "What is the cumulative %C figure for %T?"}},
      /* TrendAnalysis */
      {"What is the trend of values in the table.",
       {"What is the trend of %C in %T?", "How does %C in %T move over time %S?",
        "Summarize the growth pattern of %C within %T."}},
      /* BusinessCalculation */
      {"What revenue comes from these records.",
       {"What revenue comes from %T?", "Work out the profit implied by %C in %T %S.",
        "Derive the margin captured in %T."}},
      /* BusinessRule */
      {"Which entries are eligible under the rules.",
       {"Which %T entries are eligible under the rules?",
        "Apply the policy check to the %C values of %T %S.",
        "Flag the %T rows that qualify."}},
  };
  switch (intent) {
    case CoreIntent::BasicQuery: return table[0];
    case CoreIntent::ConditionFiltering: return table[1];
    case CoreIntent::SortingAndPagination: return table[2];
    case CoreIntent::BasicAggregation: return table[3];
    case CoreIntent::TimeOperation: return table[4];
    case CoreIntent::FormatTransformation: return table[5];
    case CoreIntent::SetOperation: return table[6];
    case CoreIntent::DataChange: return table[7];
    case CoreIntent::StructureChange: return table[8];
    case CoreIntent::DistributionAnalysis: return table[9];
    case CoreIntent::AdvancedStatistics: return table[10];
    case CoreIntent::TrendAnalysis: return table[11];
    case CoreIntent::BusinessCalculation: return table[12];
    case CoreIntent::BusinessRule: return table[13];
  }
  return table[0];
}

std::string sanitize_word(const std::string& word, CoreIntent intent, const char* fallback) {
  if (word.empty() || triggers_other_intent(word, intent)) return fallback;
  return word;
}

std::string scenario_words(const DatabaseSchema& schema, CoreIntent intent,
                           std::uint64_t variant) {
  std::vector<std::string> words;
  std::string cur;
  for (char ch : schema.scenario + " ") {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else {
      if (cur.size() >= 4 && !triggers_other_intent(cur, intent)) words.push_back(cur);
      cur.clear();
    }
  }
  if (words.empty()) return "in this scenario";
  std::string a = words[variant % words.size()];
  std::string b = words[(variant / 7 + 3) % words.size()];
  return "in the " + a + " " + b + " context";
}

std::string substitute(std::string text, const std::string& key, const std::string& value) {
  std::size_t pos;
  while ((pos = text.find(key)) != std::string::npos) text.replace(pos, key.size(), value);
  return text;
}

}  // namespace

std::string question_for(const Combination& combo, const DatabaseSchema& schema,
                         std::uint64_t variant, bool rich) {
  CoreIntent intent = combo.labels.core_intent;
  const IntentTemplates& tpl = templates_for(intent);
  if (!rich) return tpl.plain;

  std::string table_word = "the table";
  std::string column_word = "value";
  if (!schema.tables.empty()) {
    table_word = sanitize_word(schema.tables[variant % schema.tables.size()].name, intent,
                               "the table");
    const auto& cols = schema.tables[variant % schema.tables.size()].columns;
    if (!cols.empty())
      column_word = sanitize_word(cols[(variant / 3) % cols.size()].name, intent, "value");
  }
  std::string q = tpl.rich[variant % 3];
  q = substitute(q, "%T", table_word);
  q = substitute(q, "%C", column_word);
  q = substitute(q, "%S", scenario_words(schema, intent, variant));
  // A stray keyword from schema vocabulary must never flip the intent.
  if (triggers_other_intent(q, intent)) return tpl.plain;
  return q;
}

BuiltPair build_pair(const Combination& combo, const DatabaseSchema& schema,
                     std::uint64_t variant) {
  Tables t = pick_tables(schema);
  if (!t.t1) return unrealizable("schema has no usable tables");

  BuiltPair out;
  switch (combo.labels.statement_type) {
    case StatementType::Select: out = build_select(combo, t, variant); break;
    case StatementType::Insert: out = build_insert(combo, schema, variant); break;
    case StatementType::Update: out = build_update(combo, schema, variant); break;
    case StatementType::Delete: out = build_delete(combo, schema, variant); break;
    case StatementType::Alter: out = build_alter(combo, t, variant); break;
  }
  if (out.realizable) out.question = question_for(combo, schema, variant, /*rich=*/false);
  return out;
}

}  // namespace synthsql
