#include "synthsql/eval/db_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "synthsql/dbforge/sqlite.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

std::string canonical_value(const SqliteValue& v) {
  switch (v.kind) {
    case SqliteValue::Kind::Null:
      return "\x01";  // sorts before every typed encoding
    case SqliteValue::Kind::Integer:
      return "i:" + std::to_string(v.integer);
    case SqliteValue::Kind::Real: {
      // six decimals; engine formatting drift below 1e-6 collapses
      char buf[64];
      std::snprintf(buf, sizeof(buf), "r:%.6f", v.real);
      return buf;
    }
    case SqliteValue::Kind::Blob:
      return "b:" + v.text;
    default:
      return "t:" + v.text;
  }
}

}  // namespace

DatabaseState snapshot_state(const std::string& db_path) {
  DatabaseState state;
  SqliteDb db(db_path, /*read_only=*/true);
  auto tables = db.query(
      "SELECT name FROM sqlite_master WHERE type='table' AND name NOT LIKE 'sqlite_%' "
      "ORDER BY name");
  for (const auto& trow : tables.rows) {
    std::string name = trow[0].text;
    DatabaseState::Table table;

    std::string sig = to_lower(name);
    auto cols = db.query("PRAGMA table_info(\"" + name + "\")");
    for (const auto& c : cols.rows)
      sig += "|" + to_lower(c[1].text) + ":" + to_lower(c[2].text) + ":" +
             std::to_string(c[3].integer) + ":" + std::to_string(c[5].integer);
    auto fks = db.query("PRAGMA foreign_key_list(\"" + name + "\")");
    for (const auto& f : fks.rows)
      sig += "|fk:" + to_lower(f[2].text) + ":" + to_lower(f[3].text) + ":" +
             to_lower(f[4].text);
    table.schema_signature = sig;

    auto rows = db.query("SELECT * FROM \"" + name + "\"");
    for (const auto& r : rows.rows) {
      std::string enc;
      for (const auto& v : r) {
        enc += canonical_value(v);
        enc += '\x1f';
      }
      table.rows.push_back(std::move(enc));
    }
    std::sort(table.rows.begin(), table.rows.end());
    state.tables[to_lower(name)] = std::move(table);
  }
  return state;
}

std::vector<std::string> diff_states(const DatabaseState& a, const DatabaseState& b) {
  std::vector<std::string> diffs;
  for (const auto& [name, ta] : a.tables) {
    auto it = b.tables.find(name);
    if (it == b.tables.end()) {
      diffs.push_back("table " + name + " missing on one side");
      continue;
    }
    if (ta.schema_signature != it->second.schema_signature)
      diffs.push_back("table " + name + ": schema differs");
    else if (ta.rows != it->second.rows)
      diffs.push_back("table " + name + ": row multisets differ (" +
                      std::to_string(ta.rows.size()) + " vs " +
                      std::to_string(it->second.rows.size()) + " rows)");
  }
  for (const auto& [name, tb] : b.tables)
    if (!a.tables.count(name)) diffs.push_back("table " + name + " missing on one side");
  return diffs;
}

}  // namespace synthsql
