#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>

#include "synthsql/dbforge/init.hpp"
#include "synthsql/dbforge/sqlite.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

std::string quote_ident(const std::string& name) { return "\"" + name + "\""; }

std::string quote_value(const std::string& cell, const std::string& type) {
  if (cell == kNullCell) return "NULL";
  std::string lt = to_lower(type);
  bool numeric = lt == "integer" || lt == "int" || lt == "real" || lt == "numeric" ||
                 lt == "float" || lt == "double";
  if (numeric && !cell.empty()) {
    // pass through well-formed numbers unquoted
    char* end = nullptr;
    std::strtod(cell.c_str(), &end);
    if (end && *end == '\0') return cell;
  }
  std::string out = "'";
  for (char c : cell) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  out += "'";
  return out;
}

std::string create_table_sql(const TableSchema& t) {
  std::string sql = "CREATE TABLE " + quote_ident(t.name) + " (";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) sql += ", ";
    const auto& c = t.columns[i];
    sql += quote_ident(c.name) + " " + c.type;
    if (!c.nullable) sql += " NOT NULL";
  }
  if (!t.primary_key.empty()) {
    sql += ", PRIMARY KEY (";
    for (std::size_t i = 0; i < t.primary_key.size(); ++i) {
      if (i) sql += ", ";
      sql += quote_ident(t.primary_key[i]);
    }
    sql += ")";
  }
  for (const auto& fk : t.foreign_keys) {
    sql += ", FOREIGN KEY (";
    for (std::size_t i = 0; i < fk.local_columns.size(); ++i) {
      if (i) sql += ", ";
      sql += quote_ident(fk.local_columns[i]);
    }
    sql += ") REFERENCES " + quote_ident(fk.referenced_table) + " (";
    for (std::size_t i = 0; i < fk.referenced_columns.size(); ++i) {
      if (i) sql += ", ";
      sql += quote_ident(fk.referenced_columns[i]);
    }
    sql += ")";
  }
  sql += ")";
  return sql;
}

}  // namespace

void initialize_database(const DatabaseSchema& schema, const std::string& path) {
  std::vector<std::string> order = topo_order(schema);

  namespace fs = std::filesystem;
  if (fs::exists(path)) fs::remove(path);
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());

  SqliteDb db(path);
  db.exec("BEGIN");
  try {
    for (const auto& name : order) {
      const TableSchema* t = schema.find_table(name);
      db.exec(create_table_sql(*t));
      for (std::size_t r = 0; r < t->sample_rows.size(); ++r) {
        const Row& row = t->sample_rows[r];
        std::string sql = "INSERT INTO " + quote_ident(t->name) + " VALUES (";
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) sql += ", ";
          sql += quote_value(row[i], t->columns[i].type);
        }
        sql += ")";
        try {
          db.exec(sql);
        } catch (const ConstraintViolation& e) {
          throw ConstraintViolation("row " + std::to_string(r + 1) + " of table " + t->name +
                                    ": " + e.what());
        }
      }
    }
    db.exec("COMMIT");
  } catch (...) {
    db.exec("ROLLBACK");
    throw;
  }
}

DatabaseSchema read_back_schema(const std::string& path) {
  SqliteDb db(path, /*read_only=*/true);
  DatabaseSchema schema;
  auto tables = db.query(
      "SELECT name FROM sqlite_master WHERE type='table' AND name NOT LIKE 'sqlite_%' "
      "ORDER BY name");
  for (const auto& trow : tables.rows) {
    TableSchema t;
    t.name = trow[0].text;
    auto cols = db.query("PRAGMA table_info(" + std::string("\"") + t.name + "\")");
    std::vector<std::pair<int, std::string>> pk;  // (pk ordinal, name)
    for (const auto& crow : cols.rows) {
      ColumnSchema c;
      c.name = crow[1].text;
      c.type = crow[2].text;
      c.nullable = crow[3].integer == 0;
      if (crow[5].integer > 0) pk.emplace_back(static_cast<int>(crow[5].integer), c.name);
      t.columns.push_back(std::move(c));
    }
    std::sort(pk.begin(), pk.end());
    for (const auto& [ord, name] : pk) {
      (void)ord;
      t.primary_key.push_back(name);
    }
    auto fks = db.query("PRAGMA foreign_key_list(" + std::string("\"") + t.name + "\")");
    // rows: id, seq, table, from, to, ...
    std::map<long long, ForeignKey> grouped;
    for (const auto& frow : fks.rows) {
      ForeignKey& fk = grouped[frow[0].integer];
      fk.referenced_table = frow[2].text;
      fk.local_columns.push_back(frow[3].text);
      fk.referenced_columns.push_back(frow[4].text);
    }
    for (auto& [id, fk] : grouped) {
      (void)id;
      t.foreign_keys.push_back(std::move(fk));
    }
    auto rows = db.query("SELECT * FROM \"" + t.name + "\"");
    for (const auto& r : rows.rows) {
      Row row;
      for (const auto& v : r) {
        switch (v.kind) {
          case SqliteValue::Kind::Null: row.push_back(kNullCell); break;
          case SqliteValue::Kind::Integer: row.push_back(std::to_string(v.integer)); break;
          case SqliteValue::Kind::Real: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", v.real);
            row.push_back(buf);
            break;
          }
          default: row.push_back(v.text); break;
        }
      }
      t.sample_rows.push_back(std::move(row));
    }
    schema.tables.push_back(std::move(t));
  }
  schema.id = schema.content_hash();
  return schema;
}

}  // namespace synthsql
