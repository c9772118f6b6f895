#include "synthsql/dbforge/schema.hpp"

#include <functional>
#include <map>
#include <set>

#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

nlohmann::json row_to_json(const Row& row) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& cell : row) {
    if (cell == kNullCell)
      j.push_back(nullptr);
    else
      j.push_back(cell);
  }
  return j;
}

Row row_from_json(const nlohmann::json& j) {
  Row row;
  for (const auto& cell : j) {
    if (cell.is_null())
      row.push_back(kNullCell);
    else if (cell.is_string())
      row.push_back(cell.get<std::string>());
    else
      row.push_back(cell.dump());
  }
  return row;
}

bool numeric_type(const std::string& t) {
  std::string lt = to_lower(t);
  return lt == "integer" || lt == "int" || lt == "real" || lt == "numeric" || lt == "float" ||
         lt == "double";
}

bool types_compatible(const std::string& a, const std::string& b) {
  return numeric_type(a) == numeric_type(b);
}

}  // namespace

const ColumnSchema* TableSchema::find_column(const std::string& n) const {
  for (const auto& c : columns)
    if (to_lower(c.name) == to_lower(n)) return &c;
  return nullptr;
}

const TableSchema* DatabaseSchema::find_table(const std::string& n) const {
  for (const auto& t : tables)
    if (to_lower(t.name) == to_lower(n)) return &t;
  return nullptr;
}

std::string DatabaseSchema::content_hash() const {
  DatabaseSchema copy = *this;
  copy.id.clear();
  return "db_" + hex64(fnv1a(to_json(copy).dump()));
}

nlohmann::json to_json(const ColumnSchema& c) {
  return {{"name", c.name}, {"description", c.description}, {"type", c.type},
          {"nullable", c.nullable}};
}

nlohmann::json to_json(const TableSchema& t) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : t.columns) cols.push_back(to_json(c));
  nlohmann::json fks = nlohmann::json::array();
  for (const auto& fk : t.foreign_keys)
    fks.push_back({{"columns", fk.local_columns},
                   {"references_table", fk.referenced_table},
                   {"references_columns", fk.referenced_columns}});
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.sample_rows) rows.push_back(row_to_json(r));
  return {{"name", t.name},           {"description", t.description}, {"columns", cols},
          {"primary_key", t.primary_key}, {"foreign_keys", fks},      {"sample_rows", rows}};
}

nlohmann::json to_json(const DatabaseSchema& db) {
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : db.tables) tables.push_back(to_json(t));
  return {{"id", db.id}, {"scenario", db.scenario}, {"tables", tables}};
}

DatabaseSchema database_schema_from_json(const nlohmann::json& j) {
  DatabaseSchema db;
  db.id = j.value("id", "");
  db.scenario = j.value("scenario", "");
  for (const auto& tj : j.at("tables")) {
    TableSchema t;
    t.name = tj.at("name").get<std::string>();
    t.description = tj.value("description", "");
    for (const auto& cj : tj.at("columns")) {
      ColumnSchema c;
      c.name = cj.at("name").get<std::string>();
      c.description = cj.value("description", "");
      c.type = cj.value("type", "TEXT");
      c.nullable = cj.value("nullable", true);
      t.columns.push_back(std::move(c));
    }
    if (tj.contains("primary_key"))
      t.primary_key = tj.at("primary_key").get<std::vector<std::string>>();
    if (tj.contains("foreign_keys")) {
      for (const auto& fj : tj.at("foreign_keys")) {
        ForeignKey fk;
        fk.local_columns = fj.at("columns").get<std::vector<std::string>>();
        fk.referenced_table = fj.at("references_table").get<std::string>();
        fk.referenced_columns = fj.at("references_columns").get<std::vector<std::string>>();
        t.foreign_keys.push_back(std::move(fk));
      }
    }
    if (tj.contains("sample_rows"))
      for (const auto& rj : tj.at("sample_rows")) t.sample_rows.push_back(row_from_json(rj));
    db.tables.push_back(std::move(t));
  }
  return db;
}

std::vector<std::string> validate_schema(const DatabaseSchema& schema) {
  std::vector<std::string> violations;
  if (schema.tables.empty()) violations.push_back("schema has no tables");

  std::set<std::string> table_names;
  for (const auto& t : schema.tables) {
    std::string lname = to_lower(t.name);
    if (!table_names.insert(lname).second)
      violations.push_back("duplicate table name: " + t.name);
    std::set<std::string> col_names;
    for (const auto& c : t.columns)
      if (!col_names.insert(to_lower(c.name)).second)
        violations.push_back("duplicate column name " + c.name + " in table " + t.name);
    for (const auto& pk : t.primary_key)
      if (!t.find_column(pk))
        violations.push_back("primary-key column " + pk + " missing in table " + t.name);
    for (const auto& row : t.sample_rows) {
      if (row.size() != t.columns.size()) {
        violations.push_back("sample row arity mismatch in table " + t.name);
        continue;
      }
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] == kNullCell && !t.columns[i].nullable)
          violations.push_back("NULL sample value in non-nullable column " + t.columns[i].name +
                               " of table " + t.name);
    }
  }

  for (const auto& t : schema.tables) {
    for (const auto& fk : t.foreign_keys) {
      const TableSchema* parent = schema.find_table(fk.referenced_table);
      if (!parent) {
        violations.push_back("table " + t.name + " references missing table " +
                             fk.referenced_table);
        continue;
      }
      if (fk.local_columns.size() != fk.referenced_columns.size()) {
        violations.push_back("foreign-key arity mismatch on " + t.name + " -> " +
                             fk.referenced_table);
        continue;
      }
      for (std::size_t i = 0; i < fk.local_columns.size(); ++i) {
        const ColumnSchema* local = t.find_column(fk.local_columns[i]);
        const ColumnSchema* remote = parent->find_column(fk.referenced_columns[i]);
        if (!local)
          violations.push_back("foreign-key column " + fk.local_columns[i] +
                               " missing in table " + t.name);
        if (!remote)
          violations.push_back("referenced column " + fk.referenced_columns[i] +
                               " missing in table " + fk.referenced_table);
        if (local && remote && !types_compatible(local->type, remote->type))
          violations.push_back("foreign-key type mismatch " + t.name + "." + local->name +
                               " -> " + parent->name + "." + remote->name);
      }
    }
  }

  // acyclicity of the FK graph (self-loops included)
  std::map<std::string, std::set<std::string>> deps;
  for (const auto& t : schema.tables)
    for (const auto& fk : t.foreign_keys)
      if (schema.find_table(fk.referenced_table))
        deps[to_lower(t.name)].insert(to_lower(fk.referenced_table));
  std::map<std::string, int> state;  // 0 new, 1 visiting, 2 done
  std::function<bool(const std::string&)> has_cycle = [&](const std::string& n) -> bool {
    int& s = state[n];
    if (s == 1) return true;
    if (s == 2) return false;
    s = 1;
    for (const auto& d : deps[n])
      if (has_cycle(d)) return true;
    s = 2;
    return false;
  };
  for (const auto& t : schema.tables) {
    if (has_cycle(to_lower(t.name))) {
      violations.push_back("foreign-key graph contains a cycle through " + t.name);
      break;
    }
  }
  return violations;
}

std::vector<SourceTable> load_source_tables(const std::string& path) {
  std::vector<SourceTable> out;
  for (const auto& line : read_lines(path)) {
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    SourceTable t;
    t.id = j.at("id").get<std::string>();
    t.header = j.at("header").get<std::vector<std::string>>();
    t.types = j.at("types").get<std::vector<std::string>>();
    for (const auto& rj : j.at("rows")) t.rows.push_back(row_from_json(rj));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace synthsql
