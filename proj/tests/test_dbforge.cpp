#include <algorithm>
#include <filesystem>

#include "doctest.h"
#include "synthsql/dbforge/forge.hpp"
#include "synthsql/dbforge/init.hpp"
#include "synthsql/dbforge/schema.hpp"
#include "synthsql/dbforge/sqlite.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/gateway/mock_provider.hpp"
#include "synthsql/util.hpp"

using namespace synthsql;

namespace {

ColumnSchema col(const std::string& name, const std::string& type, bool nullable = true) {
  ColumnSchema c;
  c.name = name;
  c.type = type;
  c.nullable = nullable;
  return c;
}

TableSchema table(const std::string& name, std::vector<ColumnSchema> cols,
                  std::vector<std::string> pk = {}) {
  TableSchema t;
  t.name = name;
  t.columns = std::move(cols);
  t.primary_key = std::move(pk);
  return t;
}

ForeignKey fk(std::vector<std::string> local, const std::string& parent,
              std::vector<std::string> remote) {
  ForeignKey f;
  f.local_columns = std::move(local);
  f.referenced_table = parent;
  f.referenced_columns = std::move(remote);
  return f;
}

// parent <- child <- grandchild chain with conforming sample rows
DatabaseSchema chain_schema() {
  DatabaseSchema db;
  db.id = "chain";
  auto parent = table("parent", {col("id", "INTEGER", false), col("name", "TEXT")}, {"id"});
  parent.sample_rows = {{"1", "alpha"}, {"2", "beta"}};
  auto child = table("child", {col("id", "INTEGER", false), col("parent_id", "INTEGER")}, {"id"});
  child.foreign_keys = {fk({"parent_id"}, "parent", {"id"})};
  child.sample_rows = {{"10", "1"}, {"11", "2"}};
  auto grandchild =
      table("grandchild", {col("id", "INTEGER", false), col("child_id", "INTEGER")}, {"id"});
  grandchild.foreign_keys = {fk({"child_id"}, "child", {"id"})};
  grandchild.sample_rows = {{"100", "10"}};
  db.tables = {grandchild, child, parent};  // deliberately out of order
  return db;
}

std::string temp_db(const std::string& stem) {
  auto dir = std::filesystem::temp_directory_path() / "synthsql_dbforge_test";
  std::filesystem::create_directories(dir);
  auto path = dir / (stem + ".sqlite");
  std::filesystem::remove(path);
  return path.string();
}

}  // namespace

TEST_CASE("validate_schema flags structural defects") {
  CHECK(validate_schema(chain_schema()).empty());

  auto dup_table = chain_schema();
  dup_table.tables.push_back(dup_table.tables.front());
  CHECK_FALSE(validate_schema(dup_table).empty());

  auto dup_col = chain_schema();
  dup_col.tables[0].columns.push_back(dup_col.tables[0].columns[0]);
  CHECK_FALSE(validate_schema(dup_col).empty());

  auto bad_pk = chain_schema();
  bad_pk.tables[0].primary_key = {"no_such_column"};
  CHECK_FALSE(validate_schema(bad_pk).empty());

  auto bad_fk_table = chain_schema();
  bad_fk_table.tables[0].foreign_keys = {fk({"id"}, "ghost", {"id"})};
  CHECK_FALSE(validate_schema(bad_fk_table).empty());

  auto bad_fk_arity = chain_schema();
  for (auto& t : bad_fk_arity.tables)
    if (t.name == "child") t.foreign_keys = {fk({"parent_id"}, "parent", {"id", "name"})};
  CHECK_FALSE(validate_schema(bad_fk_arity).empty());

  auto bad_row = chain_schema();
  for (auto& t : bad_row.tables)
    if (t.name == "parent") t.sample_rows.push_back({"only-one-cell"});
  CHECK_FALSE(validate_schema(bad_row).empty());
}

TEST_CASE("topo_order puts every parent before its children") {
  auto order = topo_order(chain_schema());
  REQUIRE(order.size() == 3);
  auto pos = [&](const std::string& n) {
    return std::find(order.begin(), order.end(), n) - order.begin();
  };
  CHECK(pos("parent") < pos("child"));
  CHECK(pos("child") < pos("grandchild"));
}

TEST_CASE("cycles are rejected with the offending tables named") {
  auto cyclic = chain_schema();
  for (auto& t : cyclic.tables)
    if (t.name == "parent") {
      t.columns.push_back(col("grandchild_id", "INTEGER"));
      t.foreign_keys = {fk({"grandchild_id"}, "grandchild", {"id"})};
      for (auto& r : t.sample_rows) r.push_back(kNullCell);
    }
  try {
    topo_order(cyclic);
    CHECK(false);
  } catch (const CycleError& e) {
    CHECK(e.cycle.size() >= 2);
    std::string msg = e.what();
    for (const auto& name : e.cycle) CHECK(msg.find(name) != std::string::npos);
  }

  DatabaseSchema self_loop;
  self_loop.id = "selfloop";
  auto t = table("node", {col("id", "INTEGER", false), col("next_id", "INTEGER")}, {"id"});
  t.foreign_keys = {fk({"next_id"}, "node", {"id"})};
  self_loop.tables = {t};
  try {
    topo_order(self_loop);
    CHECK(false);
  } catch (const CycleError& e) {
    REQUIRE_FALSE(e.cycle.empty());
    CHECK(e.cycle.front() == "node");
  }
}

TEST_CASE("initialize_database then read_back_schema round-trips structure and rows") {
  auto schema = chain_schema();
  auto path = temp_db("roundtrip");
  initialize_database(schema, path);

  auto back = read_back_schema(path);
  CHECK(back.tables.size() == 3);
  for (const auto& t : schema.tables) {
    const auto* rt = back.find_table(t.name);
    REQUIRE(rt != nullptr);
    REQUIRE(rt->columns.size() == t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      CHECK(rt->columns[i].name == t.columns[i].name);
    CHECK(rt->primary_key == t.primary_key);
    CHECK(rt->foreign_keys.size() == t.foreign_keys.size());
    CHECK(rt->sample_rows.size() == t.sample_rows.size());
  }

  // rows really landed, FKs enforced by the engine
  SqliteDb db(path);
  db.exec("PRAGMA foreign_keys = ON");
  auto r = db.query("SELECT COUNT(*) FROM child");
  CHECK(r.rows.at(0).at(0).integer == 2);
  CHECK_THROWS_AS(db.exec("INSERT INTO child (id, parent_id) VALUES (99, 424242)"),
                  ConstraintViolation);
}

TEST_CASE("initialization reports the first offending sample row") {
  auto schema = chain_schema();
  for (auto& t : schema.tables)
    if (t.name == "child") t.sample_rows.push_back({"12", "424242"});  // dangling FK
  auto path = temp_db("badrow");
  try {
    initialize_database(schema, path);
    CHECK(false);
  } catch (const ConstraintViolation& e) {
    std::string msg = e.what();
    CHECK(msg.find("child") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);  // row 3 of table child
  }
}

TEST_CASE("initialize_database rejects cyclic schemas up front") {
  DatabaseSchema self_loop;
  self_loop.id = "selfloop";
  auto t = table("node", {col("id", "INTEGER", false), col("next_id", "INTEGER")}, {"id"});
  t.foreign_keys = {fk({"next_id"}, "node", {"id"})};
  self_loop.tables = {t};
  CHECK_THROWS_AS(initialize_database(self_loop, temp_db("cyclic")), CycleError);
}

TEST_CASE("null sentinel cells become real NULLs") {
  DatabaseSchema db;
  db.id = "nulls";
  auto t = table("notes", {col("id", "INTEGER", false), col("body", "TEXT")}, {"id"});
  t.sample_rows = {{"1", kNullCell}, {"2", "text"}};
  db.tables = {t};
  auto path = temp_db("nulls");
  initialize_database(db, path);
  SqliteDb conn(path, true);
  auto r = conn.query("SELECT COUNT(*) FROM notes WHERE body IS NULL");
  CHECK(r.rows.at(0).at(0).integer == 1);
}

TEST_CASE("forging from a source table yields a valid multi-table schema") {
  SourceTable source;
  source.id = "tbl-forge-1";
  source.header = {"City", "Population"};
  source.types = {"text", "real"};
  source.rows = {{"Springfield", "30000"}, {"Shelbyville", "25000"}};

  auto lib = PromptLibrary::load(SYNTHSQL_SOURCE_DIR "/prompts");
  Gateway gw(lib, make_mock_provider(), RetryPolicy{3, 0});

  std::vector<std::string> gen_ids;
  auto schema = generate_database(source, gw, 3, &gen_ids);
  CHECK(validate_schema(schema).empty());
  CHECK(schema.tables.size() >= 2);
  CHECK_FALSE(gen_ids.empty());

  std::vector<std::string> enh_ids;
  auto enhanced = enhance_database(schema, gw, 3, &enh_ids);
  CHECK(validate_schema(enhanced).empty());
  // monotonicity: tables survive, columns and FK edges never shrink
  std::size_t fks_before = 0, fks_after = 0;
  for (const auto& t : schema.tables) {
    fks_before += t.foreign_keys.size();
    const auto* et = enhanced.find_table(t.name);
    REQUIRE(et != nullptr);
    CHECK(et->columns.size() >= t.columns.size());
  }
  for (const auto& t : enhanced.tables) fks_after += t.foreign_keys.size();
  CHECK(fks_after >= fks_before);

  // the forged schema actually initializes
  auto path = temp_db("forged");
  initialize_database(enhanced, path);
  auto back = read_back_schema(path);
  CHECK(back.tables.size() == enhanced.tables.size());
}

TEST_CASE("schema json round-trip") {
  auto schema = chain_schema();
  auto j = to_json(schema);
  auto back = database_schema_from_json(j);
  CHECK(back.id == schema.id);
  REQUIRE(back.tables.size() == schema.tables.size());
  CHECK(to_json(back).dump() == j.dump());
  CHECK(back.content_hash() == schema.content_hash());

  auto changed = schema;
  changed.tables[0].columns[0].name = "renamed";
  CHECK(changed.content_hash() != schema.content_hash());
}

TEST_CASE("load_source_tables reads the release layout") {
  auto tables = load_source_tables(SYNTHSQL_SOURCE_DIR "/data/source_tables.jsonl");
  REQUIRE_FALSE(tables.empty());
  for (const auto& t : tables) {
    CHECK_FALSE(t.id.empty());
    CHECK(t.header.size() == t.types.size());
    for (const auto& row : t.rows) CHECK(row.size() == t.header.size());
  }
  CHECK_THROWS_AS(load_source_tables("/nonexistent/tables.jsonl"), IoError);
}
