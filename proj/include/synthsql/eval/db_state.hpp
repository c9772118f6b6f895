#pragma once

#include <map>
#include <string>
#include <vector>

namespace synthsql {

// Canonical, order-independent snapshot of a database file: per-table schema
// signature plus a sorted multiset of canonically encoded rows.
struct DatabaseState {
  struct Table {
    std::string schema_signature;       // name + typed column list + keys
    std::vector<std::string> rows;      // canonical row encodings, sorted
    bool operator==(const Table&) const = default;
  };
  std::map<std::string, Table> tables;  // keyed by lower-cased table name

  bool operator==(const DatabaseState&) const = default;
};

DatabaseState snapshot_state(const std::string& db_path);

// Empty when equal; otherwise names each differing table.
std::vector<std::string> diff_states(const DatabaseState& a, const DatabaseState& b);

}  // namespace synthsql
