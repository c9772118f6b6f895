#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

struct sqlite3;

namespace synthsql {

// Canonical cell value read back from the engine.
struct SqliteValue {
  enum class Kind { Null, Integer, Real, Text, Blob };
  Kind kind = Kind::Null;
  long long integer = 0;
  double real = 0.0;
  std::string text;  // also holds blob bytes
};

struct QueryResult {
  std::vector<std::string> column_names;
  std::vector<std::vector<SqliteValue>> rows;
};

// Minimal RAII connection. Throws IoError on open failure and
// ConstraintViolation / std::runtime_error on statement errors.
class SqliteDb {
 public:
  explicit SqliteDb(const std::string& path, bool read_only = false);
  ~SqliteDb();
  SqliteDb(const SqliteDb&) = delete;
  SqliteDb& operator=(const SqliteDb&) = delete;

  void exec(const std::string& sql);
  QueryResult query(const std::string& sql);
  // Runs one statement with a wall-clock timeout; returns an error message
  // or nullopt on success. SELECTs store results into *result when given.
  std::optional<std::string> run_guarded(const std::string& sql, double timeout_secs,
                                         QueryResult* result = nullptr);

  sqlite3* handle() { return db_; }

 private:
  sqlite3* db_ = nullptr;
};

void copy_database_file(const std::string& from, const std::string& to);

}  // namespace synthsql
