#include "synthsql/dbforge/sqlite.hpp"

#include <sqlite3.h>

#include <chrono>
#include <filesystem>

#include "synthsql/errors.hpp"

namespace synthsql {

namespace {

SqliteValue read_column(sqlite3_stmt* stmt, int col) {
  SqliteValue v;
  switch (sqlite3_column_type(stmt, col)) {
    case SQLITE_NULL:
      v.kind = SqliteValue::Kind::Null;
      break;
    case SQLITE_INTEGER:
      v.kind = SqliteValue::Kind::Integer;
      v.integer = sqlite3_column_int64(stmt, col);
      break;
    case SQLITE_FLOAT:
      v.kind = SqliteValue::Kind::Real;
      v.real = sqlite3_column_double(stmt, col);
      break;
    case SQLITE_BLOB: {
      v.kind = SqliteValue::Kind::Blob;
      const void* data = sqlite3_column_blob(stmt, col);
      int n = sqlite3_column_bytes(stmt, col);
      v.text.assign(static_cast<const char*>(data), static_cast<std::size_t>(n));
      break;
    }
    default: {
      v.kind = SqliteValue::Kind::Text;
      const unsigned char* data = sqlite3_column_text(stmt, col);
      int n = sqlite3_column_bytes(stmt, col);
      v.text.assign(reinterpret_cast<const char*>(data), static_cast<std::size_t>(n));
      break;
    }
  }
  return v;
}

struct TimeoutCtx {
  std::chrono::steady_clock::time_point deadline;
};

int progress_handler(void* ptr) {
  auto* ctx = static_cast<TimeoutCtx*>(ptr);
  return std::chrono::steady_clock::now() > ctx->deadline ? 1 : 0;
}

}  // namespace

SqliteDb::SqliteDb(const std::string& path, bool read_only) {
  int flags = read_only ? SQLITE_OPEN_READONLY : (SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE);
  if (sqlite3_open_v2(path.c_str(), &db_, flags, nullptr) != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : "open failed";
    if (db_) sqlite3_close(db_);
    throw IoError("cannot open database " + path + ": " + msg);
  }
  exec("PRAGMA foreign_keys = ON");
}

SqliteDb::~SqliteDb() {
  if (db_) sqlite3_close(db_);
}

void SqliteDb::exec(const std::string& sql) {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    if (msg.find("constraint") != std::string::npos ||
        msg.find("FOREIGN KEY") != std::string::npos ||
        msg.find("UNIQUE") != std::string::npos || msg.find("NOT NULL") != std::string::npos)
      throw ConstraintViolation(msg + " while executing: " + sql);
    throw std::runtime_error(msg + " while executing: " + sql);
  }
}

QueryResult SqliteDb::query(const std::string& sql) {
  QueryResult result;
  auto err = run_guarded(sql, 60.0, &result);
  if (err) throw std::runtime_error(*err);
  return result;
}

std::optional<std::string> SqliteDb::run_guarded(const std::string& sql, double timeout_secs,
                                                 QueryResult* result) {
  TimeoutCtx ctx{std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(timeout_secs))};
  sqlite3_progress_handler(db_, 1000, progress_handler, &ctx);
  sqlite3_stmt* stmt = nullptr;
  const char* tail = nullptr;
  std::optional<std::string> error;
  if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &stmt, &tail) != SQLITE_OK) {
    error = std::string("prepare failed: ") + sqlite3_errmsg(db_);
  } else if (!stmt) {
    error = "empty statement";
  } else {
    if (result) {
      int ncols = sqlite3_column_count(stmt);
      for (int c = 0; c < ncols; ++c) {
        const char* name = sqlite3_column_name(stmt, c);
        result->column_names.push_back(name ? name : "");
      }
    }
    int rc;
    while ((rc = sqlite3_step(stmt)) == SQLITE_ROW) {
      if (result) {
        std::vector<SqliteValue> row;
        int ncols = sqlite3_column_count(stmt);
        row.reserve(static_cast<std::size_t>(ncols));
        for (int c = 0; c < ncols; ++c) row.push_back(read_column(stmt, c));
        result->rows.push_back(std::move(row));
      }
    }
    if (rc != SQLITE_DONE) {
      if (rc == SQLITE_INTERRUPT)
        error = "timeout after " + std::to_string(timeout_secs) + "s";
      else
        error = std::string("execution failed: ") + sqlite3_errmsg(db_);
    }
  }
  if (stmt) sqlite3_finalize(stmt);
  sqlite3_progress_handler(db_, 0, nullptr, nullptr);
  return error;
}

void copy_database_file(const std::string& from, const std::string& to) {
  std::error_code ec;
  std::filesystem::copy_file(from, to, std::filesystem::copy_options::overwrite_existing, ec);
  if (ec) throw IoError("cannot copy " + from + " to " + to + ": " + ec.message());
}

}  // namespace synthsql
