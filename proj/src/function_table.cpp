#include "synthsql/sql/function_table.hpp"

#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql::sql {

namespace {

FunctionClass class_from(const std::string& s) {
  std::string c = to_lower(trim(s));
  if (c == "time") return FunctionClass::Time;
  if (c == "json") return FunctionClass::Json;
  if (c == "string") return FunctionClass::String;
  if (c == "aggregate") return FunctionClass::Aggregate;
  if (c == "other") return FunctionClass::Other;
  throw ConfigError("unknown function class: " + s);
}

}  // namespace

FunctionTable FunctionTable::sqlite_defaults() {
  FunctionTable t;
  for (const char* n : {"date", "time", "datetime", "julianday", "strftime", "unixepoch",
                        "timediff"})
    t.set(n, FunctionClass::Time);
  for (const char* n : {"json", "json_extract", "json_array", "json_object", "json_type",
                        "json_valid", "json_insert", "json_set", "json_remove", "json_patch",
                        "json_quote", "json_array_length", "json_each", "json_tree",
                        "json_group_array", "json_group_object", "jsonb"})
    t.set(n, FunctionClass::Json);
  for (const char* n : {"upper", "lower", "substr", "substring", "trim", "ltrim", "rtrim",
                        "replace", "length", "instr", "printf", "format", "char", "hex",
                        "quote", "concat", "concat_ws", "unicode", "soundex"})
    t.set(n, FunctionClass::String);
  for (const char* n : {"count", "sum", "avg", "min", "max", "total", "group_concat",
                        "string_agg", "median", "stddev", "variance"})
    t.set(n, FunctionClass::Aggregate);
  for (const char* n : {"abs", "round", "random", "coalesce", "ifnull", "nullif", "iif",
                        "typeof", "sign", "ceil", "floor", "sqrt", "pow", "power", "exp",
                        "ln", "log", "log2", "log10", "mod", "pi", "row_number", "rank",
                        "dense_rank", "percent_rank", "cume_dist", "ntile", "lag", "lead",
                        "first_value", "last_value", "nth_value"})
    t.set(n, FunctionClass::Other);
  return t;
}

FunctionTable FunctionTable::from_file(const std::string& path) {
  FunctionTable t = sqlite_defaults();
  for (const std::string& raw : read_lines(path)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("malformed function table line: " + line);
    t.set(to_lower(trim(line.substr(0, eq))), class_from(line.substr(eq + 1)));
  }
  return t;
}

void FunctionTable::set(const std::string& name, FunctionClass cls) {
  table_[to_lower(name)] = cls;
}

FunctionClass FunctionTable::lookup(const std::string& name, bool* known) const {
  auto it = table_.find(to_lower(name));
  if (it == table_.end()) {
    if (known) *known = false;
    return FunctionClass::Other;
  }
  if (known) *known = true;
  return it->second;
}

}  // namespace synthsql::sql
