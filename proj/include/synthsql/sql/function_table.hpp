#pragma once

#include <string>
#include <unordered_map>

namespace synthsql::sql {

enum class FunctionClass { Time, Json, String, Aggregate, Other };

// Maps lower-cased function name -> class. Ships with sqlite defaults;
// a config file (one "name=class" entry per line, '#' comments) overlays them.
class FunctionTable {
 public:
  static FunctionTable sqlite_defaults();
  static FunctionTable from_file(const std::string& path);

  void set(const std::string& name, FunctionClass cls);
  // nullopt-like: returns Other and sets *known=false for unknown names
  FunctionClass lookup(const std::string& name, bool* known = nullptr) const;

 private:
  std::unordered_map<std::string, FunctionClass> table_;
};

}  // namespace synthsql::sql
