#pragma once

#include <string>

#include "synthsql/sql/detect.hpp"
#include "synthsql/taxonomy/taxonomy.hpp"

namespace synthsql {

// Everything tunable from one JSON config file; omitted keys keep defaults.
struct ToolkitConfig {
  ComplexityConfig complexity = ComplexityConfig::defaults();
  EnumerationCaps caps;
  TaxonomySubset subset = TaxonomySubset::full();
  sql::TemporalFormats temporal;
  std::string function_table_path;  // optional "name=class" overlay file

  double timeout_secs = 10.0;
  int sample_rows = 5;

  // pipeline stage knobs
  int db_sample_per_path = 50;
  int seed_attempts = 3;
  int repair_budget = 3;
  int blueprint_k = 5;
  int database_count = 20;  // source tables to forge into databases
  std::string corpus_path;        // labeled blueprint corpus (jsonl)
  std::string source_tables_path; // flat source tables (jsonl)
  bool sql_oriented = true;
  bool question_oriented = true;

  double cluster_threshold = 0.8;

  static ToolkitConfig load(const std::string& path);  // throws ConfigError / IoError
};

}  // namespace synthsql
