#pragma once

#include <optional>
#include <string>
#include <vector>

#include "synthsql/dbforge/schema.hpp"
#include "synthsql/gateway/gateway.hpp"
#include "synthsql/pipeline/seed.hpp"
#include "synthsql/records.hpp"

namespace synthsql {

// One initialized database available to expansion.
struct DatabaseEntry {
  DatabaseSchema schema;
  std::string path;  // database file
};

struct ValidationResult {
  bool passed = false;
  std::vector<std::string> reasons;  // execution and/or semantic failure
};

struct QuarantineEntry {
  DatasetRecord record;
  std::vector<std::string> reasons;
};

struct ExpandOptions {
  double timeout_secs = 10.0;
  bool with_knowledge = true;
};

struct ExpansionOutcome {
  std::vector<DatasetRecord> records;
  std::vector<QuarantineEntry> quarantined;
  std::vector<std::string> skipped;  // per-database skip reasons
};

// SQL-first: new SQL for each database from the seed's statement as
// template, then its question. At most one record per database.
ExpansionOutcome expand_sql_oriented(const SeedRecord& seed,
                                     const std::vector<const DatabaseEntry*>& databases,
                                     Gateway& gateway, const ClassifyContext& ctx,
                                     const ExpandOptions& opts);

// Question-first: new question per database, then its SQL.
ExpansionOutcome expand_question_oriented(const SeedRecord& seed,
                                          const std::vector<const DatabaseEntry*>& databases,
                                          Gateway& gateway, const ClassifyContext& ctx,
                                          const ExpandOptions& opts);

// Execution validator (timeout-guarded run on a fresh copy) plus semantic
// validator (gateway verdict, one retry on malformed output).
ValidationResult run_validators(const DatasetRecord& record, const std::string& db_path,
                                Gateway& gateway, double timeout_secs);

// Structural trigger for numeric_calculation knowledge: at least two
// chained arithmetic/aggregate steps in the SQL.
bool multi_step_calculation(const std::string& sql);

// Filters model output down to referential value mappings and structurally
// justified numeric notes. Gateway failures yield an empty list.
std::vector<KnowledgeItem> generate_knowledge(const DatasetRecord& record,
                                              const DatabaseSchema& schema, Gateway& gateway);

}  // namespace synthsql
