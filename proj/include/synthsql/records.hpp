#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "synthsql/taxonomy/taxonomy.hpp"

namespace synthsql {

struct KnowledgeItem {
  enum class Kind { ValueMapping, NumericCalculation };
  Kind kind = Kind::ValueMapping;
  std::string text;
};

struct Provenance {
  std::string seed_id;
  std::string path;  // "sql_oriented" | "question_oriented"
  int database_position = 0;
  std::vector<std::string> gateway_call_ids;
};

struct DatasetRecord {
  std::string id;
  std::string db_id;
  std::string question;
  std::string sql;
  std::vector<KnowledgeItem> knowledge;
  TaxonomyLabels labels;
  ComplexityLevel level = ComplexityLevel::Simple;
  Provenance provenance;
};

struct SeedRecord {
  std::string id;
  std::string db_id;
  std::string question;
  std::string sql;
  Combination combination;
  std::vector<std::string> blueprint_ids;
  std::string status;  // "reused" | "generated" | "repaired"
  std::vector<std::string> gateway_call_ids;
};

nlohmann::json to_json(const TaxonomyLabels&);
TaxonomyLabels labels_from_json(const nlohmann::json&);
nlohmann::json to_json(const Combination&);
Combination combination_from_json(const nlohmann::json&);
nlohmann::json to_json(const KnowledgeItem&);
KnowledgeItem knowledge_item_from_json(const nlohmann::json&);
nlohmann::json to_json(const DatasetRecord&);
DatasetRecord dataset_record_from_json(const nlohmann::json&);
nlohmann::json to_json(const SeedRecord&);
SeedRecord seed_record_from_json(const nlohmann::json&);

// One JSON object per line.
std::string to_jsonl(const std::vector<DatasetRecord>&);
std::string to_jsonl(const std::vector<SeedRecord>&);
std::vector<DatasetRecord> dataset_records_from_jsonl(const std::string& path);
std::vector<SeedRecord> seed_records_from_jsonl(const std::string& path);

}  // namespace synthsql
