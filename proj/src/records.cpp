#include "synthsql/records.hpp"

#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

template <typename T, typename Parser>
T parse_category(const nlohmann::json& j, const char* what, Parser parse) {
  std::string name = j.get<std::string>();
  auto v = parse(name);
  if (!v) throw ConfigError(std::string("unknown ") + what + ": " + name);
  return *v;
}

}  // namespace

nlohmann::json to_json(const TaxonomyLabels& labels) {
  nlohmann::json structures = nlohmann::json::array();
  for (auto s : labels.syntax_structures) structures.push_back(name_of(s));
  nlohmann::json actions = nlohmann::json::array();
  for (auto a : labels.key_actions) actions.push_back(name_of(a));
  return nlohmann::json{{"core_intent", name_of(labels.core_intent)},
                        {"statement_type", name_of(labels.statement_type)},
                        {"syntax_structures", structures},
                        {"key_actions", actions}};
}

TaxonomyLabels labels_from_json(const nlohmann::json& j) {
  TaxonomyLabels labels;
  labels.core_intent = parse_category<CoreIntent>(j.at("core_intent"), "core intent",
                                                  core_intent_from);
  labels.statement_type = parse_category<StatementType>(j.at("statement_type"), "statement type",
                                                        statement_type_from);
  for (const auto& s : j.at("syntax_structures"))
    labels.syntax_structures.insert(
        parse_category<SyntaxStructure>(s, "syntax structure", syntax_structure_from));
  for (const auto& a : j.at("key_actions"))
    labels.key_actions.insert(parse_category<KeyAction>(a, "key action", key_action_from));
  return labels;
}

nlohmann::json to_json(const Combination& combo) {
  nlohmann::json j = to_json(combo.labels);
  j["complexity"] = name_of(combo.level);
  j["score"] = combo.score;
  return j;
}

Combination combination_from_json(const nlohmann::json& j) {
  Combination combo;
  combo.labels = labels_from_json(j);
  auto level = complexity_level_from(j.at("complexity").get<std::string>());
  if (!level) throw ConfigError("unknown complexity level: " + j.at("complexity").dump());
  combo.level = *level;
  combo.score = j.value("score", 0);
  return combo;
}

nlohmann::json to_json(const KnowledgeItem& item) {
  return nlohmann::json{
      {"kind",
       item.kind == KnowledgeItem::Kind::ValueMapping ? "value_mapping" : "numeric_calculation"},
      {"text", item.text}};
}

KnowledgeItem knowledge_item_from_json(const nlohmann::json& j) {
  KnowledgeItem item;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "value_mapping")
    item.kind = KnowledgeItem::Kind::ValueMapping;
  else if (kind == "numeric_calculation")
    item.kind = KnowledgeItem::Kind::NumericCalculation;
  else
    throw ConfigError("unknown knowledge kind: " + kind);
  item.text = j.at("text").get<std::string>();
  return item;
}

nlohmann::json to_json(const DatasetRecord& r) {
  nlohmann::json knowledge = nlohmann::json::array();
  for (const auto& k : r.knowledge) knowledge.push_back(to_json(k));
  return nlohmann::json{{"id", r.id},
                        {"db_id", r.db_id},
                        {"question", r.question},
                        {"sql", r.sql},
                        {"knowledge", knowledge},
                        {"labels", to_json(r.labels)},
                        {"complexity", name_of(r.level)},
                        {"provenance",
                         {{"seed_id", r.provenance.seed_id},
                          {"path", r.provenance.path},
                          {"database_position", r.provenance.database_position},
                          {"gateway_call_ids", r.provenance.gateway_call_ids}}}};
}

DatasetRecord dataset_record_from_json(const nlohmann::json& j) {
  DatasetRecord r;
  r.id = j.at("id").get<std::string>();
  r.db_id = j.at("db_id").get<std::string>();
  r.question = j.at("question").get<std::string>();
  r.sql = j.at("sql").get<std::string>();
  for (const auto& k : j.value("knowledge", nlohmann::json::array()))
    r.knowledge.push_back(knowledge_item_from_json(k));
  r.labels = labels_from_json(j.at("labels"));
  auto level = complexity_level_from(j.at("complexity").get<std::string>());
  if (!level) throw ConfigError("unknown complexity level: " + j.at("complexity").dump());
  r.level = *level;
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    r.provenance.seed_id = p.value("seed_id", "");
    r.provenance.path = p.value("path", "");
    r.provenance.database_position = p.value("database_position", 0);
    r.provenance.gateway_call_ids =
        p.value("gateway_call_ids", std::vector<std::string>{});
  }
  return r;
}

nlohmann::json to_json(const SeedRecord& r) {
  return nlohmann::json{{"id", r.id},
                        {"db_id", r.db_id},
                        {"question", r.question},
                        {"sql", r.sql},
                        {"combination", to_json(r.combination)},
                        {"blueprint_ids", r.blueprint_ids},
                        {"status", r.status},
                        {"gateway_call_ids", r.gateway_call_ids}};
}

SeedRecord seed_record_from_json(const nlohmann::json& j) {
  SeedRecord r;
  r.id = j.at("id").get<std::string>();
  r.db_id = j.at("db_id").get<std::string>();
  r.question = j.at("question").get<std::string>();
  r.sql = j.at("sql").get<std::string>();
  r.combination = combination_from_json(j.at("combination"));
  r.blueprint_ids = j.value("blueprint_ids", std::vector<std::string>{});
  r.status = j.at("status").get<std::string>();
  r.gateway_call_ids = j.value("gateway_call_ids", std::vector<std::string>{});
  return r;
}

template <typename T>
static std::string records_to_jsonl(const std::vector<T>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::string to_jsonl(const std::vector<DatasetRecord>& records) {
  return records_to_jsonl(records);
}
std::string to_jsonl(const std::vector<SeedRecord>& records) { return records_to_jsonl(records); }

std::vector<DatasetRecord> dataset_records_from_jsonl(const std::string& path) {
  std::vector<DatasetRecord> out;
  for (const auto& line : read_lines(path)) {
    if (trim(line).empty()) continue;
    out.push_back(dataset_record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

std::vector<SeedRecord> seed_records_from_jsonl(const std::string& path) {
  std::vector<SeedRecord> out;
  for (const auto& line : read_lines(path)) {
    if (trim(line).empty()) continue;
    out.push_back(seed_record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

}  // namespace synthsql
