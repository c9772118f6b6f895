#include "synthsql/gateway/mock_provider.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <optional>

#include "json.hpp"
#include "synthsql/dbforge/schema.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/gateway/sql_builder.hpp"
#include "synthsql/records.hpp"
#include "synthsql/sql/detect.hpp"
#include "synthsql/taxonomy/classify.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

// Fenced block following "LABEL:" in a rendered prompt.
std::optional<std::string> labeled_block(const std::string& prompt, const std::string& label) {
  std::size_t at = prompt.find(label + ":");
  if (at == std::string::npos) return std::nullopt;
  std::size_t open = prompt.find("```", at);
  if (open == std::string::npos) return std::nullopt;
  std::size_t body = prompt.find('\n', open);
  if (body == std::string::npos) return std::nullopt;
  ++body;
  std::size_t close = prompt.find("```", body);
  if (close == std::string::npos) return std::nullopt;
  std::string text = prompt.substr(body, close - body);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

std::optional<nlohmann::json> labeled_json(const std::string& prompt, const std::string& label) {
  auto text = labeled_block(prompt, label);
  if (!text) return std::nullopt;
  return nlohmann::json::parse(*text, nullptr, /*allow_exceptions=*/false);
}

std::string sanitize_ident(const std::string& raw, const std::string& fallback) {
  std::string out;
  for (char ch : raw) {
    if (std::isalnum(static_cast<unsigned char>(ch)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.empty()) return fallback;
  if (!std::isalpha(static_cast<unsigned char>(out[0]))) out = "t_" + out;
  return out;
}

nlohmann::json column_json(const std::string& name, const std::string& type, bool nullable,
                           const std::string& description) {
  return {{"name", name}, {"description", description}, {"type", type}, {"nullable", nullable}};
}

// Deterministic 3-table business schema around one flat source table.
std::string synthesize_database(const nlohmann::json& source) {
  std::string src_id = source.value("id", "table");
  std::vector<std::string> header = source.value("header", std::vector<std::string>{"col"});
  std::vector<std::string> types = source.value("types", std::vector<std::string>{});
  nlohmann::json rows = source.value("rows", nlohmann::json::array());

  std::string base = sanitize_ident(src_id, "records");
  std::string main_name = "data_" + base;

  // main table: synthetic id PK + category FK + the source columns
  nlohmann::json main_cols = nlohmann::json::array();
  main_cols.push_back(column_json("id", "INTEGER", false, "row identifier"));
  main_cols.push_back(column_json("category_id", "INTEGER", true, "owning category"));
  std::vector<std::string> used = {"id", "category_id"};
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string name = sanitize_ident(header[i], "col_" + std::to_string(i));
    while (std::find(used.begin(), used.end(), name) != used.end()) name += "_2";
    used.push_back(name);
    std::string type = "TEXT";
    if (i < types.size() && to_lower(types[i]) == "real") type = "REAL";
    main_cols.push_back(column_json(name, type, true, "source column " + header[i]));
  }

  nlohmann::json main_rows = nlohmann::json::array();
  std::size_t n = 0;
  for (const auto& row : rows) {
    nlohmann::json out = nlohmann::json::array();
    out.push_back(std::to_string(n + 1));
    out.push_back(std::to_string(n % 3 + 1));
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i < row.size() && row[i].is_string())
        out.push_back(row[i].get<std::string>());
      else if (i < row.size() && !row[i].is_null())
        out.push_back(row[i].dump());
      else
        out.push_back(nullptr);
    }
    main_rows.push_back(std::move(out));
    if (++n == 5) break;
  }

  auto category_label = [&](int i) {
    static const char* labels[] = {"standard", "priority", "archive"};
    return std::string(labels[i]) + "_" + base.substr(0, std::min<std::size_t>(base.size(), 8));
  };
  nlohmann::json cat_rows = nlohmann::json::array();
  for (int i = 0; i < 3; ++i)
    cat_rows.push_back(nlohmann::json::array({std::to_string(i + 1), category_label(i)}));

  nlohmann::json event_rows = nlohmann::json::array();
  if (n > 0)
    for (int i = 0; i < 3; ++i)
      event_rows.push_back(nlohmann::json::array(
          {std::to_string(i + 1), "1", "review pass " + std::to_string(i + 1)}));

  nlohmann::json schema = {
      {"scenario", "Operational tracking for the " + base + " domain with category grouping and "
                   "review events"},
      {"tables",
       nlohmann::json::array(
           {{{"name", "categories"},
             {"description", "grouping dimension"},
             {"columns", nlohmann::json::array(
                             {column_json("id", "INTEGER", false, "category id"),
                              column_json("label", "TEXT", true, "category label")})},
             {"primary_key", {"id"}},
             {"foreign_keys", nlohmann::json::array()},
             {"sample_rows", cat_rows}},
            {{"name", main_name},
             {"description", "rows imported from " + src_id},
             {"columns", main_cols},
             {"primary_key", {"id"}},
             {"foreign_keys", nlohmann::json::array({{{"columns", {"category_id"}},
                                                      {"references_table", "categories"},
                                                      {"references_columns", {"id"}}}})},
             {"sample_rows", main_rows}},
            {{"name", "events"},
             {"description", "review events attached to " + main_name},
             {"columns", nlohmann::json::array(
                             {column_json("id", "INTEGER", false, "event id"),
                              column_json("record_id", "INTEGER", true, "reviewed row"),
                              column_json("note", "TEXT", true, "free-form note")})},
             {"primary_key", {"id"}},
             {"foreign_keys", nlohmann::json::array({{{"columns", {"record_id"}},
                                                      {"references_table", main_name},
                                                      {"references_columns", {"id"}}}})},
             {"sample_rows", event_rows}}})}};
  return schema.dump(2);
}

std::string synthesize_enhancement(const nlohmann::json& schema_json) {
  nlohmann::json out = schema_json;
  for (auto& table : out.at("tables")) {
    std::string col = "audit_note";
    for (const auto& c : table.at("columns"))
      if (to_lower(c.at("name").get<std::string>()) == col) col = "audit_note_2";
    table.at("columns").push_back(column_json(col, "TEXT", true, "enhancement audit note"));
    if (table.contains("sample_rows"))
      for (auto& row : table.at("sample_rows")) row.push_back(nullptr);
  }
  return out.dump(2);
}

Combination combo_from_prompt(const std::string& prompt) {
  auto j = labeled_json(prompt, "COMBINATION");
  if (!j || j->is_discarded()) throw ExtractionError("mock: no COMBINATION block in prompt");
  return combination_from_json(*j);
}

DatabaseSchema schema_from_prompt(const std::string& prompt) {
  auto j = labeled_json(prompt, "SCHEMA");
  if (!j || j->is_discarded()) throw ExtractionError("mock: no SCHEMA block in prompt");
  return database_schema_from_json(*j);
}

std::string synthesize_seed(const std::string& prompt) {
  Combination combo = combo_from_prompt(prompt);
  DatabaseSchema schema = schema_from_prompt(prompt);
  BuiltPair pair = build_pair(combo, schema, fnv1a(schema.content_hash()) % 97);
  if (!pair.realizable)
    return nlohmann::json{{"error", "combination not realizable: " + pair.reason}}.dump();
  return nlohmann::json{{"question", pair.question}, {"sql", pair.sql}}.dump();
}

std::string synthesize_sql(const std::string& prompt) {
  Combination combo = combo_from_prompt(prompt);
  DatabaseSchema schema = schema_from_prompt(prompt);
  BuiltPair pair = build_pair(combo, schema, fnv1a(schema.content_hash()) % 89 + 1);
  if (!pair.realizable)
    return nlohmann::json{{"error", "combination not realizable: " + pair.reason}}.dump();
  return nlohmann::json{{"sql", pair.sql}}.dump();
}

std::string synthesize_question(const std::string& prompt) {
  Combination combo = combo_from_prompt(prompt);
  DatabaseSchema schema = schema_from_prompt(prompt);
  auto ctx = labeled_json(prompt, "CONTEXT");
  std::string style = "plain";
  if (ctx && !ctx->is_discarded()) style = ctx->value("style", "plain");
  std::uint64_t variant = fnv1a(schema.content_hash() + "|" + to_json(combo).dump());
  return nlohmann::json{
      {"question", question_for(combo, schema, variant, style == "rich")}}.dump();
}

std::string synthesize_knowledge(const std::string& prompt) {
  DatabaseSchema schema = schema_from_prompt(prompt);
  auto sql = labeled_block(prompt, "SQL");
  nlohmann::json items = nlohmann::json::array();
  if (sql) {
    // value mappings: quoted literals that occur verbatim in schema content
    std::vector<std::string> literals;
    for (std::size_t i = 0; i < sql->size(); ++i) {
      if ((*sql)[i] != '\'') continue;
      std::size_t end = sql->find('\'', i + 1);
      if (end == std::string::npos) break;
      literals.push_back(sql->substr(i + 1, end - i - 1));
      i = end;
    }
    for (const auto& lit : literals) {
      if (lit.empty()) continue;
      bool in_schema = false;
      for (const auto& t : schema.tables)
        for (const auto& row : t.sample_rows)
          for (const auto& cell : row)
            if (cell == lit) in_schema = true;
      if (in_schema)
        items.push_back({{"kind", "value_mapping"},
                         {"text", "Value '" + lit + "' is a stored domain code meaning the '" +
                                      lit + "' state."}});
    }
    // arithmetic-chain note; the caller re-checks the structural trigger
    int ops = 0;
    for (char ch : *sql)
      if (ch == '*' || ch == '/' || ch == '+') ++ops;
    if (ops >= 2)
      items.push_back({{"kind", "numeric_calculation"},
                       {"text", "The target value chains multiple arithmetic steps; compute the "
                                "inner products before the final division or sum."}});
  }
  return nlohmann::json{{"items", items}}.dump();
}

std::string synthesize_repair(const std::string& prompt) {
  auto sql = labeled_block(prompt, "SQL");
  auto error = labeled_block(prompt, "ERROR");
  DatabaseSchema schema = schema_from_prompt(prompt);
  std::string fixed = sql.value_or("");
  if (error && !schema.tables.empty()) {
    auto fix_token = [&](const std::string& marker, const std::string& replacement) {
      std::size_t at = error->find(marker);
      if (at == std::string::npos) return;
      std::string bad = trim(error->substr(at + marker.size()));
      std::size_t ws = bad.find_first_of(" \t\n");
      if (ws != std::string::npos) bad = bad.substr(0, ws);
      if (bad.empty()) return;
      std::size_t pos;
      while ((pos = fixed.find(bad)) != std::string::npos)
        fixed.replace(pos, bad.size(), replacement);
    };
    fix_token("no such column:", schema.tables[0].columns.empty()
                                     ? "1"
                                     : schema.tables[0].columns[0].name);
    fix_token("no such table:", schema.tables[0].name);
  }
  return nlohmann::json{{"sql", fixed}}.dump();
}

std::string synthesize_intent(const std::string& prompt) {
  auto question = labeled_block(prompt, "QUESTION");
  auto sql = labeled_block(prompt, "SQL");
  std::string intent = name_of(CoreIntent::BasicQuery);
  try {
    static const sql::FunctionTable functions = sql::FunctionTable::sqlite_defaults();
    static const sql::TemporalFormats temporal;
    static const ComplexityConfig complexity = ComplexityConfig::defaults();
    ClassifiedRecord rec = classify_pair(question.value_or(""), sql.value_or("SELECT 1"),
                                         "sqlite", functions, temporal, complexity);
    intent = name_of(rec.labels.core_intent);
  } catch (const std::exception&) {
  }
  return nlohmann::json{{"intent", intent}}.dump();
}

std::string synthesize_validation(const std::string& prompt) {
  auto question = labeled_block(prompt, "QUESTION");
  auto sql = labeled_block(prompt, "SQL");
  bool mismatch = (question && question->find("MISMATCH") != std::string::npos) ||
                  (sql && sql->find("MISMATCH") != std::string::npos) || !sql || sql->empty();
  return nlohmann::json{
      {"verdict", mismatch ? "inconsistent" : "consistent"},
      {"reason", mismatch ? "the question and query describe different results"
                          : "the query answers the question"}}.dump();
}

std::string synthesize_quality(const std::string& prompt) {
  static const char* criteria[] = {
      "Real-world Relevance",   "Proper Grammar",        "Consistency with Database Schema",
      "Unambiguous Phrasing",   "SQL Correctness",       "SQL Efficiency",
      "Result Alignment",       "Structural Alignment",  "Efficiency of Solution",
      "Answer Adherence"};
  static const char* levels[] = {"Excellent", "Good", "Average", "Poor"};
  auto question = labeled_block(prompt, "QUESTION");
  auto sql = labeled_block(prompt, "SQL");
  std::string key = question.value_or("") + "\x1f" + sql.value_or("");
  nlohmann::json verdicts = nlohmann::json::array();
  for (const char* c : criteria) {
    std::uint64_t h = fnv1a(std::string(c) + "\x1f" + key);
    const char* level = levels[h % 4];
    verdicts.push_back({{"criterion", c},
                        {"level", level},
                        {"explanation", std::string("Deterministic desk review rated ") + c +
                                            " as " + level + "."}});
  }
  return nlohmann::json{{"verdicts", verdicts}}.dump();
}

class MockProvider : public Provider {
 public:
  explicit MockProvider(std::string fixture_dir) : fixture_dir_(std::move(fixture_dir)) {}

  std::string id() const override { return "mock"; }

  std::string complete(const std::string& template_name, const std::string& prompt) override {
    if (!fixture_dir_.empty()) {
      std::filesystem::path p =
          std::filesystem::path(fixture_dir_) / (template_name + "-" + hex64(fnv1a(prompt)) +
                                                 ".txt");
      if (std::filesystem::exists(p)) return read_file(p.string());
    }
    if (template_name == "database_generation") {
      auto src = labeled_json(prompt, "SOURCE_TABLE");
      if (!src || src->is_discarded())
        throw ExtractionError("mock: no SOURCE_TABLE block in prompt");
      return synthesize_database(*src);
    }
    if (template_name == "database_enhancement") {
      auto schema = labeled_json(prompt, "SCHEMA");
      if (!schema || schema->is_discarded())
        throw ExtractionError("mock: no SCHEMA block in prompt");
      return synthesize_enhancement(*schema);
    }
    if (template_name == "seed_modification") return synthesize_seed(prompt);
    if (template_name == "sql_generation") return synthesize_sql(prompt);
    if (template_name == "question_generation") return synthesize_question(prompt);
    if (template_name == "knowledge_generation") return synthesize_knowledge(prompt);
    if (template_name == "seed_repair") return synthesize_repair(prompt);
    if (template_name == "intent_classification") return synthesize_intent(prompt);
    if (template_name == "semantic_validation") return synthesize_validation(prompt);
    if (template_name == "quality_judge") return synthesize_quality(prompt);
    throw GatewayError("mock provider has no rule for template " + template_name);
  }

 private:
  std::string fixture_dir_;
};

}  // namespace

std::shared_ptr<Provider> make_mock_provider(const std::string& fixture_dir) {
  return std::make_shared<MockProvider>(fixture_dir);
}

}  // namespace synthsql
