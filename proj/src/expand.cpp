#include "synthsql/pipeline/expand.hpp"

#include <set>

#include "synthsql/errors.hpp"
#include "synthsql/gateway/extract.hpp"
#include "synthsql/sql/lexer.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

std::string record_id(const SeedRecord& seed, const DatabaseEntry& db, const std::string& path,
                      const std::string& question, const std::string& sql) {
  return "rec-" + hex64(fnv1a(seed.id + "\x1f" + db.schema.id + "\x1f" + path + "\x1f" +
                              question + "\x1f" + sql));
}

std::optional<std::string> semantic_verdict(const DatasetRecord& record, Gateway& gateway,
                                            std::vector<std::string>* call_ids) {
  for (int attempt = 1; attempt <= 2; ++attempt) {  // one retry on malformed output
    std::string call_id;
    std::string response = gateway.call("semantic_validation",
                                        {{"question", record.question},
                                         {"sql", record.sql},
                                         {"attempt", std::to_string(attempt)}},
                                        &call_id);
    if (call_ids) call_ids->push_back(call_id);
    try {
      auto value = extract_structured(response, ExpectedShape{false, {"verdict"}});
      std::string verdict = to_lower(value.at("verdict").get<std::string>());
      if (verdict == "consistent") return std::nullopt;
      if (verdict == "inconsistent")
        return "semantic validator: " + value.value("reason", std::string("inconsistent"));
    } catch (const std::exception&) {
      continue;
    }
  }
  return "semantic validator: malformed verdict after retry";
}

// One record for one (seed, database, path); nullopt with `reason` set when
// the database is skipped or the candidate fails a validator.
struct Candidate {
  std::optional<DatasetRecord> record;
  std::optional<QuarantineEntry> quarantine;
  std::string skip_reason;
};

Candidate make_candidate(const SeedRecord& seed, const DatabaseEntry& db, int position,
                         const std::string& path, Gateway& gateway, const ClassifyContext& ctx,
                         const ExpandOptions& opts) {
  Candidate out;
  std::string combo_json = to_json(seed.combination).dump(2);
  std::string schema_json = to_json(db.schema).dump(2);
  std::vector<std::string> call_ids;

  std::string question, sql;
  try {
    if (path == "sql_oriented") {
      std::string call_id;
      std::string response = gateway.call("sql_generation",
                                          {{"combination", combo_json},
                                           {"schema", schema_json},
                                           {"seed_sql", seed.sql},
                                           {"question", ""}},
                                          &call_id);
      call_ids.push_back(call_id);
      sql = extract_structured(response, ExpectedShape{false, {"sql"}})
                .at("sql")
                .get<std::string>();
      response = gateway.call("question_generation",
                              {{"combination", combo_json},
                               {"schema", schema_json},
                               {"sql", sql},
                               {"context", nlohmann::json{{"style", "plain"},
                                                          {"seed_question", seed.question}}
                                               .dump()}},
                              &call_id);
      call_ids.push_back(call_id);
      question = extract_structured(response, ExpectedShape{false, {"question"}})
                     .at("question")
                     .get<std::string>();
    } else {
      std::string call_id;
      std::string response = gateway.call("question_generation",
                                          {{"combination", combo_json},
                                           {"schema", schema_json},
                                           {"sql", seed.sql},
                                           {"context", nlohmann::json{{"style", "rich"},
                                                                      {"seed_question",
                                                                       seed.question}}
                                                           .dump()}},
                                          &call_id);
      call_ids.push_back(call_id);
      question = extract_structured(response, ExpectedShape{false, {"question"}})
                     .at("question")
                     .get<std::string>();
      response = gateway.call("sql_generation",
                              {{"combination", combo_json},
                               {"schema", schema_json},
                               {"seed_sql", seed.sql},
                               {"question", question}},
                              &call_id);
      call_ids.push_back(call_id);
      sql = extract_structured(response, ExpectedShape{false, {"sql"}})
                .at("sql")
                .get<std::string>();
    }
  } catch (const GatewayError& e) {
    out.skip_reason = std::string("gateway: ") + e.what();
    return out;
  } catch (const ExtractionError& e) {
    out.skip_reason = std::string("extraction: ") + e.what();
    return out;
  } catch (const nlohmann::json::exception& e) {
    out.skip_reason = std::string("extraction: ") + e.what();
    return out;
  }

  DatasetRecord record;
  record.db_id = db.schema.id;
  record.question = question;
  record.sql = sql;
  record.provenance.seed_id = seed.id;
  record.provenance.path = path;
  record.provenance.database_position = position;
  record.provenance.gateway_call_ids = call_ids;

  try {
    ClassifiedRecord rec = classify_pair(question, sql, ctx.dialect, ctx.functions, ctx.temporal,
                                         ctx.complexity);
    record.labels = rec.labels;
    record.level = rec.level;
  } catch (const std::exception& e) {
    out.skip_reason = std::string("classification: ") + e.what();
    return out;
  }
  record.id = record_id(seed, db, path, question, sql);

  ValidationResult validation = run_validators(record, db.path, gateway, opts.timeout_secs);
  // The validator call ids belong to the record's provenance too.
  record.provenance.gateway_call_ids = call_ids;
  if (!validation.passed) {
    out.quarantine = QuarantineEntry{record, validation.reasons};
    return out;
  }

  if (opts.with_knowledge) record.knowledge = generate_knowledge(record, db.schema, gateway);
  out.record = record;
  return out;
}

ExpansionOutcome expand_path(const SeedRecord& seed,
                             const std::vector<const DatabaseEntry*>& databases,
                             const std::string& path, Gateway& gateway,
                             const ClassifyContext& ctx, const ExpandOptions& opts) {
  ExpansionOutcome outcome;
  for (std::size_t i = 0; i < databases.size(); ++i) {
    Candidate c = make_candidate(seed, *databases[i], static_cast<int>(i), path, gateway, ctx,
                                 opts);
    if (c.record)
      outcome.records.push_back(std::move(*c.record));
    else if (c.quarantine)
      outcome.quarantined.push_back(std::move(*c.quarantine));
    else
      outcome.skipped.push_back(seed.id + "/" + databases[i]->schema.id + " (" + path +
                                "): " + c.skip_reason);
  }
  return outcome;
}

}  // namespace

ExpansionOutcome expand_sql_oriented(const SeedRecord& seed,
                                     const std::vector<const DatabaseEntry*>& databases,
                                     Gateway& gateway, const ClassifyContext& ctx,
                                     const ExpandOptions& opts) {
  return expand_path(seed, databases, "sql_oriented", gateway, ctx, opts);
}

ExpansionOutcome expand_question_oriented(const SeedRecord& seed,
                                          const std::vector<const DatabaseEntry*>& databases,
                                          Gateway& gateway, const ClassifyContext& ctx,
                                          const ExpandOptions& opts) {
  return expand_path(seed, databases, "question_oriented", gateway, ctx, opts);
}

ValidationResult run_validators(const DatasetRecord& record, const std::string& db_path,
                                Gateway& gateway, double timeout_secs) {
  ValidationResult result;
  if (auto error = execute_on_copy(record.sql, db_path, timeout_secs))
    result.reasons.push_back("execution validator: " + *error);
  if (auto reason = semantic_verdict(record, gateway, nullptr))
    result.reasons.push_back(*reason);
  result.passed = result.reasons.empty();
  return result;
}

bool multi_step_calculation(const std::string& sql) {
  static const std::set<std::string> aggregates = {"SUM", "AVG", "COUNT", "MIN", "MAX", "TOTAL"};
  std::vector<sql::Token> tokens;
  try {
    tokens = sql::lex(sql);
  } catch (const std::exception&) {
    return false;
  }
  int arith = 0, aggs = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.kind == sql::TokenKind::Identifier && aggregates.count(t.upper) &&
        i + 1 < tokens.size() && tokens[i + 1].text == "(")
      ++aggs;
    if (t.kind == sql::TokenKind::Operator &&
        (t.text == "+" || t.text == "-" || t.text == "*" || t.text == "/" || t.text == "%")) {
      // binary use only: an operand must close on the left and open on the right
      bool left_ok = i > 0 && (tokens[i - 1].kind == sql::TokenKind::Identifier ||
                               tokens[i - 1].kind == sql::TokenKind::Number ||
                               tokens[i - 1].text == ")");
      bool right_ok = i + 1 < tokens.size() &&
                      (tokens[i + 1].kind == sql::TokenKind::Identifier ||
                       tokens[i + 1].kind == sql::TokenKind::Number ||
                       tokens[i + 1].text == "(");
      if (left_ok && right_ok) ++arith;
    }
  }
  return arith >= 1 && arith + aggs >= 2;
}

std::vector<KnowledgeItem> generate_knowledge(const DatasetRecord& record,
                                              const DatabaseSchema& schema, Gateway& gateway) {
  std::vector<KnowledgeItem> out;
  nlohmann::json items;
  try {
    std::string response = gateway.call("knowledge_generation",
                                        {{"schema", to_json(schema).dump(2)},
                                         {"question", record.question},
                                         {"sql", record.sql}});
    items = extract_structured(response, ExpectedShape{false, {"items"}}).at("items");
  } catch (const std::exception&) {
    return out;  // non-fatal: record kept with empty knowledge
  }
  if (!items.is_array()) return out;

  bool numeric_ok = multi_step_calculation(record.sql);
  for (const auto& j : items) {
    KnowledgeItem item;
    try {
      item = knowledge_item_from_json(j);
    } catch (const std::exception&) {
      continue;
    }
    if (item.kind == KnowledgeItem::Kind::NumericCalculation) {
      if (numeric_ok) out.push_back(item);
      continue;
    }
    // value mappings must name a value present verbatim in schema content
    // or the SQL text
    bool referential = false;
    std::size_t a = item.text.find('\'');
    std::size_t b = a == std::string::npos ? a : item.text.find('\'', a + 1);
    if (b != std::string::npos) {
      std::string value = item.text.substr(a + 1, b - a - 1);
      if (!value.empty()) {
        if (record.sql.find(value) != std::string::npos) referential = true;
        for (const auto& t : schema.tables)
          for (const auto& row : t.sample_rows)
            for (const auto& cell : row)
              if (cell == value) referential = true;
      }
    }
    if (referential) out.push_back(item);
  }
  return out;
}

}  // namespace synthsql
