#include "synthsql/pipeline/seed.hpp"

#include <algorithm>
#include <filesystem>
#include <thread>

#include "synthsql/dbforge/sqlite.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/gateway/extract.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  return double(inter) / double(a.size() + b.size() - inter);
}

std::set<std::string> label_set(const TaxonomyLabels& labels) {
  std::set<std::string> out;
  out.insert(name_of(labels.core_intent));
  out.insert(name_of(labels.statement_type));
  for (auto s : labels.syntax_structures) out.insert(name_of(s));
  for (auto a : labels.key_actions) out.insert(name_of(a));
  return out;
}

MatchResult match_combinations(const std::vector<LabeledPair>& records,
                               const std::vector<Combination>& combos) {
  MatchResult result;
  for (std::size_t c = 0; c < combos.size(); ++c) {
    bool found = false;
    for (std::size_t r = 0; r < records.size(); ++r) {
      if (records[r].labels == combos[c].labels && records[r].level == combos[c].level) {
        result.covered[c] = r;
        found = true;
        break;
      }
    }
    if (!found) result.uncovered.push_back(c);
  }
  return result;
}

std::vector<std::size_t> retrieve_blueprints(const Combination& combo,
                                             const std::vector<LabeledPair>& records,
                                             std::size_t k) {
  if (records.empty()) throw EmptyCorpus("retrieve_blueprints: empty corpus");
  std::set<std::string> target = label_set(combo.labels);
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    scored.emplace_back(jaccard(target, label_set(records[i].labels)), i);
  // stable sort by descending similarity keeps corpus order on ties
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < scored.size() && i < k; ++i) out.push_back(scored[i].second);
  return out;
}

std::optional<std::string> execute_on_copy(const std::string& sql, const std::string& db_path,
                                           double timeout_secs) {
  namespace fs = std::filesystem;
  fs::path copy = fs::path(db_path);
  copy += ".exec-" + hex64(fnv1a(sql)) + "-" + std::to_string(
      std::hash<std::thread::id>{}(std::this_thread::get_id()) % 100000) + ".tmp";
  copy_database_file(db_path, copy.string());
  std::optional<std::string> error;
  try {
    SqliteDb db(copy.string());
    error = db.run_guarded(sql, timeout_secs);
  } catch (const std::exception& e) {
    error = e.what();
  }
  std::error_code ec;
  fs::remove(copy, ec);
  return error;
}

namespace {

struct SeedCheck {
  bool ok = false;
  bool execution_failure = false;  // vs label mismatch / parse trouble
  std::string diagnosis;
};

std::string label_diff(const TaxonomyLabels& want, ComplexityLevel want_level,
                       const TaxonomyLabels& got, ComplexityLevel got_level) {
  auto set_diff = [](const std::set<std::string>& w, const std::set<std::string>& g) {
    std::string out;
    for (const auto& x : w)
      if (!g.count(x)) out += " -" + x;
    for (const auto& x : g)
      if (!w.count(x)) out += " +" + x;
    return out;
  };
  std::string out = "label mismatch:";
  if (want.core_intent != got.core_intent)
    out += " intent " + name_of(got.core_intent) + " != " + name_of(want.core_intent) + ";";
  if (want.statement_type != got.statement_type)
    out += " statement " + name_of(got.statement_type) + " != " + name_of(want.statement_type) +
           ";";
  std::set<std::string> ws, gs;
  for (auto s : want.syntax_structures) ws.insert(name_of(s));
  for (auto s : got.syntax_structures) gs.insert(name_of(s));
  std::string sd = set_diff(ws, gs);
  if (!sd.empty()) out += " structures" + sd + ";";
  std::set<std::string> wa, ga;
  for (auto a : want.key_actions) wa.insert(name_of(a));
  for (auto a : got.key_actions) ga.insert(name_of(a));
  std::string ad = set_diff(wa, ga);
  if (!ad.empty()) out += " actions" + ad + ";";
  if (want_level != got_level)
    out += " level " + name_of(got_level) + " != " + name_of(want_level) + ";";
  return out;
}

SeedCheck check_seed(const std::string& question, const std::string& sql,
                     const Combination& combo, const std::string& db_path,
                     const ClassifyContext& ctx, double timeout_secs) {
  SeedCheck check;
  ClassifiedRecord rec;
  try {
    rec = classify_pair(question, sql, ctx.dialect, ctx.functions, ctx.temporal, ctx.complexity);
  } catch (const std::exception& e) {
    check.execution_failure = true;  // parse trouble routes to repair
    check.diagnosis = std::string("classification failed: ") + e.what();
    return check;
  }
  if (!(rec.labels == combo.labels) || rec.level != combo.level) {
    check.diagnosis = label_diff(combo.labels, combo.level, rec.labels, rec.level);
    return check;
  }
  if (auto error = execute_on_copy(sql, db_path, timeout_secs)) {
    check.execution_failure = true;
    check.diagnosis = "execution failed: " + *error;
    return check;
  }
  check.ok = true;
  return check;
}

nlohmann::json blueprints_json(const std::vector<LabeledPair>& blueprints) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& b : blueprints)
    out.push_back({{"id", b.pair.id}, {"question", b.pair.question}, {"sql", b.pair.sql}});
  return out;
}

// Shared by generate_seed (inline repair) and the public repair_loop.
struct RepairOutcome {
  bool ok = false;
  std::string sql;
  std::string diagnosis;
  std::vector<std::string> call_ids;
};

RepairOutcome try_repair(const std::string& question, std::string sql, std::string error,
                         const Combination& combo, const DatabaseSchema& schema,
                         const std::string& db_path, Gateway& gateway,
                         const ClassifyContext& ctx, int budget, double timeout_secs) {
  RepairOutcome outcome;
  for (int attempt = 1; attempt <= budget; ++attempt) {
    std::string call_id;
    std::string response = gateway.call("seed_repair",
                                        {{"sql", sql},
                                         {"error", error},
                                         {"schema", to_json(schema).dump(2)},
                                         {"attempt", std::to_string(attempt)}},
                                        &call_id);
    outcome.call_ids.push_back(call_id);
    try {
      auto value = extract_structured(response, ExpectedShape{false, {"sql"}});
      sql = value.at("sql").get<std::string>();
    } catch (const std::exception& e) {
      outcome.diagnosis = std::string("repair extraction failed: ") + e.what();
      error = outcome.diagnosis;
      continue;
    }
    SeedCheck check = check_seed(question, sql, combo, db_path, ctx, timeout_secs);
    if (check.ok) {
      outcome.ok = true;
      outcome.sql = sql;
      return outcome;
    }
    outcome.diagnosis = check.diagnosis;
    error = check.diagnosis;
  }
  return outcome;
}

}  // namespace

SeedRecord generate_seed(const Combination& combo, const std::vector<LabeledPair>& blueprints,
                         const DatabaseSchema& schema, const std::string& db_path,
                         Gateway& gateway, const ClassifyContext& ctx, const SeedOptions& opts) {
  if (blueprints.empty()) throw EmptyCorpus("generate_seed: no blueprints");

  std::string combo_json = to_json(combo).dump(2);
  std::string schema_json = to_json(schema).dump(2);
  std::string last_diag = "no attempts made";
  std::vector<std::string> call_ids;

  for (int attempt = 1; attempt <= opts.attempts; ++attempt) {
    std::string call_id;
    std::string response = gateway.call("seed_modification",
                                        {{"combination", combo_json},
                                         {"blueprints", blueprints_json(blueprints).dump(2)},
                                         {"schema", schema_json},
                                         {"attempt", std::to_string(attempt)}},
                                        &call_id);
    call_ids.push_back(call_id);

    std::string question, sql;
    try {
      auto value = extract_structured(response, ExpectedShape{false, {"question", "sql"}});
      question = value.at("question").get<std::string>();
      sql = value.at("sql").get<std::string>();
    } catch (const std::exception& e) {
      last_diag = std::string("attempt ") + std::to_string(attempt) + ": " + e.what();
      continue;
    }

    SeedCheck check = check_seed(question, sql, combo, db_path, ctx, opts.timeout_secs);
    std::string status = "generated";
    if (!check.ok && check.execution_failure) {
      RepairOutcome repair = try_repair(question, sql, check.diagnosis, combo, schema, db_path,
                                        gateway, ctx, opts.repair_budget, opts.timeout_secs);
      call_ids.insert(call_ids.end(), repair.call_ids.begin(), repair.call_ids.end());
      if (repair.ok) {
        sql = repair.sql;
        status = "repaired";
        check.ok = true;
      } else {
        check.diagnosis += " (repair: " + repair.diagnosis + ")";
      }
    }
    if (!check.ok) {
      last_diag = "attempt " + std::to_string(attempt) + ": " + check.diagnosis;
      continue;
    }

    SeedRecord seed;
    seed.id = "seed-" + hex64(fnv1a(to_json(combo).dump() + "|" + schema.id));
    seed.db_id = schema.id;
    seed.question = question;
    seed.sql = sql;
    seed.combination = combo;
    for (const auto& b : blueprints) seed.blueprint_ids.push_back(b.pair.id);
    seed.status = status;
    seed.gateway_call_ids = call_ids;
    return seed;
  }
  throw SeedRejected("seed for combination " + to_json(combo).dump() + " rejected: " + last_diag);
}

SeedRecord repair_loop(const SeedRecord& record, const DatabaseSchema& schema,
                       const std::string& db_path, Gateway& gateway, const ClassifyContext& ctx,
                       int budget, double timeout_secs) {
  if (!execute_on_copy(record.sql, db_path, timeout_secs)) return record;  // already executes

  auto initial_error = execute_on_copy(record.sql, db_path, timeout_secs);
  RepairOutcome repair = try_repair(record.question, record.sql, *initial_error,
                                    record.combination, schema, db_path, gateway, ctx, budget,
                                    timeout_secs);
  if (!repair.ok)
    throw RepairExhausted("seed " + record.id + " not repaired after " + std::to_string(budget) +
                          " attempts: " + repair.diagnosis);
  SeedRecord out = record;
  out.sql = repair.sql;
  out.status = "repaired";
  out.gateway_call_ids.insert(out.gateway_call_ids.end(), repair.call_ids.begin(),
                              repair.call_ids.end());
  return out;
}

}  // namespace synthsql
