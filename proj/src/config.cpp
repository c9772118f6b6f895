#include "synthsql/config.hpp"

#include "json.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

using nlohmann::json;

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
}

template <typename Enum, typename Lookup>
void read_weights(const json& j, const std::string& key, const Lookup& lookup,
                  std::map<Enum, int>* out) {
  if (!j.contains(key)) return;
  expect_object(j.at(key), key);
  for (const auto& [name, value] : j.at(key).items()) {
    auto id = lookup(name);
    if (!id) throw ConfigError(key + ": unknown category \"" + name + "\"");
    if (!value.is_number_integer() || value.template get<int>() < 0)
      throw ConfigError(key + "." + name + ": weight must be a non-negative integer");
    (*out)[*id] = value.template get<int>();
  }
}

ComplexityConfig::Range read_range(const json& j, const std::string& key,
                                   ComplexityConfig::Range fallback) {
  if (!j.contains(key)) return fallback;
  const auto& r = j.at(key);
  if (!r.is_array() || r.empty() || r.size() > 2)
    throw ConfigError("levels." + key + ": expected [lo] or [lo, hi]");
  ComplexityConfig::Range out = fallback;
  out.lo = r[0].get<int>();
  out.hi = r.size() == 2 ? r[1].get<int>() : (1 << 30);
  return out;
}

template <typename Enum, typename Lookup>
std::vector<Enum> read_subset(const json& j, const std::string& key, const Lookup& lookup,
                              std::vector<Enum> fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_array()) throw ConfigError("taxonomy." + key + ": expected an array");
  std::vector<Enum> out;
  for (const auto& name : j.at(key)) {
    auto id = lookup(name.get<std::string>());
    if (!id)
      throw ConfigError("taxonomy." + key + ": unknown category \"" +
                        name.get<std::string>() + "\"");
    out.push_back(*id);
  }
  if (out.empty()) throw ConfigError("taxonomy." + key + ": subset must not be empty");
  return out;
}

}  // namespace

ToolkitConfig ToolkitConfig::load(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  expect_object(doc, path);

  ToolkitConfig cfg;
  try {
    if (doc.contains("complexity")) {
      const auto& c = doc.at("complexity");
      expect_object(c, "complexity");
      read_weights(c, "intent_weights", core_intent_from, &cfg.complexity.intent_weights);
      read_weights(c, "statement_weights", statement_type_from,
                   &cfg.complexity.statement_weights);
      read_weights(c, "structure_weights", syntax_structure_from,
                   &cfg.complexity.structure_weights);
      read_weights(c, "action_weights", key_action_from, &cfg.complexity.action_weights);
      if (c.contains("levels")) {
        const auto& levels = c.at("levels");
        expect_object(levels, "complexity.levels");
        cfg.complexity.simple = read_range(levels, "simple", cfg.complexity.simple);
        cfg.complexity.medium = read_range(levels, "medium", cfg.complexity.medium);
        cfg.complexity.hard = read_range(levels, "hard", cfg.complexity.hard);
      }
      cfg.complexity.validate();
    }

    if (doc.contains("enumeration")) {
      const auto& e = doc.at("enumeration");
      expect_object(e, "enumeration");
      cfg.caps.max_structures = e.value("max_structures", cfg.caps.max_structures);
      cfg.caps.max_actions = e.value("max_actions", cfg.caps.max_actions);
      cfg.caps.hard_ceiling = e.value("hard_ceiling", cfg.caps.hard_ceiling);
      if (cfg.caps.max_structures < 0 || cfg.caps.max_actions < 0 || cfg.caps.hard_ceiling <= 0)
        throw ConfigError("enumeration: caps must be positive");
    }

    if (doc.contains("taxonomy")) {
      const auto& t = doc.at("taxonomy");
      expect_object(t, "taxonomy");
      cfg.subset.intents = read_subset(t, "intents", core_intent_from, cfg.subset.intents);
      cfg.subset.statements =
          read_subset(t, "statements", statement_type_from, cfg.subset.statements);
      cfg.subset.structures =
          read_subset(t, "structures", syntax_structure_from, cfg.subset.structures);
      cfg.subset.actions = read_subset(t, "actions", key_action_from, cfg.subset.actions);
    }

    if (doc.contains("temporal_formats")) {
      if (!doc.at("temporal_formats").is_array())
        throw ConfigError("temporal_formats: expected an array of format strings");
      cfg.temporal.formats = doc.at("temporal_formats").get<std::vector<std::string>>();
      if (cfg.temporal.formats.empty())
        throw ConfigError("temporal_formats: must not be empty");
    }

    cfg.function_table_path = doc.value("function_table", cfg.function_table_path);
    cfg.timeout_secs = doc.value("timeout_secs", cfg.timeout_secs);
    if (cfg.timeout_secs <= 0) throw ConfigError("timeout_secs: must be positive");
    cfg.sample_rows = doc.value("sample_rows", cfg.sample_rows);
    if (cfg.sample_rows < 1) throw ConfigError("sample_rows: must be at least 1");

    if (doc.contains("pipeline")) {
      const auto& p = doc.at("pipeline");
      expect_object(p, "pipeline");
      cfg.db_sample_per_path = p.value("db_sample_per_path", cfg.db_sample_per_path);
      cfg.seed_attempts = p.value("seed_attempts", cfg.seed_attempts);
      cfg.repair_budget = p.value("repair_budget", cfg.repair_budget);
      cfg.blueprint_k = p.value("blueprint_k", cfg.blueprint_k);
      cfg.database_count = p.value("database_count", cfg.database_count);
      cfg.corpus_path = p.value("corpus", cfg.corpus_path);
      cfg.source_tables_path = p.value("source_tables", cfg.source_tables_path);
      cfg.sql_oriented = p.value("sql_oriented", cfg.sql_oriented);
      cfg.question_oriented = p.value("question_oriented", cfg.question_oriented);
      if (cfg.db_sample_per_path < 1 || cfg.seed_attempts < 1 || cfg.repair_budget < 0 ||
          cfg.blueprint_k < 1 || cfg.database_count < 1)
        throw ConfigError("pipeline: counts must be positive");
      if (!cfg.sql_oriented && !cfg.question_oriented)
        throw ConfigError("pipeline: at least one expansion path must be enabled");
    }

    if (doc.contains("diversity")) {
      const auto& d = doc.at("diversity");
      expect_object(d, "diversity");
      cfg.cluster_threshold = d.value("cluster_threshold", cfg.cluster_threshold);
      if (cfg.cluster_threshold < -1.0 || cfg.cluster_threshold > 1.0)
        throw ConfigError("diversity.cluster_threshold: must be within [-1, 1]");
    }
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return cfg;
}

}  // namespace synthsql
