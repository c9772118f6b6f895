// synthsql: operator surface for the taxonomy-guided text-to-SQL toolkit.
// One subcommand per pipeline stage; `pipeline` wires them end to end.

#include <cxxabi.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "synthsql/config.hpp"
#include "synthsql/corpus.hpp"
#include "synthsql/dbforge/forge.hpp"
#include "synthsql/dbforge/init.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/eval/diversity.hpp"
#include "synthsql/eval/execution.hpp"
#include "synthsql/eval/quality.hpp"
#include "synthsql/eval/stats.hpp"
#include "synthsql/gateway/gateway.hpp"
#include "synthsql/gateway/mock_provider.hpp"
#include "synthsql/pipeline/expand.hpp"
#include "synthsql/pipeline/seed.hpp"
#include "synthsql/records.hpp"
#include "synthsql/taxonomy/classify.hpp"
#include "synthsql/taxonomy/coverage.hpp"
#include "synthsql/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace synthsql;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string prompts_dir = "prompts";
  std::string provider = "mock";
  std::uint64_t seed = 0;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  double timeout_secs = 0.0;  // 0 = take the config value
  std::string out;
  std::string format = "text";  // "text" | "structured"
};

ToolkitConfig load_config(const GlobalOpts& g) {
  ToolkitConfig cfg;
  if (!g.config_path.empty()) cfg = ToolkitConfig::load(g.config_path);
  if (g.timeout_secs > 0.0) cfg.timeout_secs = g.timeout_secs;
  return cfg;
}

ClassifyContext make_ctx(const ToolkitConfig& cfg) {
  ClassifyContext ctx = ClassifyContext::defaults();
  ctx.complexity = cfg.complexity;
  ctx.temporal = cfg.temporal;
  if (!cfg.function_table_path.empty())
    ctx.functions = sql::FunctionTable::from_file(cfg.function_table_path);
  return ctx;
}

Gateway make_gateway(const GlobalOpts& g) {
  PromptLibrary library = PromptLibrary::load(g.prompts_dir);
  std::shared_ptr<Provider> provider;
  RetryPolicy retry;
  if (g.provider == "mock") {
    provider = make_mock_provider();
    retry.base_backoff_ms = 0;
  } else {
    provider = make_remote_provider();
  }
  return Gateway(std::move(library), std::move(provider), retry);
}

// stdout when --out is empty, atomic file write otherwise.
void emit(const GlobalOpts& g, const std::string& content) {
  if (g.out.empty())
    std::cout << content;
  else
    atomic_write(g.out, content);
}

std::vector<CorpusPair> load_pairs(const std::string& path, bool spider_layout) {
  return spider_layout ? load_spider_json(path) : load_corpus_jsonl(path);
}

json labeled_to_json(const LabeledPair& lp, int score) {
  json j = {{"question", lp.pair.question}, {"sql", lp.pair.sql},
            {"labels", to_json(lp.labels)}, {"level", name_of(lp.level)},
            {"score", score}};
  if (!lp.pair.id.empty()) j["id"] = lp.pair.id;
  if (!lp.pair.db_id.empty()) j["db_id"] = lp.pair.db_id;
  return j;
}

// ---- database index: one {"path", "schema"} object per line ----

std::vector<DatabaseEntry> load_db_index(const std::string& dir) {
  std::vector<DatabaseEntry> entries;
  const std::string index = (fs::path(dir) / "databases.jsonl").string();
  for (const auto& line : read_lines(index)) {
    if (trim(line).empty()) continue;
    json j = json::parse(line);
    DatabaseEntry e;
    e.schema = database_schema_from_json(j.at("schema"));
    e.path = (fs::path(dir) / j.at("path").get<std::string>()).string();
    if (!fs::exists(e.path)) throw IoError("database file missing: " + e.path);
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw EmptyCorpus("no databases indexed in " + dir);
  return entries;
}

struct ForgeOutcome {
  std::vector<DatabaseEntry> entries;
  std::vector<std::string> skipped;
  std::string index_text;
};

ForgeOutcome forge_databases(const std::vector<SourceTable>& sources, int count,
                             const std::string& dir, Gateway& gateway) {
  fs::create_directories(dir);
  ForgeOutcome out;
  std::string index;
  for (const auto& source : sources) {
    if (static_cast<int>(out.entries.size()) >= count) break;
    try {
      DatabaseSchema schema = generate_database(source, gateway);
      schema = enhance_database(schema, gateway);
      const std::string file = schema.id + ".sqlite";
      const std::string path = (fs::path(dir) / file).string();
      initialize_database(schema, path);
      index += json{{"path", file}, {"schema", to_json(schema)}}.dump() + "\n";
      out.entries.push_back({std::move(schema), path});
    } catch (const std::exception& e) {
      out.skipped.push_back(source.id + ": " + e.what());
    }
  }
  if (out.entries.empty()) throw SchemaRejected("no source table produced a valid database");
  atomic_write((fs::path(dir) / "databases.jsonl").string(), index);
  out.index_text = index;
  return out;
}

// ---- seed stage ----

struct SeedStage {
  std::vector<SeedRecord> seeds;
  std::vector<std::string> skipped;
};

SeedStage run_seed_stage(const std::vector<Combination>& combos,
                         const std::vector<LabeledPair>& corpus,
                         const std::vector<DatabaseEntry>& dbs, Gateway& gateway,
                         const ClassifyContext& ctx, const ToolkitConfig& cfg) {
  SeedStage out;
  MatchResult matched = match_combinations(corpus, combos);
  SeedOptions opts{cfg.seed_attempts, cfg.repair_budget, cfg.timeout_secs};
  for (std::size_t i = 0; i < combos.size(); ++i) {
    auto hit = matched.covered.find(i);
    if (hit != matched.covered.end()) {
      const LabeledPair& lp = corpus[hit->second];
      SeedRecord seed;
      seed.id = "seed-" + hex64(fnv1a(to_json(combos[i]).dump() + "|reused|" + lp.pair.id));
      seed.db_id = lp.pair.db_id;
      seed.question = lp.pair.question;
      seed.sql = lp.pair.sql;
      seed.combination = combos[i];
      seed.blueprint_ids = {lp.pair.id};
      seed.status = "reused";
      out.seeds.push_back(std::move(seed));
      continue;
    }
    std::vector<LabeledPair> blueprints;
    if (!corpus.empty())
      for (std::size_t idx :
           retrieve_blueprints(combos[i], corpus, static_cast<std::size_t>(cfg.blueprint_k)))
        blueprints.push_back(corpus[idx]);
    std::string last_error = "no database available";
    bool done = false;
    // deterministic database rotation: start at i, try up to three databases
    for (std::size_t t = 0; t < std::min<std::size_t>(3, dbs.size()) && !done; ++t) {
      const DatabaseEntry& db = dbs[(i + t) % dbs.size()];
      try {
        out.seeds.push_back(
            generate_seed(combos[i], blueprints, db.schema, db.path, gateway, ctx, opts));
        done = true;
      } catch (const std::exception& e) {
        last_error = e.what();
      }
    }
    if (!done)
      out.skipped.push_back("combination " + std::to_string(i) + ": " + last_error);
  }
  return out;
}

// ---- expansion stage ----

struct ExpandStage {
  std::vector<DatasetRecord> records;
  std::vector<QuarantineEntry> quarantined;
  std::vector<std::string> skipped;
};

ExpandStage run_expand_stage(const std::vector<SeedRecord>& seeds,
                             const std::vector<DatabaseEntry>& dbs, Gateway& gateway,
                             const ClassifyContext& ctx, const ToolkitConfig& cfg,
                             std::uint64_t global_seed, unsigned jobs,
                             bool question_oriented_enabled) {
  struct Task {
    const SeedRecord* seed;
    std::string path;
    std::vector<const DatabaseEntry*> sample;
  };
  std::vector<Task> tasks;
  std::vector<std::string> paths;
  if (cfg.sql_oriented) paths.push_back("sql_oriented");
  if (cfg.question_oriented && question_oriented_enabled) paths.push_back("question_oriented");
  const std::size_t k = std::min<std::size_t>(dbs.size(),
                                              static_cast<std::size_t>(cfg.db_sample_per_path));
  for (const auto& seed : seeds)
    for (const auto& path : paths) {
      // per-(seed, path) stream keyed off the single global seed
      Rng rng(global_seed ^ fnv1a(seed.id + "|" + path));
      Task task{&seed, path, {}};
      for (std::size_t idx : rng.sample_without_replacement(dbs.size(), k))
        task.sample.push_back(&dbs[idx]);
      tasks.push_back(std::move(task));
    }

  ExpandOptions opts;
  opts.timeout_secs = cfg.timeout_secs;
  std::vector<ExpansionOutcome> outcomes(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    outcomes[i] = t.path == "sql_oriented"
                      ? expand_sql_oriented(*t.seed, t.sample, gateway, ctx, opts)
                      : expand_question_oriented(*t.seed, t.sample, gateway, ctx, opts);
  });

  ExpandStage out;
  for (auto& o : outcomes) {
    for (auto& r : o.records) out.records.push_back(std::move(r));
    for (auto& q : o.quarantined) out.quarantined.push_back(std::move(q));
    for (auto& s : o.skipped) out.skipped.push_back(std::move(s));
  }
  return out;
}

std::string quarantine_jsonl(const std::vector<QuarantineEntry>& entries) {
  std::string text;
  for (const auto& e : entries) {
    json j = to_json(e.record);
    j["quarantine_reasons"] = e.reasons;
    text += j.dump() + "\n";
  }
  return text;
}

// ---- subcommand bodies ----

int cmd_classify(const GlobalOpts& g, const std::string& in, bool spider,
                 const std::string& question, const std::string& sql_text) {
  ToolkitConfig cfg = load_config(g);
  ClassifyContext ctx = make_ctx(cfg);
  if (!question.empty() || !sql_text.empty()) {
    ClassifiedRecord rec =
        classify_pair(question, sql_text, ctx.dialect, ctx.functions, ctx.temporal,
                      ctx.complexity);
    json j = {{"labels", to_json(rec.labels)}, {"level", name_of(rec.level)},
              {"score", rec.score}};
    emit(g, j.dump(2) + "\n");
    return 0;
  }
  if (in.empty()) throw ConfigError("classify: provide --in or --question/--sql");
  auto pairs = load_pairs(in, spider);
  std::string out_text;
  for (const auto& p : pairs) {
    ClassifiedRecord rec = classify_pair(p.question, p.sql, ctx.dialect, ctx.functions,
                                         ctx.temporal, ctx.complexity);
    LabeledPair lp{p, rec.labels, rec.level};
    out_text += labeled_to_json(lp, rec.score).dump() + "\n";
  }
  emit(g, out_text);
  return 0;
}

int cmd_analyze(const GlobalOpts& g, const std::string& in, bool spider) {
  ToolkitConfig cfg = load_config(g);
  ClassifyContext ctx = make_ctx(cfg);
  std::vector<std::string> skipped;
  auto labeled =
      label_corpus(load_pairs(in, spider), ctx.functions, ctx.temporal, ctx.complexity, &skipped);
  std::vector<TaxonomyLabels> labels;
  labels.reserve(labeled.size());
  for (const auto& lp : labeled) labels.push_back(lp.labels);
  CoverageReport report = coverage_report(labels);
  if (g.format == "structured") {
    json j = to_json(report);
    j["skipped"] = skipped;
    emit(g, j.dump(2) + "\n");
  } else {
    std::string text = format_coverage_table(report);
    if (!skipped.empty())
      text += "skipped " + std::to_string(skipped.size()) + " unparseable pair(s)\n";
    emit(g, text);
  }
  return 0;
}

int cmd_combos(const GlobalOpts& g) {
  ToolkitConfig cfg = load_config(g);
  auto combos = enumerate_combinations(cfg.complexity, cfg.caps, cfg.subset);
  std::string text;
  for (const auto& c : combos) text += to_json(c).dump() + "\n";
  emit(g, text);
  std::cerr << combos.size() << " valid combination(s)\n";
  return 0;
}

int cmd_dbgen(const GlobalOpts& g, const std::string& in, int count) {
  if (g.out.empty()) throw ConfigError("dbgen: --out directory is required");
  ToolkitConfig cfg = load_config(g);
  Gateway gateway = make_gateway(g);
  auto sources = load_source_tables(in);
  ForgeOutcome forged =
      forge_databases(sources, count > 0 ? count : cfg.database_count, g.out, gateway);
  std::cerr << forged.entries.size() << " database(s) written to " << g.out << "\n";
  for (const auto& s : forged.skipped) std::cerr << "skipped " << s << "\n";
  return 0;
}

int cmd_seed(const GlobalOpts& g, const std::string& combos_path,
             const std::string& corpus_path, const std::string& db_dir, bool spider) {
  ToolkitConfig cfg = load_config(g);
  ClassifyContext ctx = make_ctx(cfg);
  Gateway gateway = make_gateway(g);
  std::vector<Combination> combos;
  for (const auto& line : read_lines(combos_path))
    if (!trim(line).empty()) combos.push_back(combination_from_json(json::parse(line)));
  std::vector<LabeledPair> corpus;
  if (!corpus_path.empty())
    corpus = label_corpus(load_pairs(corpus_path, spider), ctx.functions, ctx.temporal,
                          ctx.complexity);
  auto dbs = load_db_index(db_dir);
  SeedStage stage = run_seed_stage(combos, corpus, dbs, gateway, ctx, cfg);
  emit(g, to_jsonl(stage.seeds));
  std::cerr << stage.seeds.size() << " seed(s)";
  if (!stage.skipped.empty()) std::cerr << ", " << stage.skipped.size() << " skipped";
  std::cerr << "\n";
  for (const auto& s : stage.skipped) std::cerr << "skipped " << s << "\n";
  return 0;
}

int cmd_expand(const GlobalOpts& g, const std::string& seeds_path, const std::string& db_dir) {
  if (g.out.empty()) throw ConfigError("expand: --out directory is required");
  ToolkitConfig cfg = load_config(g);
  ClassifyContext ctx = make_ctx(cfg);
  Gateway gateway = make_gateway(g);
  auto seeds = seed_records_from_jsonl(seeds_path);
  auto dbs = load_db_index(db_dir);
  ExpandStage stage =
      run_expand_stage(seeds, dbs, gateway, ctx, cfg, g.seed, g.jobs, true);
  fs::create_directories(g.out);
  atomic_write((fs::path(g.out) / "dataset.jsonl").string(), to_jsonl(stage.records));
  atomic_write((fs::path(g.out) / "quarantine.jsonl").string(),
               quarantine_jsonl(stage.quarantined));
  atomic_write((fs::path(g.out) / "gateway_log.jsonl").string(), gateway.dump_log());
  std::cerr << stage.records.size() << " record(s), " << stage.quarantined.size()
            << " quarantined\n";
  return 0;
}

int cmd_evaluate(const GlobalOpts& g, const std::string& pred_path,
                 const std::string& gold_path, const std::string& db_dir,
                 const std::string& breakdown) {
  ToolkitConfig cfg = load_config(g);
  ClassifyContext ctx = make_ctx(cfg);
  auto resolve_db = [&](const json& j) -> std::string {
    if (j.contains("db_path")) return j.at("db_path").get<std::string>();
    if (j.contains("db_id") && !db_dir.empty())
      return (fs::path(db_dir) / (j.at("db_id").get<std::string>() + ".sqlite")).string();
    throw ConfigError("evaluate: record needs db_path, or db_id with --db-dir");
  };

  std::vector<EvalPair> pairs;
  if (gold_path.empty()) {
    for (const auto& line : read_lines(pred_path)) {
      if (trim(line).empty()) continue;
      json j = json::parse(line);
      EvalPair p;
      p.id = j.value("id", "");
      p.pred_sql = j.at("pred_sql").get<std::string>();
      p.gold_sql = j.at("gold_sql").get<std::string>();
      p.db_path = resolve_db(j);
      if (j.contains("labels")) p.labels = labels_from_json(j.at("labels"));
      pairs.push_back(std::move(p));
    }
  } else {
    std::map<std::string, std::string> preds;
    for (const auto& line : read_lines(pred_path)) {
      if (trim(line).empty()) continue;
      json j = json::parse(line);
      preds[j.at("id").get<std::string>()] = j.at("sql").get<std::string>();
    }
    for (const auto& line : read_lines(gold_path)) {
      if (trim(line).empty()) continue;
      json j = json::parse(line);
      EvalPair p;
      p.id = j.at("id").get<std::string>();
      auto hit = preds.find(p.id);
      if (hit == preds.end())
        throw ConfigError("evaluate: prediction file is missing id \"" + p.id + "\"");
      p.pred_sql = hit->second;
      p.gold_sql = j.at("sql").get<std::string>();
      p.db_path = resolve_db(j);
      if (j.contains("labels")) p.labels = labels_from_json(j.at("labels"));
      pairs.push_back(std::move(p));
    }
  }
  if (!breakdown.empty())
    for (auto& p : pairs)
      if (!p.labels) {
        ClassifiedRecord rec = classify_pair("", p.gold_sql, ctx.dialect, ctx.functions,
                                             ctx.temporal, ctx.complexity);
        p.labels = rec.labels;
      }

  AccuracyReport report = execution_accuracy(pairs, breakdown, cfg.timeout_secs, g.jobs);
  if (g.format == "structured") {
    json j = {{"accuracy", report.accuracy},
              {"matched", report.matched},
              {"total", report.total}};
    if (!report.breakdown.empty()) {
      json b = json::object();
      for (const auto& [k, v] : report.breakdown)
        b[k] = {{"matched", v.first}, {"total", v.second}};
      j["breakdown"] = b;
    }
    emit(g, j.dump(2) + "\n");
  } else {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "EX accuracy: %.4f (%zu/%zu)\n", report.accuracy,
                  report.matched, report.total);
    std::string text = buf;
    for (const auto& [k, v] : report.breakdown) {
      std::snprintf(buf, sizeof(buf), "  %-28s %.4f (%zu/%zu)\n", k.c_str(),
                    v.second ? double(v.first) / double(v.second) : 0.0, v.first, v.second);
      text += buf;
    }
    emit(g, text);
  }
  return 0;
}

int cmd_quality(const GlobalOpts& g, const std::string& in) {
  Gateway gateway = make_gateway(g);
  auto records = dataset_records_from_jsonl(in);
  if (records.empty()) throw EmptyCorpus("quality: no records in " + in);
  std::vector<std::vector<QualityVerdict>> all;
  std::vector<QualityVerdict> flat;
  for (const auto& r : records) {
    all.push_back(quality_judge(r, gateway));
    for (const auto& v : all.back()) flat.push_back(v);
  }
  double overall = aggregate_quality(flat);
  auto per_criterion = aggregate_by_criterion(all);
  if (g.format == "structured") {
    json j = {{"overall", overall}, {"records", records.size()},
              {"per_criterion", per_criterion}};
    emit(g, j.dump(2) + "\n");
  } else {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "Overall quality: %.4f over %zu record(s)\n", overall,
                  records.size());
    std::string text = buf;
    for (const auto& [criterion, score] : per_criterion) {
      std::snprintf(buf, sizeof(buf), "  %-36s %.4f\n", criterion.c_str(), score);
      text += buf;
    }
    emit(g, text);
  }
  return 0;
}

int cmd_stats(const GlobalOpts& g, const std::string& in) {
  ToolkitConfig cfg = load_config(g);
  ClassifyContext ctx = make_ctx(cfg);
  auto records = dataset_records_from_jsonl(in);
  CorpusStats stats = corpus_stats(records, ctx.functions, ctx.temporal);
  std::vector<std::string> questions;
  questions.reserve(records.size());
  for (const auto& r : records) questions.push_back(r.question);
  DiversityReport diversity =
      diversity_report(questions, hashed_bow_embedder(), cfg.cluster_threshold);
  if (g.format == "structured") {
    json j = to_json(stats);
    j["diversity"] = {{"ttr", diversity.ttr},
                      {"cluster_count", diversity.cluster_count},
                      {"sample_size", diversity.sample_size}};
    emit(g, j.dump(2) + "\n");
  } else {
    char buf[96];
    std::string text = format_stats_table(stats);
    std::snprintf(buf, sizeof(buf), "%-26s %8.4f\n", "TTR", diversity.ttr);
    text += buf;
    std::snprintf(buf, sizeof(buf), "%-26s %8zu\n", "Semantic clusters",
                  diversity.cluster_count);
    text += buf;
    emit(g, text);
  }
  return 0;
}

std::string now_iso8601() {
  char buf[32];
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int cmd_pipeline(const GlobalOpts& g, bool no_question_oriented) {
  if (g.out.empty()) throw ConfigError("pipeline: --out directory is required");
  ToolkitConfig cfg = load_config(g);
  if (cfg.source_tables_path.empty())
    throw ConfigError("pipeline: config must set pipeline.source_tables");
  ClassifyContext ctx = make_ctx(cfg);
  Gateway gateway = make_gateway(g);
  const std::string started = now_iso8601();
  fs::create_directories(g.out);

  // Block 1: database forging + initialization.
  auto sources = load_source_tables(cfg.source_tables_path);
  ForgeOutcome forged = forge_databases(sources, cfg.database_count,
                                        (fs::path(g.out) / "databases").string(), gateway);

  // Block 2: combination enumeration over the configured taxonomy subset.
  auto combos = enumerate_combinations(cfg.complexity, cfg.caps, cfg.subset);
  std::string combos_text;
  for (const auto& c : combos) combos_text += to_json(c).dump() + "\n";
  atomic_write((fs::path(g.out) / "combos.jsonl").string(), combos_text);

  // Block 3: seed set — reuse covered combinations from the corpus, generate
  // the uncovered ones against forged databases.
  std::vector<LabeledPair> corpus;
  if (!cfg.corpus_path.empty())
    corpus = label_corpus(load_corpus_jsonl(cfg.corpus_path), ctx.functions, ctx.temporal,
                          ctx.complexity);
  SeedStage seeded = run_seed_stage(combos, corpus, forged.entries, gateway, ctx, cfg);
  atomic_write((fs::path(g.out) / "seeds.jsonl").string(), to_jsonl(seeded.seeds));

  // Block 4: dual-path expansion with validation.
  ExpandStage expanded = run_expand_stage(seeded.seeds, forged.entries, gateway, ctx, cfg,
                                          g.seed, g.jobs, !no_question_oriented);
  atomic_write((fs::path(g.out) / "dataset.jsonl").string(), to_jsonl(expanded.records));
  atomic_write((fs::path(g.out) / "quarantine.jsonl").string(),
               quarantine_jsonl(expanded.quarantined));
  atomic_write((fs::path(g.out) / "gateway_log.jsonl").string(), gateway.dump_log());

  json config_snapshot;
  if (!g.config_path.empty()) config_snapshot = json::parse(read_file(g.config_path));
  json manifest = {
      {"run_id", hex64(fnv1a(g.config_path + "|" + std::to_string(g.seed) + "|" + g.provider))},
      {"seed", g.seed},
      {"provider", g.provider},
      {"prompts_dir", g.prompts_dir},
      {"config_path", g.config_path},
      {"config_snapshot", config_snapshot},
      {"started", started},
      {"finished", now_iso8601()},
      {"stages",
       {{"dbgen",
         {{"out", "databases"},
          {"databases", forged.entries.size()},
          {"skipped", forged.skipped}}},
        {"combos", {{"out", "combos.jsonl"}, {"count", combos.size()}}},
        {"seed",
         {{"out", "seeds.jsonl"},
          {"seeds", seeded.seeds.size()},
          {"skipped", seeded.skipped}}},
        {"expand",
         {{"out", "dataset.jsonl"},
          {"quarantine", "quarantine.jsonl"},
          {"records", expanded.records.size()},
          {"quarantined", expanded.quarantined.size()},
          {"skipped", expanded.skipped}}}}},
      {"gateway_log", "gateway_log.jsonl"}};
  atomic_write((fs::path(g.out) / "manifest.json").string(), manifest.dump(2) + "\n");

  std::cerr << "pipeline: " << forged.entries.size() << " database(s), " << combos.size()
            << " combination(s), " << seeded.seeds.size() << " seed(s), "
            << expanded.records.size() << " record(s), " << expanded.quarantined.size()
            << " quarantined\n";
  return 0;
}

std::string type_name(const std::exception& e) {
  int status = 0;
  char* demangled = abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
  std::string name = status == 0 && demangled ? demangled : typeid(e).name();
  std::free(demangled);
  auto pos = name.rfind("::");
  return pos == std::string::npos ? name : name.substr(pos + 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"taxonomy-guided text-to-SQL synthesis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON config file");
  app.add_option("--prompts-dir", g.prompts_dir, "prompt template directory");
  app.add_option("--provider", g.provider, "model provider")
      ->check(CLI::IsMember({"mock", "remote"}));
  app.add_option("--seed", g.seed, "global random seed");
  app.add_option("--jobs", g.jobs, "worker pool size");
  app.add_option("--timeout-secs", g.timeout_secs, "SQL execution timeout");
  app.add_option("--out", g.out, "output file or directory");
  app.add_option("--format", g.format, "report format")
      ->check(CLI::IsMember({"text", "structured"}));

  std::string in, question, sql_text, combos_path, corpus_path, db_dir, seeds_path;
  std::string pred_path, gold_path, breakdown;
  bool spider = false, no_question_oriented = false;
  int count = 0;

  auto* classify = app.add_subcommand("classify", "label question/SQL pairs");
  classify->add_option("--in", in, "corpus file (jsonl)");
  classify->add_flag("--spider", spider, "input is a Spider-layout JSON array");
  classify->add_option("--question", question, "single question to classify");
  classify->add_option("--sql", sql_text, "single SQL statement to classify");

  auto* analyze = app.add_subcommand("analyze", "coverage report over a corpus");
  analyze->add_option("--in", in, "corpus file (jsonl)")->required();
  analyze->add_flag("--spider", spider, "input is a Spider-layout JSON array");

  app.add_subcommand("combos", "enumerate valid combinations");

  auto* dbgen = app.add_subcommand("dbgen", "forge databases from source tables");
  dbgen->add_option("--in", in, "source tables (jsonl)")->required();
  dbgen->add_option("--count", count, "databases to produce");

  auto* seed_cmd = app.add_subcommand("seed", "build the seed set");
  seed_cmd->add_option("--combos", combos_path, "combination list (jsonl)")->required();
  seed_cmd->add_option("--corpus", corpus_path, "blueprint corpus (jsonl)");
  seed_cmd->add_option("--db-dir", db_dir, "dbgen output directory")->required();
  seed_cmd->add_flag("--spider", spider, "corpus is a Spider-layout JSON array");

  auto* expand = app.add_subcommand("expand", "dual-path expansion of seeds");
  expand->add_option("--seeds", seeds_path, "seed set (jsonl)")->required();
  expand->add_option("--db-dir", db_dir, "dbgen output directory")->required();

  auto* evaluate = app.add_subcommand("evaluate", "execution accuracy");
  evaluate->add_option("--pred", pred_path, "predictions (jsonl)")->required();
  evaluate->add_option("--gold", gold_path, "gold queries (jsonl)");
  evaluate->add_option("--db-dir", db_dir, "directory holding <db_id>.sqlite files");
  evaluate->add_option("--breakdown", breakdown, "taxonomy breakdown dimension")
      ->check(CLI::IsMember({"core_intent", "statement_type", "syntax_structure",
                             "key_action"}));

  auto* quality = app.add_subcommand("quality", "LLM-judged quality report");
  quality->add_option("--in", in, "dataset records (jsonl)")->required();

  auto* stats = app.add_subcommand("stats", "corpus statistics and diversity");
  stats->add_option("--in", in, "dataset records (jsonl)")->required();

  auto* pipeline = app.add_subcommand("pipeline", "run all stages end to end");
  pipeline->add_flag("--no-question-oriented", no_question_oriented,
                     "disable the question-oriented expansion path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(g, in, spider, question, sql_text);
    if (analyze->parsed()) return cmd_analyze(g, in, spider);
    if (app.got_subcommand("combos")) return cmd_combos(g);
    if (dbgen->parsed()) return cmd_dbgen(g, in, count);
    if (seed_cmd->parsed()) return cmd_seed(g, combos_path, corpus_path, db_dir, spider);
    if (expand->parsed()) return cmd_expand(g, seeds_path, db_dir);
    if (evaluate->parsed()) return cmd_evaluate(g, pred_path, gold_path, db_dir, breakdown);
    if (quality->parsed()) return cmd_quality(g, in);
    if (stats->parsed()) return cmd_stats(g, in);
    if (pipeline->parsed()) return cmd_pipeline(g, no_question_oriented);
  } catch (const std::exception& e) {
    json err = {{"error", {{"type", type_name(e)}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
