// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier end-to-end checks shell out to the CLI binary.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthsql/dbforge/init.hpp"
#include "synthsql/dbforge/sqlite.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/eval/diversity.hpp"
#include "synthsql/eval/execution.hpp"
#include "synthsql/eval/quality.hpp"
#include "synthsql/pipeline/seed.hpp"
#include "synthsql/records.hpp"
#include "synthsql/taxonomy/classify.hpp"
#include "synthsql/taxonomy/coverage.hpp"
#include "synthsql/util.hpp"

namespace fs = std::filesystem;
using namespace synthsql;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

const char* kSourceDir = SYNTHSQL_SOURCE_DIR;
const char* kCliPath = SYNTHSQL_CLI_PATH;

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "synthsql_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

// ---------- criterion 1: exact classification of the handcrafted corpus ----

void criterion_1() {
  auto lines = read_lines(std::string(kSourceDir) + "/data/mini_corpus.jsonl");
  struct Case {
    std::string id, question, sql;
    TaxonomyLabels labels;
    ComplexityLevel level;
    int score;
  };
  std::vector<Case> cases;
  for (const auto& line : lines) {
    if (trim(line).empty()) continue;
    json j = json::parse(line);
    Case c;
    c.id = j.at("id").get<std::string>();
    c.question = j.at("question").get<std::string>();
    c.sql = j.at("sql").get<std::string>();
    c.labels = labels_from_json(j.at("labels"));
    c.level = *complexity_level_from(j.at("level").get<std::string>());
    c.score = j.at("score").get<int>();
    cases.push_back(std::move(c));
  }
  require(cases.size() >= 60, "corpus must hold at least 60 queries, found " +
                                  std::to_string(cases.size()));

  ClassifyContext ctx = ClassifyContext::defaults();
  auto start = Clock::now();
  std::size_t exact = 0;
  std::string first_miss;
  for (const auto& c : cases) {
    auto rec = classify_pair(c.question, c.sql, ctx.dialect, ctx.functions, ctx.temporal,
                             ctx.complexity);
    if (rec.labels == c.labels && rec.level == c.level && rec.score == c.score)
      ++exact;
    else if (first_miss.empty())
      first_miss = c.id;
  }
  double elapsed = seconds_since(start);
  require(exact == cases.size(), "only " + std::to_string(exact) + "/" +
                                     std::to_string(cases.size()) +
                                     " exact matches (first miss: " + first_miss + ")");
  require(elapsed < 1.0, "classification took " + std::to_string(elapsed) + "s (budget 1s)");
}

// ---------- criterion 2: published coverage profile reproduced ----

void criterion_2() {
  // fixture with 11/14 intents, 1/5 statements, 10/14 structures, 3/9 actions
  std::vector<TaxonomyLabels> corpus;
  std::vector<CoreIntent> intents(all_core_intents().begin(), all_core_intents().begin() + 11);
  std::vector<SyntaxStructure> structures(all_syntax_structures().begin(),
                                          all_syntax_structures().begin() + 10);
  std::vector<KeyAction> actions(all_key_actions().begin(), all_key_actions().begin() + 3);
  for (std::size_t i = 0; i < 64; ++i) {
    TaxonomyLabels l;
    l.core_intent = intents[i % intents.size()];
    l.statement_type = StatementType::Select;
    l.syntax_structures.insert(structures[i % structures.size()]);
    l.key_actions.insert(actions[i % actions.size()]);
    corpus.push_back(std::move(l));
  }
  auto report = coverage_report(corpus);
  auto close = [](double got, double want) { return std::fabs(got - want) <= 0.005; };
  require(close(report.statement_coverage, 0.20),
          "statement coverage " + std::to_string(report.statement_coverage) + " != 0.20");
  require(close(report.structure_coverage, 0.71),
          "structure coverage " + std::to_string(report.structure_coverage) + " != 0.71");
  require(close(report.action_coverage, 0.33),
          "action coverage " + std::to_string(report.action_coverage) + " != 0.33");
  require(close(report.intent_coverage, 0.79),
          "intent coverage " + std::to_string(report.intent_coverage) + " != 0.79");
}

// ---------- criterion 3: quality aggregation equals the brute-force mean ----

void criterion_3() {
  auto make = [](QualityLevel l) {
    QualityVerdict v;
    v.criterion = "c";
    v.level = l;
    v.explanation = "e";
    return v;
  };
  Rng rng(31337);
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t counts[4];
    std::size_t total = 0;
    for (auto& c : counts) {
      c = rng.below(6);
      total += c;
    }
    if (total == 0) counts[rng.below(4)] = total = 1;
    std::vector<QualityVerdict> group;
    static const QualityLevel levels[] = {QualityLevel::Excellent, QualityLevel::Good,
                                          QualityLevel::Average, QualityLevel::Poor};
    static const double weights[] = {1.0, 0.75, 0.5, 0.25};
    double sum = 0.0;
    for (int k = 0; k < 4; ++k)
      for (std::size_t i = 0; i < counts[k]; ++i) {
        group.push_back(make(levels[k]));
        sum += weights[k];
      }
    double expected = sum / double(total);
    double got = aggregate_quality(group);
    require(std::fabs(got - expected) <= 1e-12,
            "trial " + std::to_string(trial) + ": got " + std::to_string(got) + " expected " +
                std::to_string(expected));
  }
  // exact endpoints
  require(aggregate_quality({make(QualityLevel::Excellent), make(QualityLevel::Excellent),
                             make(QualityLevel::Excellent)}) == 1.0,
          "all-Excellent group must score exactly 1.0");
  require(aggregate_quality({make(QualityLevel::Poor)}) == 0.25,
          "all-Poor group must score exactly 0.25");
}

// ---------- criterion 4: random schema initialization with oracles ----

void criterion_4() {
  auto start = Clock::now();
  Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng.below(11);  // 2..12 tables
    DatabaseSchema schema;
    schema.id = "rand-" + std::to_string(trial);
    std::map<std::string, std::set<std::string>> parents;  // table -> FK parents
    for (std::size_t i = 0; i < n; ++i) {
      TableSchema t;
      t.name = "t" + std::to_string(i);
      t.columns.push_back({"id", "", "INTEGER", false});
      t.primary_key = {"id"};
      if (i > 0 && rng.below(2) == 0) {
        std::size_t parent = rng.below(i);  // earlier table only: acyclic by construction
        std::string col = "t" + std::to_string(parent) + "_id";
        t.columns.push_back({col, "", "INTEGER", true});
        t.foreign_keys.push_back({{col}, "t" + std::to_string(parent), {"id"}});
        parents[t.name].insert("t" + std::to_string(parent));
      }
      t.columns.push_back({"val", "", "TEXT", true});
      for (int r = 0; r < 3; ++r) {
        Row row = {std::to_string(r + 1)};
        if (t.foreign_keys.size() == 1) row.push_back(std::to_string(r % 3 + 1));
        row.push_back("v" + std::to_string(r));
        t.sample_rows.push_back(std::move(row));
      }
      schema.tables.push_back(std::move(t));
    }

    // oracle 1: topological order puts every parent before its children
    auto order = topo_order(schema);
    require(order.size() == n, "topo order dropped tables");
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (const auto& [child, ps] : parents)
      for (const auto& p : ps)
        require(pos.at(p) < pos.at(child),
                "parent " + p + " does not precede child " + child);

    // oracle 2: read-back equality
    std::string path = (work_dir() / (schema.id + ".sqlite")).string();
    initialize_database(schema, path);
    auto back = read_back_schema(path);
    require(back.tables.size() == n, "read-back table count mismatch");
    for (const auto& t : schema.tables) {
      const TableSchema* rt = back.find_table(t.name);
      require(rt != nullptr, "table " + t.name + " missing after read-back");
      require(rt->columns.size() == t.columns.size(), t.name + ": column count mismatch");
      for (std::size_t c = 0; c < t.columns.size(); ++c)
        require(rt->columns[c].name == t.columns[c].name, t.name + ": column order mismatch");
      require(rt->primary_key == t.primary_key, t.name + ": primary key mismatch");
      require(rt->foreign_keys.size() == t.foreign_keys.size(), t.name + ": FK count mismatch");
      auto a = t.sample_rows;
      auto b = rt->sample_rows;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      require(a == b, t.name + ": row content mismatch");
    }
    fs::remove(path);
  }

  // injected cycles, including a self-loop, must raise CycleError naming the cycle
  DatabaseSchema cyclic;
  cyclic.id = "cyclic";
  TableSchema a, b;
  a.name = "a";
  a.columns = {{"id", "", "INTEGER", false}, {"b_id", "", "INTEGER", true}};
  a.primary_key = {"id"};
  a.foreign_keys = {{{"b_id"}, "b", {"id"}}};
  b.name = "b";
  b.columns = {{"id", "", "INTEGER", false}, {"a_id", "", "INTEGER", true}};
  b.primary_key = {"id"};
  b.foreign_keys = {{{"a_id"}, "a", {"id"}}};
  cyclic.tables = {a, b};
  bool threw = false;
  try {
    initialize_database(cyclic, (work_dir() / "cyclic.sqlite").string());
  } catch (const CycleError& e) {
    threw = true;
    require(e.cycle.size() >= 2, "cycle description too short");
    std::string msg = e.what();
    for (const auto& name : e.cycle)
      require(msg.find(name) != std::string::npos, "cycle member " + name + " not named");
  }
  require(threw, "two-table cycle not rejected");

  DatabaseSchema self_loop;
  self_loop.id = "selfloop";
  TableSchema s;
  s.name = "node";
  s.columns = {{"id", "", "INTEGER", false}, {"next_id", "", "INTEGER", true}};
  s.primary_key = {"id"};
  s.foreign_keys = {{{"next_id"}, "node", {"id"}}};
  self_loop.tables = {s};
  threw = false;
  try {
    initialize_database(self_loop, (work_dir() / "selfloop.sqlite").string());
  } catch (const CycleError& e) {
    threw = true;
    require(!e.cycle.empty() && e.cycle.front() == "node", "self-loop cycle not named");
  }
  require(threw, "self-loop not rejected");

  double elapsed = seconds_since(start);
  require(elapsed < 30.0, "schema forging took " + std::to_string(elapsed) + "s (budget 30s)");
}

// ---------- criterion 5: execution-match semantics ----

std::string eval_fixture_db() {
  std::string path = (work_dir() / "bench.sqlite").string();
  fs::remove(path);
  SqliteDb db(path);
  db.exec("CREATE TABLE products (id INTEGER PRIMARY KEY, name TEXT, price REAL, "
          "category TEXT, added TEXT)");
  db.exec("INSERT INTO products VALUES (1, 'anvil', 10.0, 'tools', '2021-01-05'),"
          "(2, 'bolt', 2.5, 'tools', '2021-02-10'), (3, 'crayon', 1.0, 'art', '2021-03-15'),"
          "(4, 'doll', 7.5, 'toys', '2021-04-20'), (5, 'easel', 30.0, 'art', '2021-05-25')");
  db.exec("CREATE TABLE sales (id INTEGER PRIMARY KEY, product_id INTEGER, qty INTEGER, "
          "day TEXT)");
  db.exec("INSERT INTO sales VALUES (1, 1, 2, '2021-06-01'), (2, 3, 5, '2021-06-02'),"
          "(3, 4, 1, '2021-06-03')");
  return path;
}

void criterion_5() {
  std::string db = eval_fixture_db();

  // reflexivity over a 50-query fixture
  std::vector<std::string> fifty;
  for (int i = 0; i < 50; ++i) {
    switch (i % 5) {
      case 0:
        fifty.push_back("SELECT name FROM products WHERE id % 7 = " + std::to_string(i % 7));
        break;
      case 1:
        fifty.push_back("SELECT category, COUNT(*) FROM products GROUP BY category HAVING "
                        "COUNT(*) >= " + std::to_string(i % 3));
        break;
      case 2:
        fifty.push_back("SELECT name FROM products ORDER BY price DESC LIMIT " +
                        std::to_string(i % 4 + 1));
        break;
      case 3:
        fifty.push_back("SELECT p.name, s.qty FROM products p JOIN sales s ON p.id = "
                        "s.product_id WHERE s.qty > " + std::to_string(i % 5));
        break;
      default:
        fifty.push_back("UPDATE products SET price = price + " + std::to_string(i) +
                        " WHERE id = " + std::to_string(i % 5 + 1));
        break;
    }
  }
  for (const auto& q : fifty)
    require(execution_match(q, q, db) == 1, "reflexivity failed for: " + q);

  // order-insensitive SELECT comparison when the gold query has no ORDER BY
  require(execution_match("SELECT name FROM products ORDER BY name DESC",
                          "SELECT name FROM products", db) == 1,
          "unordered SELECT comparison must ignore row order");
  // divergent UPDATE
  require(execution_match("UPDATE products SET price = 0 WHERE id = 1",
                          "UPDATE products SET price = 99 WHERE id = 1", db) == 0,
          "divergent UPDATE must score 0");

  // hand-scored 20-pair suite: 13 matches, 7 misses
  struct P {
    const char* pred;
    const char* gold;
  };
  std::vector<P> matches = {
      {"SELECT name FROM products", "SELECT name FROM products"},
      {"select name from products", "SELECT name FROM products"},
      {"SELECT id FROM products WHERE category = 'tools' AND price > 2",
       "SELECT id FROM products WHERE price > 2 AND category = 'tools'"},
      {"SELECT name FROM products ORDER BY name DESC", "SELECT name FROM products"},
      {"SELECT COUNT(id) FROM products", "SELECT COUNT(*) FROM products"},
      {"SELECT 2", "SELECT 2.0"},
      {"SELECT p.name FROM products p JOIN sales s ON p.id = s.product_id",
       "SELECT p.name FROM products p, sales s WHERE p.id = s.product_id"},
      {"DELETE FROM sales WHERE qty >= 2", "DELETE FROM sales WHERE id IN (1, 2)"},
      {"UPDATE products SET price = price * 2 WHERE id = 3",
       "UPDATE products SET price = 2.0 WHERE id = 3"},
      {"SELECT name FROM products WHERE id IN (1, 3)",
       "SELECT name FROM products WHERE id = 1 OR id = 3"},
      {"SELECT name FROM products ORDER BY price LIMIT 2",
       "SELECT name FROM products ORDER BY price ASC LIMIT 2"},
      {"SELECT DISTINCT category FROM products",
       "SELECT category FROM products GROUP BY category"},
      {"SELECT SUM(qty) FROM sales", "SELECT 8"},
  };
  std::vector<P> misses = {
      {"SELECT name FROM products WHERE id = 1", "SELECT name FROM products WHERE id = 2"},
      {"SELECT id FROM products", "SELECT id, name FROM products"},
      {"SELECT name FROM products ORDER BY name DESC",
       "SELECT name FROM products ORDER BY name ASC"},
      {"UPDATE products SET price = 0", "UPDATE products SET price = 1"},
      {"DELETE FROM sales WHERE id = 1", "DELETE FROM sales WHERE id = 2"},
      {"SELECT COUNT(*) FROM sales", "SELECT SUM(qty) FROM sales"},
      {"SELECT missing FROM products", "SELECT name FROM products"},
  };
  std::vector<EvalPair> pairs;
  int idx = 0;
  for (const auto& p : matches)
    pairs.push_back({"m" + std::to_string(idx++), p.pred, p.gold, db, std::nullopt});
  for (const auto& p : misses)
    pairs.push_back({"x" + std::to_string(idx++), p.pred, p.gold, db, std::nullopt});
  auto report = execution_accuracy(pairs);
  require(report.total == 20, "suite must hold 20 pairs");
  require(report.accuracy == 0.65,
          "hand-scored suite must score exactly 0.65, got " + std::to_string(report.accuracy) +
              " (" + std::to_string(report.matched) + "/20)");
}

// ---------- criterion 6: blueprint retrieval equals brute force ----

void criterion_6() {
  Rng rng(6006);
  auto random_labels = [&rng]() {
    TaxonomyLabels l;
    l.core_intent = static_cast<CoreIntent>(rng.below(kCoreIntentCount));
    l.statement_type = static_cast<StatementType>(rng.below(kStatementTypeCount));
    for (std::size_t s = 0; s < kSyntaxStructureCount; ++s)
      if (rng.below(4) == 0) l.syntax_structures.insert(static_cast<SyntaxStructure>(s));
    for (std::size_t a = 0; a < kKeyActionCount; ++a)
      if (rng.below(4) == 0) l.key_actions.insert(static_cast<KeyAction>(a));
    return l;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<LabeledPair> corpus;
    std::size_t m = 5 + rng.below(40);
    for (std::size_t i = 0; i < m; ++i) {
      LabeledPair p;
      p.pair.id = "r" + std::to_string(i);
      p.labels = random_labels();
      corpus.push_back(std::move(p));
    }
    Combination combo;
    combo.labels = random_labels();

    auto got = retrieve_blueprints(combo, corpus, 5);

    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      scored.emplace_back(jaccard(label_set(combo.labels), label_set(corpus[i].labels)), i);
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    std::size_t k = std::min<std::size_t>(5, corpus.size());
    require(got.size() == k, "trial " + std::to_string(trial) + ": wrong k");
    for (std::size_t i = 0; i < k; ++i)
      require(got[i] == scored[i].second,
              "trial " + std::to_string(trial) + ": rank " + std::to_string(i) +
                  " disagrees with brute force (tie-break order included)");
  }
}

// ---------- criteria 7 and 10: end-to-end pipeline via the CLI ----

int run_cli(const std::string& args, const std::string& log_name) {
  std::string log = (work_dir() / log_name).string();
  std::string cmd = "cd '" + std::string(kSourceDir) + "' && '" + kCliPath + "' " + args + " > '" +
                    log + "' 2>&1";
  return std::system(cmd.c_str());
}

std::vector<DatasetRecord> pipeline_records(const fs::path& out) {
  return dataset_records_from_jsonl((out / "dataset.jsonl").string());
}

std::map<std::string, std::string> pipeline_db_paths(const fs::path& out) {
  std::map<std::string, std::string> by_id;
  for (const auto& line : read_lines((out / "databases" / "databases.jsonl").string())) {
    if (trim(line).empty()) continue;
    json j = json::parse(line);
    auto schema = database_schema_from_json(j.at("schema"));
    by_id[schema.id] = (out / "databases" / j.at("path").get<std::string>()).string();
  }
  return by_id;
}

void criterion_7() {
  auto start = Clock::now();
  fs::path run1 = work_dir() / "run1";
  fs::path run2 = work_dir() / "run2";
  std::string base = "pipeline --config config/pipeline_truncated.json --provider mock "
                     "--prompts-dir prompts --seed 42";
  require(run_cli(base + " --jobs 4 --out '" + run1.string() + "'", "run1.log") == 0,
          "first pipeline run exited nonzero");
  require(run_cli(base + " --jobs 1 --out '" + run2.string() + "'", "run2.log") == 0,
          "second pipeline run exited nonzero");

  // volume gates
  std::size_t combos = 0;
  for (const auto& line : read_lines((run1 / "combos.jsonl").string()))
    if (!trim(line).empty()) ++combos;
  require(combos >= 30, "only " + std::to_string(combos) + " combinations (need >= 30)");
  auto dbs = pipeline_db_paths(run1);
  require(dbs.size() >= 20, "only " + std::to_string(dbs.size()) + " databases (need >= 20)");
  auto records = pipeline_records(run1);
  require(records.size() >= 200,
          "only " + std::to_string(records.size()) + " records (need >= 200)");

  // every record re-executes and re-classifies to its recorded labels
  ClassifyContext ctx = ClassifyContext::defaults();
  for (const auto& r : records) {
    auto db = dbs.find(r.db_id);
    require(db != dbs.end(), "record " + r.id + " names unknown database " + r.db_id);
    require(!execute_on_copy(r.sql, db->second, 10.0).has_value(),
            "record " + r.id + " does not re-execute");
    auto rec = classify_pair(r.question, r.sql, ctx.dialect, ctx.functions, ctx.temporal,
                             ctx.complexity);
    require(rec.labels == r.labels && rec.level == r.level,
            "record " + r.id + " does not re-classify to its recorded labels");
  }

  // byte-identical artifacts across the two runs
  for (const char* name : {"combos.jsonl", "seeds.jsonl", "dataset.jsonl", "quarantine.jsonl",
                           "gateway_log.jsonl"})
    require(read_file((run1 / name).string()) == read_file((run2 / name).string()),
            std::string(name) + " differs between identical-seed runs");

  double elapsed = seconds_since(start);
  require(elapsed < 300.0, "pipeline took " + std::to_string(elapsed) + "s (budget 300s)");
}

void criterion_10() {
  fs::path run1 = work_dir() / "run1";  // produced by criterion 7
  fs::path ablated = work_dir() / "run_ablated";
  require(run_cli("pipeline --config config/pipeline_truncated.json --provider mock "
                  "--prompts-dir prompts --seed 42 --jobs 4 --no-question-oriented --out '" +
                      ablated.string() + "'",
                  "ablated.log") == 0,
          "ablated pipeline run exited nonzero");
  auto full = pipeline_records(run1);
  auto reduced = pipeline_records(ablated);
  require(!full.empty() && !reduced.empty(), "pipeline runs yielded no records");
  for (const auto& r : reduced)
    require(r.provenance.path == "sql_oriented", "ablated run still expanded question-first");

  std::vector<std::string> full_q, reduced_q;
  for (const auto& r : full) full_q.push_back(r.question);
  for (const auto& r : reduced) reduced_q.push_back(r.question);
  double full_ttr = ttr(full_q);
  double reduced_ttr = ttr(reduced_q);
  require(reduced_ttr < full_ttr,
          "disabling the question-oriented path must strictly lower TTR (" +
              std::to_string(reduced_ttr) + " vs " + std::to_string(full_ttr) + ")");
}

// ---------- criterion 8: enumeration equals brute force ----

void criterion_8() {
  TaxonomySubset subset;
  subset.intents.assign(all_core_intents().begin(), all_core_intents().end());
  subset.statements = {StatementType::Select, StatementType::Update, StatementType::Alter};
  subset.structures = {SyntaxStructure::Where, SyntaxStructure::OrderBy, SyntaxStructure::GroupBy,
                       SyntaxStructure::Having};
  subset.actions = {KeyAction::SpecificTime, KeyAction::TimeFunction,
                    KeyAction::AggregateFunction};
  EnumerationCaps caps;
  caps.max_structures = 2;
  caps.max_actions = 2;
  auto cfg = ComplexityConfig::defaults();

  // candidate space stays under 5,000: 14 x 3 x 11 x 7 = 3,234
  long long candidates = 14LL * 3 * 11 * 7;
  require(candidates <= 5000, "candidate space exceeds the brute-force budget");

  auto got = enumerate_combinations(cfg, caps, subset);

  std::vector<Combination> expected;
  for (auto intent : subset.intents)
    for (auto stmt : subset.statements)
      for (unsigned sm = 0; sm < (1u << subset.structures.size()); ++sm) {
        if (__builtin_popcount(sm) > caps.max_structures) continue;
        for (unsigned am = 0; am < (1u << subset.actions.size()); ++am) {
          if (__builtin_popcount(am) > caps.max_actions) continue;
          TaxonomyLabels l;
          l.core_intent = intent;
          l.statement_type = stmt;
          for (std::size_t i = 0; i < subset.structures.size(); ++i)
            if (sm & (1u << i)) l.syntax_structures.insert(subset.structures[i]);
          for (std::size_t i = 0; i < subset.actions.size(); ++i)
            if (am & (1u << i)) l.key_actions.insert(subset.actions[i]);
          if (!validate_combination(l).empty()) continue;
          auto [score, level] = complexity_of(l, cfg);
          expected.push_back(Combination{std::move(l), level, score});
        }
      }

  require(got.size() == expected.size(),
          "enumeration emitted " + std::to_string(got.size()) + " combos, brute force " +
              std::to_string(expected.size()));
  auto by_labels = [](const Combination& a, const Combination& b) { return a.labels < b.labels; };
  std::sort(got.begin(), got.end(), by_labels);
  std::sort(expected.begin(), expected.end(), by_labels);
  for (std::size_t i = 0; i < got.size(); ++i) {
    require(got[i].labels == expected[i].labels && got[i].score == expected[i].score &&
                got[i].level == expected[i].level,
            "combination " + std::to_string(i) + " disagrees with brute force");
    require(validate_combination(got[i].labels).empty(),
            "emitted combination violates a hard rule");
  }
}

// ---------- criterion 9: diversity metrics ----

void criterion_9() {
  require(ttr({"list all all users"}) == 0.75, "ttr fixture must be exactly 0.75");

  Rng rng(909);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> qs;
    std::size_t m = 3 + rng.below(8);
    for (std::size_t i = 0; i < m; ++i)
      qs.push_back("question about topic " + std::to_string(rng.below(50)) + " item " +
                   std::to_string(i));
    double before = ttr(qs);
    qs.push_back(qs[rng.below(qs.size())]);  // duplicate an existing question
    require(ttr(qs) < before, "duplicate question must strictly decrease TTR");
  }

  // cluster fixtures: 1, n, 2
  Embedder same = [](const std::string&) { return std::vector<double>{1.0, 0.5}; };
  require(semantic_clusters({"a", "b", "c", "d"}, same, 0.8) == 1,
          "identical embeddings must form one cluster");
  std::vector<std::string> qs = {"q0", "q1", "q2", "q3", "q4"};
  Embedder orthogonal = [](const std::string& q) {
    std::vector<double> v(5, 0.0);
    v[static_cast<std::size_t>(q[1] - '0')] = 1.0;
    return v;
  };
  require(semantic_clusters(qs, orthogonal, 0.8) == qs.size(),
          "orthogonal embeddings must stay singleton clusters");
  Embedder two_groups = [](const std::string& q) {
    return (q[1] - '0') % 2 == 0 ? std::vector<double>{1.0, 0.0}
                                 : std::vector<double>{0.0, 1.0};
  };
  require(semantic_clusters(qs, two_groups, 0.8) == 2, "two groups must form two clusters");

  // threshold monotonicity over 100 random corpora
  auto embedder = hashed_bow_embedder(32);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> corpus;
    std::size_t m = 5 + rng.below(25);
    for (std::size_t i = 0; i < m; ++i) {
      std::string q;
      std::size_t words = 3 + rng.below(5);
      for (std::size_t w = 0; w < words; ++w) q += "w" + std::to_string(rng.below(12)) + " ";
      corpus.push_back(trim(q));
    }
    std::size_t prev = 0;
    for (double t : {0.0, 0.2, 0.4, 0.6, 0.8, 0.95, 1.0}) {
      std::size_t n = semantic_clusters(corpus, embedder, t);
      require(n >= prev, "cluster count must be nondecreasing in the threshold");
      prev = n;
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* description;
    std::function<void()> body;
  };
  std::vector<Criterion> criteria = {
      {1, "handcrafted 60-query corpus classifies 100% exactly in under 1s", criterion_1},
      {2, "coverage auditor reproduces the published profile within 0.005", criterion_2},
      {3, "quality aggregation equals the brute-force weighted mean", criterion_3},
      {4, "random FK schemas initialize with ordering and read-back oracles", criterion_4},
      {5, "execution-match semantics including the exact 0.65 hand-scored suite", criterion_5},
      {6, "blueprint retrieval matches brute-force Jaccard ranking with ties", criterion_6},
      {7, "truncated pipeline: volume, closed-loop and byte-identical reruns", criterion_7},
      {8, "combination enumeration equals the brute-force filtered product", criterion_8},
      {9, "diversity metrics: exact TTR, cluster fixtures, monotone thresholds", criterion_9},
      {10, "disabling the question-oriented path strictly lowers TTR", criterion_10},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string verdict = "PASS";
    std::string detail;
    try {
      c.body();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string(" [") + e.what() + "]";
      ++failures;
    }
    std::printf("ACCEPTANCE %2d %s — %s%s\n", c.number, verdict.c_str(), c.description,
                detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
