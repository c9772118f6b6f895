#include <filesystem>
#include <set>

#include "doctest.h"
#include "synthsql/dbforge/sqlite.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/eval/db_state.hpp"
#include "synthsql/eval/diversity.hpp"
#include "synthsql/eval/execution.hpp"
#include "synthsql/eval/quality.hpp"
#include "synthsql/eval/stats.hpp"
#include "synthsql/gateway/mock_provider.hpp"
#include "synthsql/util.hpp"

using namespace synthsql;

namespace {

std::string fixture_db() {
  auto dir = std::filesystem::temp_directory_path() / "synthsql_eval_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "eval.sqlite").string();
  std::filesystem::remove(path);
  SqliteDb db(path);
  db.exec("CREATE TABLE users (id INTEGER PRIMARY KEY, name TEXT, score REAL, signup TEXT)");
  db.exec("INSERT INTO users VALUES (1, 'ann', 3.5, '2021-01-01')");
  db.exec("INSERT INTO users VALUES (2, 'bob', 2.0, '2021-06-15')");
  db.exec("INSERT INTO users VALUES (3, 'cal', 2.0, NULL)");
  db.exec("CREATE TABLE tags (user_id INTEGER, tag TEXT)");
  db.exec("INSERT INTO tags VALUES (1, 'vip'), (2, 'new'), (3, 'new')");
  return path;
}

}  // namespace

TEST_CASE("execution match: reflexive, order and column semantics") {
  auto db = fixture_db();
  // reflexivity
  CHECK(execution_match("SELECT name FROM users", "SELECT name FROM users", db) == 1);

  // without gold ORDER BY row order is irrelevant
  CHECK(execution_match("SELECT name FROM users ORDER BY name DESC",
                        "SELECT name FROM users", db) == 1);

  // with gold ORDER BY row order matters
  CHECK(execution_match("SELECT name FROM users ORDER BY name DESC",
                        "SELECT name FROM users ORDER BY name ASC", db) == 0);
  CHECK(execution_match("SELECT name FROM users ORDER BY name ASC",
                        "SELECT name FROM users ORDER BY name ASC", db) == 1);

  // different values / row counts / column counts all miss
  CHECK(execution_match("SELECT name FROM users WHERE id = 1",
                        "SELECT name FROM users WHERE id = 2", db) == 0);
  CHECK(execution_match("SELECT name FROM users", "SELECT name FROM users WHERE id = 1", db) == 0);
  CHECK(execution_match("SELECT id, name FROM users", "SELECT name FROM users", db) == 0);

  // a failing prediction is a miss, not an error
  CHECK(execution_match("SELECT oops FROM users", "SELECT name FROM users", db) == 0);
}

TEST_CASE("execution match: numeric tolerance and NULLs") {
  auto db = fixture_db();
  // integer vs real with equal value compares equal
  CHECK(execution_match("SELECT 2", "SELECT 2.0", db) == 1);
  // tiny float drift inside the tolerance
  CHECK(execution_match("SELECT 1.0000000001", "SELECT 1.0", db) == 1);
  CHECK(execution_match("SELECT 1.1", "SELECT 1.0", db) == 0);
  // NULLs compare equal to NULLs only
  CHECK(execution_match("SELECT signup FROM users WHERE id = 3",
                        "SELECT NULL", db) == 1);
  CHECK(execution_match("SELECT signup FROM users WHERE id = 3",
                        "SELECT ''", db) == 0);
}

TEST_CASE("execution match: DML compares post-execution database state") {
  auto db = fixture_db();
  // syntactically different but equivalent updates
  CHECK(execution_match("UPDATE users SET score = score + 1 WHERE id IN (1)",
                        "UPDATE users SET score = 4.5 WHERE id = 1", db) == 1);
  // divergent updates differ
  CHECK(execution_match("UPDATE users SET score = 0 WHERE id = 1",
                        "UPDATE users SET score = 9 WHERE id = 1", db) == 0);
  // deleting different rows differs; deleting the same rows matches
  CHECK(execution_match("DELETE FROM tags WHERE tag = 'new'",
                        "DELETE FROM tags WHERE user_id IN (2, 3)", db) == 1);
  CHECK(execution_match("DELETE FROM tags WHERE tag = 'vip'",
                        "DELETE FROM tags WHERE tag = 'new'", db) == 0);
  // the comparison runs on scratch copies: the fixture is untouched
  SqliteDb check(db, true);
  CHECK(check.query("SELECT COUNT(*) FROM tags").rows[0][0].integer == 3);
}

TEST_CASE("execution match: gold failures are errors, not zeros") {
  auto db = fixture_db();
  CHECK_THROWS_AS(execution_match("SELECT 1", "SELECT nope FROM users", db), GoldFailure);
}

TEST_CASE("execution_accuracy aggregates and breaks down by labels") {
  auto db = fixture_db();
  TaxonomyLabels select_labels;
  select_labels.statement_type = StatementType::Select;
  TaxonomyLabels update_labels;
  update_labels.core_intent = CoreIntent::DataChange;
  update_labels.statement_type = StatementType::Update;

  std::vector<EvalPair> pairs = {
      {"p1", "SELECT name FROM users", "SELECT name FROM users", db, select_labels},
      {"p2", "SELECT id FROM users", "SELECT name FROM users", db, select_labels},
      {"p3", "UPDATE users SET score = 0", "UPDATE users SET score = 0.0", db, update_labels},
  };
  auto report = execution_accuracy(pairs, "statement_type", 10.0, 2);
  CHECK(report.total == 3);
  CHECK(report.matched == 2);
  CHECK(report.accuracy == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(report.breakdown.at("Select") == std::pair<std::size_t, std::size_t>{1, 2});
  CHECK(report.breakdown.at("Update") == std::pair<std::size_t, std::size_t>{1, 1});

  // job count does not change the outcome
  auto serial = execution_accuracy(pairs, "statement_type", 10.0, 1);
  CHECK(serial.matched == report.matched);
  CHECK(serial.breakdown == report.breakdown);
}

TEST_CASE("snapshot_state and diff_states name differing tables") {
  auto db = fixture_db();
  auto copy = db + ".diff.tmp";
  copy_database_file(db, copy);
  CHECK(snapshot_state(db) == snapshot_state(copy));
  CHECK(diff_states(snapshot_state(db), snapshot_state(copy)).empty());
  {
    SqliteDb conn(copy);
    conn.exec("DELETE FROM tags WHERE tag = 'vip'");
  }
  auto diffs = diff_states(snapshot_state(db), snapshot_state(copy));
  REQUIRE(diffs.size() == 1);
  CHECK(diffs[0].find("tags") != std::string::npos);
  std::filesystem::remove(copy);
}

TEST_CASE("quality judge yields one verdict per criterion in canonical order") {
  Gateway gw(PromptLibrary::load(SYNTHSQL_SOURCE_DIR "/prompts"), make_mock_provider(),
             RetryPolicy{3, 0});
  DatasetRecord record;
  record.question = "How many users signed up in 2021?";
  record.sql = "SELECT COUNT(*) FROM users WHERE signup LIKE '2021%'";
  auto verdicts = quality_judge(record, gw);
  REQUIRE(verdicts.size() == quality_criteria().size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    CHECK(verdicts[i].criterion == quality_criteria()[i]);
    CHECK_FALSE(verdicts[i].explanation.empty());
  }
  // deterministic across gateways
  Gateway gw2(PromptLibrary::load(SYNTHSQL_SOURCE_DIR "/prompts"), make_mock_provider(),
              RetryPolicy{3, 0});
  auto again = quality_judge(record, gw2);
  for (std::size_t i = 0; i < verdicts.size(); ++i) CHECK(again[i].level == verdicts[i].level);
}

TEST_CASE("persistent judge malformation raises MissingVerdict after one reprompt") {
  auto dir = std::filesystem::temp_directory_path() / "synthsql_judge_fixtures";
  std::filesystem::create_directories(dir);
  auto lib = PromptLibrary::load(SYNTHSQL_SOURCE_DIR "/prompts");
  DatasetRecord record;
  record.question = "broken judge case";
  record.sql = "SELECT 1";
  for (int attempt = 1; attempt <= 2; ++attempt) {
    auto prompt = lib.get("quality_judge")
                      .render({{"question", record.question},
                               {"sql", record.sql},
                               {"attempt", std::to_string(attempt)}});
    atomic_write((dir / ("quality_judge-" + hex64(fnv1a(prompt)) + ".txt")).string(),
                 "utterly unstructured response");
  }
  Gateway gw(lib, make_mock_provider(dir.string()), RetryPolicy{3, 0});
  CHECK_THROWS_AS(quality_judge(record, gw), MissingVerdict);
  std::filesystem::remove_all(dir);
}

TEST_CASE("aggregate_quality endpoints and weighting") {
  auto v = [](QualityLevel l) {
    QualityVerdict x;
    x.criterion = "c";
    x.level = l;
    x.explanation = "e";
    return x;
  };
  CHECK(aggregate_quality({v(QualityLevel::Excellent), v(QualityLevel::Excellent)}) == 1.0);
  CHECK(aggregate_quality({v(QualityLevel::Poor)}) == 0.25);
  CHECK(aggregate_quality({v(QualityLevel::Excellent), v(QualityLevel::Good),
                           v(QualityLevel::Average), v(QualityLevel::Poor)}) ==
        doctest::Approx((1.0 + 0.75 + 0.5 + 0.25) / 4).epsilon(1e-12));
  CHECK_THROWS_AS(aggregate_quality({}), EmptyGroup);
}

TEST_CASE("aggregate_by_criterion groups across records") {
  QualityVerdict a{"Proper Grammar", QualityLevel::Excellent, "e"};
  QualityVerdict b{"Proper Grammar", QualityLevel::Poor, "e"};
  QualityVerdict c{"SQL Correctness", QualityLevel::Good, "e"};
  auto by = aggregate_by_criterion({{a, c}, {b}});
  CHECK(by.at("Proper Grammar") == doctest::Approx((1.0 + 0.25) / 2).epsilon(1e-12));
  CHECK(by.at("SQL Correctness") == 0.75);
}

TEST_CASE("type-token ratio") {
  CHECK(ttr({"list all all users"}) == 0.75);
  CHECK(ttr({"alpha beta", "gamma delta"}) == 1.0);
  // punctuation at token edges is stripped, case folded
  CHECK(ttr({"Users, users USERS!"}) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  // adding a duplicate question strictly decreases TTR
  std::vector<std::string> qs = {"show the top products", "count users by city"};
  double before = ttr(qs);
  qs.push_back(qs.front());
  CHECK(ttr(qs) < before);
  CHECK_THROWS_AS(ttr({}), EmptyCorpus);
}

TEST_CASE("semantic cluster fixtures: 1, n and 2") {
  // identical embeddings collapse to one cluster
  Embedder same = [](const std::string&) { return std::vector<double>{1.0, 0.0}; };
  CHECK(semantic_clusters({"a", "b", "c"}, same, 0.8) == 1);

  // orthogonal embeddings stay apart
  std::vector<std::string> qs = {"q0", "q1", "q2", "q3"};
  Embedder orthogonal = [](const std::string& q) {
    std::vector<double> v(4, 0.0);
    v[q[1] - '0'] = 1.0;
    return v;
  };
  CHECK(semantic_clusters(qs, orthogonal, 0.8) == 4);

  // two tight groups
  Embedder grouped = [](const std::string& q) {
    return (q[1] - '0') < 2 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0};
  };
  CHECK(semantic_clusters(qs, grouped, 0.8) == 2);

  // ragged embeddings are rejected
  Embedder ragged = [](const std::string& q) {
    return std::vector<double>(q.size(), 1.0);
  };
  CHECK_THROWS_AS(semantic_clusters({"a", "bb"}, ragged, 0.8), EmbedderError);
}

TEST_CASE("cluster count rises monotonically with the threshold") {
  std::vector<std::string> questions;
  for (int i = 0; i < 30; ++i)
    questions.push_back("question variant " + std::to_string(i % 7) + " topic " +
                        std::to_string(i % 3));
  auto embedder = hashed_bow_embedder(32);
  std::size_t prev = 0;
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    auto n = semantic_clusters(questions, embedder, t);
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("diversity_report bundles ttr and clusters") {
  auto r = diversity_report({"count users", "count users", "list products"},
                            hashed_bow_embedder(16), 0.8);
  CHECK(r.sample_size == 3);
  CHECK(r.ttr > 0.0);
  CHECK(r.cluster_count >= 1);
  CHECK(r.cluster_count <= 3);
}

TEST_CASE("corpus_stats averages structural features") {
  DatasetRecord a;
  a.id = "s1";
  a.sql = "SELECT t.a FROM t JOIN u ON t.id = u.id";
  DatasetRecord b;
  b.id = "s2";
  b.sql = "WITH w AS (SELECT a FROM t) SELECT COUNT(*) FROM w";
  b.db_id = "other";
  auto stats = corpus_stats({a, b}, sql::FunctionTable::sqlite_defaults(), sql::TemporalFormats{});
  CHECK(stats.sql_count == 2);
  CHECK(stats.join_count == 1);
  CHECK(stats.cte_count == 1);
  CHECK(stats.function_count == 1);
  CHECK(stats.tables_per_sql > 0.0);
  CHECK(stats.tokens_per_sql > 0.0);

  DatasetRecord bad;
  bad.id = "s3";
  bad.sql = "SELECT FROM";
  CHECK_THROWS_AS(
      corpus_stats({bad}, sql::FunctionTable::sqlite_defaults(), sql::TemporalFormats{}),
      ParseError);
}
