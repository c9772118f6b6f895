#include <algorithm>
#include <random>

#include "doctest.h"
#include "synthsql/errors.hpp"
#include "synthsql/taxonomy/coverage.hpp"

using namespace synthsql;

namespace {

TaxonomyLabels rec(CoreIntent i, StatementType s, StructureSet ss = {}, ActionSet ka = {}) {
  TaxonomyLabels l;
  l.core_intent = i;
  l.statement_type = s;
  l.syntax_structures = std::move(ss);
  l.key_actions = std::move(ka);
  return l;
}

}  // namespace

TEST_CASE("coverage on an empty corpus is rejected") {
  CHECK_THROWS_AS(coverage_report({}), EmptyCorpus);
}

TEST_CASE("single record coverage") {
  auto r = coverage_report({rec(CoreIntent::BasicQuery, StatementType::Select,
                                {SyntaxStructure::Where}, {KeyAction::SpecificTime})});
  CHECK(r.record_count == 1);
  CHECK(r.intent_coverage == doctest::Approx(1.0 / 14).epsilon(1e-12));
  CHECK(r.statement_coverage == doctest::Approx(1.0 / 5).epsilon(1e-12));
  CHECK(r.structure_coverage == doctest::Approx(1.0 / 14).epsilon(1e-12));
  CHECK(r.action_coverage == doctest::Approx(1.0 / 9).epsilon(1e-12));
  CHECK(r.intent_histogram.at("Basic query") == 1);
  CHECK(r.structure_histogram.at("Where") == 1);
}

TEST_CASE("duplicate categories count once toward coverage but add to histograms") {
  std::vector<TaxonomyLabels> corpus(3, rec(CoreIntent::ConditionFiltering, StatementType::Select,
                                            {SyntaxStructure::Where}));
  auto r = coverage_report(corpus);
  CHECK(r.record_count == 3);
  CHECK(r.intent_coverage == doctest::Approx(1.0 / 14).epsilon(1e-12));
  CHECK(r.intent_histogram.at("Condition filtering") == 3);
  CHECK(r.structure_histogram.at("Where") == 3);
}

TEST_CASE("records with empty structure/action sets contribute nothing there") {
  auto r = coverage_report({rec(CoreIntent::BasicQuery, StatementType::Select)});
  CHECK(r.structure_coverage == 0.0);
  CHECK(r.action_coverage == 0.0);
  CHECK(r.structure_histogram.empty());
}

TEST_CASE("coverage is invariant under record reordering") {
  std::vector<TaxonomyLabels> corpus = {
      rec(CoreIntent::BasicQuery, StatementType::Select, {SyntaxStructure::Where}),
      rec(CoreIntent::DataChange, StatementType::Insert),
      rec(CoreIntent::BasicAggregation, StatementType::Select,
          {SyntaxStructure::GroupBy, SyntaxStructure::Having}, {KeyAction::AggregateFunction}),
      rec(CoreIntent::TimeOperation, StatementType::Select, {}, {KeyAction::TimeFunction}),
      rec(CoreIntent::StructureChange, StatementType::Alter),
  };
  auto baseline = coverage_report(corpus);
  std::mt19937 g(7);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(corpus.begin(), corpus.end(), g);
    auto r = coverage_report(corpus);
    CHECK(r.intent_coverage == baseline.intent_coverage);
    CHECK(r.statement_coverage == baseline.statement_coverage);
    CHECK(r.structure_coverage == baseline.structure_coverage);
    CHECK(r.action_coverage == baseline.action_coverage);
    CHECK(r.intent_histogram == baseline.intent_histogram);
    CHECK(r.action_histogram == baseline.action_histogram);
  }
}

TEST_CASE("full-coverage corpus reaches 1.0 on every dimension") {
  std::vector<TaxonomyLabels> corpus;
  // one record per intent; spread statements, structures and actions across them
  for (std::size_t i = 0; i < kCoreIntentCount; ++i) {
    TaxonomyLabels l;
    l.core_intent = static_cast<CoreIntent>(i);
    l.statement_type = static_cast<StatementType>(i % kStatementTypeCount);
    l.syntax_structures.insert(static_cast<SyntaxStructure>(i % kSyntaxStructureCount));
    l.key_actions.insert(static_cast<KeyAction>(i % kKeyActionCount));
    corpus.push_back(l);
  }
  auto r = coverage_report(corpus);
  CHECK(r.intent_coverage == 1.0);
  CHECK(r.statement_coverage == 1.0);
  CHECK(r.structure_coverage == 1.0);
  CHECK(r.action_coverage == 1.0);
}

TEST_CASE("json and table formats expose all four ratios") {
  auto r = coverage_report({rec(CoreIntent::BasicQuery, StatementType::Select,
                                {SyntaxStructure::Where}, {KeyAction::SpecificTime})});
  auto j = to_json(r);
  CHECK(j["core_intent"].get<double>() == r.intent_coverage);
  CHECK(j["statement_type"].get<double>() == r.statement_coverage);
  CHECK(j["syntax_structure"].get<double>() == r.structure_coverage);
  CHECK(j["key_action"].get<double>() == r.action_coverage);
  CHECK(j["record_count"].get<std::size_t>() == 1);

  auto table = format_coverage_table(r);
  CHECK(table.find("intent") != std::string::npos);
  CHECK(table.find("Where") != std::string::npos);
}
