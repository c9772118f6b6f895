#include <algorithm>

#include "doctest.h"
#include "synthsql/errors.hpp"
#include "synthsql/taxonomy/taxonomy.hpp"

using namespace synthsql;

namespace {

TaxonomyLabels make(CoreIntent intent, StatementType stmt, StructureSet ss = {},
                    ActionSet ka = {}) {
  TaxonomyLabels l;
  l.core_intent = intent;
  l.statement_type = stmt;
  l.syntax_structures = std::move(ss);
  l.key_actions = std::move(ka);
  return l;
}

}  // namespace

TEST_CASE("category names round-trip and cover every member") {
  for (auto v : all_core_intents()) CHECK(core_intent_from(name_of(v)) == v);
  for (auto v : all_statement_types()) CHECK(statement_type_from(name_of(v)) == v);
  for (auto v : all_syntax_structures()) CHECK(syntax_structure_from(name_of(v)) == v);
  for (auto v : all_key_actions()) CHECK(key_action_from(name_of(v)) == v);
  CHECK_FALSE(core_intent_from("no such intent").has_value());
  CHECK(name_of(CoreIntent::SortingAndPagination) == "Sorting and Pagination");
  CHECK(name_of(SyntaxStructure::CommonTableExpression) == "Common Table Expression");
  CHECK(name_of(KeyAction::ConditionJudgement) == "Condition judgement");
}

TEST_CASE("default weights and scoring") {
  auto cfg = ComplexityConfig::defaults();
  // simplest possible query
  auto [s1, l1] = complexity_of(make(CoreIntent::BasicQuery, StatementType::Select), cfg);
  CHECK(s1 == 2);
  CHECK(l1 == ComplexityLevel::Simple);

  // weights are additive across all four dimensions
  auto labels = make(CoreIntent::BasicAggregation, StatementType::Select,
                     {SyntaxStructure::GroupBy, SyntaxStructure::Having},
                     {KeyAction::AggregateFunction});
  auto [s2, l2] = complexity_of(labels, cfg);
  CHECK(s2 == 1 + 1 + 2 + 2 + 2);
  CHECK(l2 == ComplexityLevel::Medium);

  auto hard = make(CoreIntent::AdvancedStatistics, StatementType::Select,
                   {SyntaxStructure::CorrelatedSubquery}, {KeyAction::WindowFunction});
  auto [s3, l3] = complexity_of(hard, cfg);
  CHECK(s3 == 3 + 1 + 4 + 3);
  CHECK(l3 == ComplexityLevel::Hard);
}

TEST_CASE("complexity_of throws ScoreOutOfRange for gaps") {
  auto cfg = ComplexityConfig::defaults();
  cfg.simple = {1, 2};
  cfg.medium = {5, 8};
  cfg.hard = {9, 1 << 30};
  // score 3 now falls in the gap between simple and medium
  auto labels = make(CoreIntent::BasicQuery, StatementType::Select, {SyntaxStructure::Where});
  CHECK_THROWS_AS(complexity_of(labels, cfg), ScoreOutOfRange);
}

TEST_CASE("config validation rejects bad ranges and weights") {
  auto good = ComplexityConfig::defaults();
  CHECK_NOTHROW(good.validate());

  auto inverted = good;
  inverted.medium = {8, 5};
  CHECK_THROWS_AS(inverted.validate(), ConfigError);

  auto overlapping = good;
  overlapping.medium = {4, 8};
  CHECK_THROWS_AS(overlapping.validate(), ConfigError);

  auto zero_weight = good;
  zero_weight.action_weights[KeyAction::Cast] = 0;
  CHECK_THROWS_AS(zero_weight.validate(), ConfigError);
}

TEST_CASE("V1: data change intent iff DML statement") {
  CHECK(validate_combination(make(CoreIntent::DataChange, StatementType::Insert)).empty());
  CHECK(validate_combination(make(CoreIntent::DataChange, StatementType::Update)).empty());
  CHECK(validate_combination(make(CoreIntent::DataChange, StatementType::Delete)).empty());
  CHECK_FALSE(validate_combination(make(CoreIntent::DataChange, StatementType::Select)).empty());
  CHECK_FALSE(validate_combination(make(CoreIntent::BasicQuery, StatementType::Insert)).empty());
}

TEST_CASE("V2: structure change intent iff Alter") {
  CHECK(validate_combination(make(CoreIntent::StructureChange, StatementType::Alter)).empty());
  CHECK_FALSE(
      validate_combination(make(CoreIntent::StructureChange, StatementType::Select)).empty());
  CHECK_FALSE(validate_combination(make(CoreIntent::BasicQuery, StatementType::Alter)).empty());
}

TEST_CASE("V3: read intents require Select") {
  CHECK_FALSE(
      validate_combination(make(CoreIntent::ConditionFiltering, StatementType::Update)).empty());
  CHECK(validate_combination(make(CoreIntent::ConditionFiltering, StatementType::Select,
                                  {SyntaxStructure::Where}))
            .empty());
}

TEST_CASE("V4: Having requires Group by") {
  auto bad = make(CoreIntent::BasicAggregation, StatementType::Select, {SyntaxStructure::Having});
  CHECK_FALSE(validate_combination(bad).empty());
  auto ok = make(CoreIntent::BasicAggregation, StatementType::Select,
                 {SyntaxStructure::GroupBy, SyntaxStructure::Having});
  CHECK(validate_combination(ok).empty());
}

TEST_CASE("V5: set operation intent requires a set-op structure; reverse is a warning") {
  CHECK_FALSE(validate_combination(make(CoreIntent::SetOperation, StatementType::Select)).empty());
  CHECK(validate_combination(
            make(CoreIntent::SetOperation, StatementType::Select, {SyntaxStructure::Union}))
            .empty());

  std::vector<std::string> warnings;
  auto other = make(CoreIntent::BasicQuery, StatementType::Select, {SyntaxStructure::Except});
  CHECK(validate_combination(other, &warnings).empty());
  CHECK_FALSE(warnings.empty());
}

TEST_CASE("V6: sorting intent requires Order by or Limit offset") {
  CHECK_FALSE(
      validate_combination(make(CoreIntent::SortingAndPagination, StatementType::Select)).empty());
  CHECK(validate_combination(make(CoreIntent::SortingAndPagination, StatementType::Select,
                                  {SyntaxStructure::OrderBy}))
            .empty());
  CHECK(validate_combination(make(CoreIntent::SortingAndPagination, StatementType::Select,
                                  {SyntaxStructure::LimitOffset}))
            .empty());
}

TEST_CASE("V7: time-themed intents require a temporal action") {
  for (auto intent : {CoreIntent::TimeOperation, CoreIntent::TrendAnalysis}) {
    CHECK_FALSE(validate_combination(make(intent, StatementType::Select)).empty());
    CHECK(validate_combination(make(intent, StatementType::Select, {},
                                    {KeyAction::SpecificTime}))
              .empty());
    CHECK(
        validate_combination(make(intent, StatementType::Select, {}, {KeyAction::TimeFunction}))
            .empty());
  }
}

TEST_CASE("V8: Alter carries no structures and at most the Cast action") {
  CHECK(validate_combination(
            make(CoreIntent::StructureChange, StatementType::Alter, {}, {KeyAction::Cast}))
            .empty());
  CHECK_FALSE(validate_combination(make(CoreIntent::StructureChange, StatementType::Alter,
                                        {SyntaxStructure::Where}))
                  .empty());
  CHECK_FALSE(validate_combination(make(CoreIntent::StructureChange, StatementType::Alter, {},
                                        {KeyAction::StringFunction}))
                  .empty());
}

TEST_CASE("enumeration matches the brute-force filtered Cartesian product") {
  TaxonomySubset subset;
  subset.intents = {CoreIntent::BasicQuery, CoreIntent::SortingAndPagination,
                    CoreIntent::TimeOperation, CoreIntent::DataChange};
  subset.statements = {StatementType::Select, StatementType::Update};
  subset.structures = {SyntaxStructure::Where, SyntaxStructure::OrderBy, SyntaxStructure::Union};
  subset.actions = {KeyAction::SpecificTime, KeyAction::AggregateFunction};
  EnumerationCaps caps;
  caps.max_structures = 2;
  caps.max_actions = 2;
  auto cfg = ComplexityConfig::defaults();

  auto got = enumerate_combinations(cfg, caps, subset);

  // independent brute force over the full Cartesian product
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

  REQUIRE(got.size() == expected.size());
  auto key = [](const Combination& c) { return c.labels; };
  auto sorted = [&](std::vector<Combination> v) {
    std::sort(v.begin(), v.end(),
              [&](const Combination& a, const Combination& b) { return key(a) < key(b); });
    return v;
  };
  auto gs = sorted(got);
  auto es = sorted(expected);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    CHECK(gs[i].labels == es[i].labels);
    CHECK(gs[i].score == es[i].score);
    CHECK(gs[i].level == es[i].level);
  }

  // every emitted combination satisfies all hard rules
  for (const auto& c : got) CHECK(validate_combination(c.labels).empty());
}

TEST_CASE("enumeration is deterministic and canonically ordered") {
  TaxonomySubset subset;
  subset.intents = {CoreIntent::BasicQuery, CoreIntent::ConditionFiltering};
  subset.statements = {StatementType::Select};
  subset.structures = {SyntaxStructure::Where, SyntaxStructure::OrderBy};
  subset.actions = {KeyAction::SpecificTime};
  EnumerationCaps caps;
  auto a = enumerate_combinations(ComplexityConfig::defaults(), caps, subset);
  auto b = enumerate_combinations(ComplexityConfig::defaults(), caps, subset);
  CHECK(a == b);
  CHECK(a.size() == 16);  // 2 intents x 1 statement x 4 structure masks x 2 action masks
}

TEST_CASE("enumeration guards") {
  EnumerationCaps tiny;
  tiny.hard_ceiling = 10;
  CHECK_THROWS_AS(
      enumerate_combinations(ComplexityConfig::defaults(), tiny, TaxonomySubset::full()),
      CombinatorialLimit);

  EnumerationCaps bad;
  bad.max_structures = 0;
  CHECK_THROWS_AS(
      enumerate_combinations(ComplexityConfig::defaults(), bad, TaxonomySubset::full()),
      ConfigError);
}
