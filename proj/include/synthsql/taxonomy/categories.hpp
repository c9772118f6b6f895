#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>

namespace synthsql {

enum class CoreIntent {
  BasicQuery,
  ConditionFiltering,
  SortingAndPagination,
  BasicAggregation,
  TimeOperation,
  FormatTransformation,
  SetOperation,
  DataChange,
  StructureChange,
  DistributionAnalysis,
  AdvancedStatistics,
  TrendAnalysis,
  BusinessCalculation,
  BusinessRule,
};
inline constexpr std::size_t kCoreIntentCount = 14;

enum class StatementType { Select, Update, Alter, Delete, Insert };
inline constexpr std::size_t kStatementTypeCount = 5;

enum class SyntaxStructure {
  Where,
  OrderBy,
  LimitOffset,
  InnerJoin,
  CrossJoin,
  OuterJoin,
  GroupBy,
  Having,
  Union,
  Intersect,
  Except,
  ScalarSubquery,
  CorrelatedSubquery,
  CommonTableExpression,
};
inline constexpr std::size_t kSyntaxStructureCount = 14;

enum class KeyAction {
  SpecificTime,
  WildcardFiltering,
  TimeFunction,
  JsonFunction,
  WindowFunction,
  StringFunction,
  Cast,
  ConditionJudgement,
  AggregateFunction,
};
inline constexpr std::size_t kKeyActionCount = 9;

// Stable names; these are serialization keys.
const std::string& name_of(CoreIntent v);
const std::string& name_of(StatementType v);
const std::string& name_of(SyntaxStructure v);
const std::string& name_of(KeyAction v);

std::optional<CoreIntent> core_intent_from(const std::string& name);
std::optional<StatementType> statement_type_from(const std::string& name);
std::optional<SyntaxStructure> syntax_structure_from(const std::string& name);
std::optional<KeyAction> key_action_from(const std::string& name);

const std::array<CoreIntent, kCoreIntentCount>& all_core_intents();
const std::array<StatementType, kStatementTypeCount>& all_statement_types();
const std::array<SyntaxStructure, kSyntaxStructureCount>& all_syntax_structures();
const std::array<KeyAction, kKeyActionCount>& all_key_actions();

using StructureSet = std::set<SyntaxStructure>;
using ActionSet = std::set<KeyAction>;

}  // namespace synthsql
