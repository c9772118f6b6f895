#include "synthsql/taxonomy/taxonomy.hpp"

#include <algorithm>

#include "synthsql/errors.hpp"

namespace synthsql {

namespace {

const std::array<std::string, kCoreIntentCount> kIntentNames = {
    "Basic query",        "Condition filtering",   "Sorting and Pagination",
    "Basic aggregation",  "Time operation",        "Format transformation",
    "Set operation",      "Data change",           "Structure change",
    "Distribution analysis", "Advanced statistics", "Trend analysis",
    "Business calculation",  "Business rule",
};

const std::array<std::string, kStatementTypeCount> kStatementNames = {
    "Select", "Update", "Alter", "Delete", "Insert",
};

const std::array<std::string, kSyntaxStructureCount> kStructureNames = {
    "Where",          "Order by",        "Limit offset",
    "Inner join",     "Cross join",      "Outer join",
    "Group by",       "Having",          "Union",
    "Intersect",      "Except",          "Scalar subquery",
    "Correlated subquery", "Common Table Expression",
};

const std::array<std::string, kKeyActionCount> kActionNames = {
    "Specific time",   "Wildcard filtering", "Time function",
    "Json function",   "Window function",    "String function",
    "Cast",            "Condition judgement", "Aggregate function",
};

const std::array<std::string, 3> kLevelNames = {"simple", "medium", "hard"};

template <typename E, std::size_t N>
std::optional<E> from_name(const std::array<std::string, N>& names, const std::string& name) {
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] == name) return static_cast<E>(i);
  return std::nullopt;
}

}  // namespace

const std::string& name_of(CoreIntent v) { return kIntentNames[static_cast<std::size_t>(v)]; }
const std::string& name_of(StatementType v) {
  return kStatementNames[static_cast<std::size_t>(v)];
}
const std::string& name_of(SyntaxStructure v) {
  return kStructureNames[static_cast<std::size_t>(v)];
}
const std::string& name_of(KeyAction v) { return kActionNames[static_cast<std::size_t>(v)]; }
const std::string& name_of(ComplexityLevel v) { return kLevelNames[static_cast<std::size_t>(v)]; }

std::optional<CoreIntent> core_intent_from(const std::string& name) {
  return from_name<CoreIntent>(kIntentNames, name);
}
std::optional<StatementType> statement_type_from(const std::string& name) {
  return from_name<StatementType>(kStatementNames, name);
}
std::optional<SyntaxStructure> syntax_structure_from(const std::string& name) {
  return from_name<SyntaxStructure>(kStructureNames, name);
}
std::optional<KeyAction> key_action_from(const std::string& name) {
  return from_name<KeyAction>(kActionNames, name);
}
std::optional<ComplexityLevel> complexity_level_from(const std::string& name) {
  return from_name<ComplexityLevel>(kLevelNames, name);
}

const std::array<CoreIntent, kCoreIntentCount>& all_core_intents() {
  static const auto all = [] {
    std::array<CoreIntent, kCoreIntentCount> a{};
    for (std::size_t i = 0; i < kCoreIntentCount; ++i) a[i] = static_cast<CoreIntent>(i);
    return a;
  }();
  return all;
}
const std::array<StatementType, kStatementTypeCount>& all_statement_types() {
  static const auto all = [] {
    std::array<StatementType, kStatementTypeCount> a{};
    for (std::size_t i = 0; i < kStatementTypeCount; ++i) a[i] = static_cast<StatementType>(i);
    return a;
  }();
  return all;
}
const std::array<SyntaxStructure, kSyntaxStructureCount>& all_syntax_structures() {
  static const auto all = [] {
    std::array<SyntaxStructure, kSyntaxStructureCount> a{};
    for (std::size_t i = 0; i < kSyntaxStructureCount; ++i)
      a[i] = static_cast<SyntaxStructure>(i);
    return a;
  }();
  return all;
}
const std::array<KeyAction, kKeyActionCount>& all_key_actions() {
  static const auto all = [] {
    std::array<KeyAction, kKeyActionCount> a{};
    for (std::size_t i = 0; i < kKeyActionCount; ++i) a[i] = static_cast<KeyAction>(i);
    return a;
  }();
  return all;
}

ComplexityConfig ComplexityConfig::defaults() {
  ComplexityConfig c;
  auto set_intent = [&](CoreIntent i, int w) { c.intent_weights[i] = w; };
  set_intent(CoreIntent::BasicQuery, 1);
  set_intent(CoreIntent::ConditionFiltering, 1);
  set_intent(CoreIntent::SortingAndPagination, 1);
  set_intent(CoreIntent::BasicAggregation, 1);
  set_intent(CoreIntent::TimeOperation, 2);
  set_intent(CoreIntent::FormatTransformation, 2);
  set_intent(CoreIntent::SetOperation, 2);
  set_intent(CoreIntent::DataChange, 2);
  set_intent(CoreIntent::StructureChange, 2);
  set_intent(CoreIntent::DistributionAnalysis, 3);
  set_intent(CoreIntent::AdvancedStatistics, 3);
  set_intent(CoreIntent::TrendAnalysis, 3);
  set_intent(CoreIntent::BusinessCalculation, 3);
  set_intent(CoreIntent::BusinessRule, 3);

  c.statement_weights[StatementType::Select] = 1;
  c.statement_weights[StatementType::Insert] = 2;
  c.statement_weights[StatementType::Delete] = 2;
  c.statement_weights[StatementType::Update] = 2;
  c.statement_weights[StatementType::Alter] = 3;

  auto set_structure = [&](SyntaxStructure s, int w) { c.structure_weights[s] = w; };
  set_structure(SyntaxStructure::Where, 1);
  set_structure(SyntaxStructure::OrderBy, 1);
  set_structure(SyntaxStructure::LimitOffset, 1);
  set_structure(SyntaxStructure::GroupBy, 2);
  set_structure(SyntaxStructure::Having, 2);
  set_structure(SyntaxStructure::InnerJoin, 2);
  set_structure(SyntaxStructure::CrossJoin, 3);
  set_structure(SyntaxStructure::OuterJoin, 3);
  set_structure(SyntaxStructure::Union, 3);
  set_structure(SyntaxStructure::Intersect, 3);
  set_structure(SyntaxStructure::Except, 3);
  set_structure(SyntaxStructure::ScalarSubquery, 3);
  set_structure(SyntaxStructure::CommonTableExpression, 3);
  set_structure(SyntaxStructure::CorrelatedSubquery, 4);

  auto set_action = [&](KeyAction a, int w) { c.action_weights[a] = w; };
  set_action(KeyAction::SpecificTime, 1);
  set_action(KeyAction::WildcardFiltering, 1);
  set_action(KeyAction::StringFunction, 1);
  set_action(KeyAction::TimeFunction, 2);
  set_action(KeyAction::AggregateFunction, 2);
  set_action(KeyAction::Cast, 2);
  set_action(KeyAction::ConditionJudgement, 2);
  set_action(KeyAction::WindowFunction, 3);
  set_action(KeyAction::JsonFunction, 3);
  return c;
}

int ComplexityConfig::weight(const TaxonomyLabels& labels) const {
  int score = intent_weights.at(labels.core_intent) +
              statement_weights.at(labels.statement_type);
  for (auto s : labels.syntax_structures) score += structure_weights.at(s);
  for (auto a : labels.key_actions) score += action_weights.at(a);
  return score;
}

void ComplexityConfig::validate() const {
  auto check = [](const Range& r, const char* name) {
    if (r.lo > r.hi) throw ConfigError(std::string("level range inverted: ") + name);
  };
  check(simple, "simple");
  check(medium, "medium");
  check(hard, "hard");
  if (!(simple.hi < medium.lo && medium.hi < hard.lo))
    throw ConfigError("level ranges must be disjoint and ordered simple < medium < hard");
  for (const auto& [k, v] : intent_weights)
    if (v < 1) throw ConfigError("weight < 1 for intent " + name_of(k));
  for (const auto& [k, v] : statement_weights)
    if (v < 1) throw ConfigError("weight < 1 for statement " + name_of(k));
  for (const auto& [k, v] : structure_weights)
    if (v < 1) throw ConfigError("weight < 1 for structure " + name_of(k));
  for (const auto& [k, v] : action_weights)
    if (v < 1) throw ConfigError("weight < 1 for action " + name_of(k));
}

std::pair<int, ComplexityLevel> complexity_of(const TaxonomyLabels& labels,
                                              const ComplexityConfig& config) {
  int score = config.weight(labels);
  if (score >= config.simple.lo && score <= config.simple.hi)
    return {score, ComplexityLevel::Simple};
  if (score >= config.medium.lo && score <= config.medium.hi)
    return {score, ComplexityLevel::Medium};
  if (score >= config.hard.lo && score <= config.hard.hi)
    return {score, ComplexityLevel::Hard};
  throw ScoreOutOfRange("complexity score " + std::to_string(score) +
                        " falls outside every configured level range");
}

std::vector<std::string> validate_combination(const TaxonomyLabels& labels,
                                              std::vector<std::string>* warnings) {
  std::vector<std::string> violations;
  const auto& ss = labels.syntax_structures;
  const auto& ka = labels.key_actions;
  bool dml = labels.statement_type == StatementType::Insert ||
             labels.statement_type == StatementType::Update ||
             labels.statement_type == StatementType::Delete;

  if ((labels.core_intent == CoreIntent::DataChange) != dml)
    violations.push_back("V1: Data change intent iff statement is Insert/Update/Delete");
  if ((labels.core_intent == CoreIntent::StructureChange) !=
      (labels.statement_type == StatementType::Alter))
    violations.push_back("V2: Structure change intent iff statement is Alter");
  if (labels.core_intent != CoreIntent::DataChange &&
      labels.core_intent != CoreIntent::StructureChange &&
      labels.statement_type != StatementType::Select)
    violations.push_back("V3: this intent requires a Select statement");
  if (ss.count(SyntaxStructure::Having) && !ss.count(SyntaxStructure::GroupBy))
    violations.push_back("V4: Having requires Group by");
  bool has_setop = ss.count(SyntaxStructure::Union) || ss.count(SyntaxStructure::Intersect) ||
                   ss.count(SyntaxStructure::Except);
  if (labels.core_intent == CoreIntent::SetOperation && !has_setop)
    violations.push_back("V5: Set operation intent requires Union, Intersect or Except");
  if (has_setop && labels.core_intent != CoreIntent::SetOperation && warnings)
    warnings->push_back("set-operation structures present under intent " +
                        name_of(labels.core_intent));
  if (labels.core_intent == CoreIntent::SortingAndPagination &&
      !ss.count(SyntaxStructure::OrderBy) && !ss.count(SyntaxStructure::LimitOffset))
    violations.push_back("V6: Sorting and Pagination requires Order by or Limit offset");
  if ((labels.core_intent == CoreIntent::TimeOperation ||
       labels.core_intent == CoreIntent::TrendAnalysis) &&
      !ka.count(KeyAction::SpecificTime) && !ka.count(KeyAction::TimeFunction))
    violations.push_back("V7: time-themed intents require Specific time or Time function");
  if (labels.statement_type == StatementType::Alter) {
    bool extra_action = false;
    for (auto a : ka)
      if (a != KeyAction::Cast) extra_action = true;
    if (!ss.empty() || extra_action)
      violations.push_back("V8: Alter combinations carry no structures and only Cast actions");
  }
  return violations;
}

TaxonomySubset TaxonomySubset::full() {
  TaxonomySubset s;
  s.intents.assign(all_core_intents().begin(), all_core_intents().end());
  s.statements.assign(all_statement_types().begin(), all_statement_types().end());
  s.structures.assign(all_syntax_structures().begin(), all_syntax_structures().end());
  s.actions.assign(all_key_actions().begin(), all_key_actions().end());
  return s;
}

std::vector<Combination> enumerate_combinations(const ComplexityConfig& config,
                                                const EnumerationCaps& caps,
                                                const TaxonomySubset& subset) {
  if (caps.max_structures < 1 || caps.max_actions < 1)
    throw ConfigError("enumeration caps must be >= 1");
  config.validate();

  auto masks_of = [](std::size_t n, int cap) {
    std::vector<unsigned> masks;
    for (unsigned m = 0; m < (1u << n); ++m)
      if (__builtin_popcount(m) <= cap) masks.push_back(m);
    return masks;
  };
  std::vector<unsigned> ss_masks = masks_of(subset.structures.size(), caps.max_structures);
  std::vector<unsigned> ka_masks = masks_of(subset.actions.size(), caps.max_actions);

  long long candidates = static_cast<long long>(subset.intents.size()) *
                         static_cast<long long>(subset.statements.size()) *
                         static_cast<long long>(ss_masks.size()) *
                         static_cast<long long>(ka_masks.size());
  if (candidates > caps.hard_ceiling)
    throw CombinatorialLimit("candidate space " + std::to_string(candidates) +
                             " exceeds ceiling " + std::to_string(caps.hard_ceiling));

  std::vector<Combination> out;
  for (CoreIntent intent : subset.intents) {
    for (StatementType stmt : subset.statements) {
      for (unsigned sm : ss_masks) {
        StructureSet structures;
        for (std::size_t i = 0; i < subset.structures.size(); ++i)
          if (sm & (1u << i)) structures.insert(subset.structures[i]);
        for (unsigned am : ka_masks) {
          TaxonomyLabels labels;
          labels.core_intent = intent;
          labels.statement_type = stmt;
          labels.syntax_structures = structures;
          for (std::size_t i = 0; i < subset.actions.size(); ++i)
            if (am & (1u << i)) labels.key_actions.insert(subset.actions[i]);
          if (!validate_combination(labels).empty()) continue;
          int score = config.weight(labels);
          ComplexityLevel level;
          if (score >= config.simple.lo && score <= config.simple.hi)
            level = ComplexityLevel::Simple;
          else if (score >= config.medium.lo && score <= config.medium.hi)
            level = ComplexityLevel::Medium;
          else if (score >= config.hard.lo && score <= config.hard.hi)
            level = ComplexityLevel::Hard;
          else
            continue;  // score in no level range
          out.push_back(Combination{std::move(labels), level, score});
        }
      }
    }
  }
  return out;
}

}  // namespace synthsql
