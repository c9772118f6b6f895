#include "synthsql/taxonomy/classify.hpp"

#include <utility>

#include "synthsql/errors.hpp"
#include "synthsql/gateway/extract.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

// Question keyword groups in priority order; the first matching group wins.
const std::vector<std::pair<CoreIntent, std::vector<const char*>>>& keyword_groups() {
  static const std::vector<std::pair<CoreIntent, std::vector<const char*>>> groups = {
      {CoreIntent::TrendAnalysis,
       {"trend", "over time", "growth", "month-over-month", "year-over-year"}},
      {CoreIntent::DistributionAnalysis,
       {"distribution", "spread", "frequency", "histogram", "breakdown by"}},
      {CoreIntent::BusinessRule,
       {"eligible", "qualif", "policy", "business rule", "comply", "compliant"}},
      {CoreIntent::BusinessCalculation,
       {"revenue", "profit", "margin", "cost per", "price per", "average order value"}},
      {CoreIntent::AdvancedStatistics,
       {"rank", "running total", "percentile", "cumulative", "moving average"}},
      {CoreIntent::SetOperation,
       {"union", "combined", "either list", "intersect", "appear in both", "but not in"}},
      {CoreIntent::TimeOperation,
       {"date", "during", "before", "after", "what year", "what time"}},
      {CoreIntent::FormatTransformation, {"format", "convert", "cast", "as text", "as a number"}},
      {CoreIntent::SortingAndPagination,
       {"sorted", "sort", "order", "top ", "first ", "page", "highest", "lowest"}},
      {CoreIntent::BasicAggregation,
       {"how many", "count", "total number", "average", "sum of", "per group"}},
      {CoreIntent::ConditionFiltering,
       {"only", "whose", "filtered", "matching", "that have", "with a"}},
      {CoreIntent::BasicQuery, {"list every", "retrieve all", "show all"}},
  };
  return groups;
}

bool contains_any(const std::string& haystack, const std::vector<const char*>& needles) {
  for (const char* n : needles)
    if (haystack.find(n) != std::string::npos) return true;
  return false;
}

}  // namespace

ClassifyContext ClassifyContext::defaults() {
  return ClassifyContext{sql::FunctionTable::sqlite_defaults(), sql::TemporalFormats{},
                         ComplexityConfig::defaults(), "sqlite"};
}

bool triggers_other_intent(const std::string& text, CoreIntent target) {
  const std::string lowered = to_lower(text);
  for (const auto& [intent, words] : keyword_groups()) {
    if (intent == target) break;  // lower-priority groups cannot override the target's phrase
    if (contains_any(lowered, words)) return true;
  }
  return false;
}

CoreIntent heuristic_intent(const std::string& question, const sql::SqlFeatureSummary& summary) {
  switch (summary.statement_type) {
    case StatementType::Insert:
    case StatementType::Update:
    case StatementType::Delete:
      return CoreIntent::DataChange;
    case StatementType::Alter:
      return CoreIntent::StructureChange;
    default:
      break;
  }

  const std::string q = to_lower(question);
  for (const auto& [intent, words] : keyword_groups())
    if (contains_any(q, words)) return intent;

  // SQL-shape defaults when the question is uninformative.
  if (summary.syntax_structures.count(SyntaxStructure::Union) ||
      summary.syntax_structures.count(SyntaxStructure::Intersect) ||
      summary.syntax_structures.count(SyntaxStructure::Except))
    return CoreIntent::SetOperation;
  if (summary.key_actions.count(KeyAction::AggregateFunction) ||
      summary.syntax_structures.count(SyntaxStructure::GroupBy))
    return CoreIntent::BasicAggregation;
  if (summary.syntax_structures.count(SyntaxStructure::Where))
    return CoreIntent::ConditionFiltering;
  return CoreIntent::BasicQuery;
}

ClassifiedRecord classify_pair(const std::string& question, const std::string& sql,
                               const std::string& dialect, const sql::FunctionTable& functions,
                               const sql::TemporalFormats& temporal,
                               const ComplexityConfig& complexity) {
  ClassifiedRecord rec;
  rec.summary = sql::summarize(question, sql, dialect, functions, temporal);
  rec.labels.statement_type = rec.summary.statement_type;
  rec.labels.syntax_structures = rec.summary.syntax_structures;
  rec.labels.key_actions = rec.summary.key_actions;
  rec.labels.core_intent = heuristic_intent(question, rec.summary);
  auto [score, level] = complexity_of(rec.labels, complexity);
  rec.score = score;
  rec.level = level;
  return rec;
}

CoreIntent llm_intent(const std::string& question, const std::string& sql,
                      const sql::SqlFeatureSummary& summary, Gateway& gateway) {
  try {
    std::string response =
        gateway.call("intent_classification", {{"question", question}, {"sql", sql}});
    auto value = extract_structured(response, ExpectedShape{false, {"intent"}});
    if (auto intent = core_intent_from(value.at("intent").get<std::string>())) return *intent;
  } catch (const GatewayError&) {
  } catch (const ExtractionError&) {
  } catch (const nlohmann::json::exception&) {
  }
  return heuristic_intent(question, summary);
}

}  // namespace synthsql
