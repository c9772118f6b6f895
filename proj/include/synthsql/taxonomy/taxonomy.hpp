#pragma once

#include <map>
#include <string>
#include <vector>

#include "synthsql/taxonomy/categories.hpp"

namespace synthsql {

struct TaxonomyLabels {
  CoreIntent core_intent = CoreIntent::BasicQuery;
  StatementType statement_type = StatementType::Select;
  StructureSet syntax_structures;
  ActionSet key_actions;

  bool operator==(const TaxonomyLabels& o) const = default;
  auto operator<=>(const TaxonomyLabels& o) const = default;
};

enum class ComplexityLevel { Simple, Medium, Hard };
const std::string& name_of(ComplexityLevel v);
std::optional<ComplexityLevel> complexity_level_from(const std::string& name);

struct Combination {
  TaxonomyLabels labels;
  ComplexityLevel level = ComplexityLevel::Simple;
  int score = 0;

  bool operator==(const Combination& o) const = default;
};

struct ComplexityConfig {
  std::map<CoreIntent, int> intent_weights;
  std::map<StatementType, int> statement_weights;
  std::map<SyntaxStructure, int> structure_weights;
  std::map<KeyAction, int> action_weights;

  struct Range {
    int lo = 0;
    int hi = 0;  // inclusive; hard.hi is effectively unbounded
  };
  Range simple{1, 4}, medium{5, 8}, hard{9, 1 << 30};

  static ComplexityConfig defaults();
  int weight(const TaxonomyLabels& labels) const;
  void validate() const;  // throws ConfigError on overlapping/unordered ranges
};

std::pair<int, ComplexityLevel> complexity_of(const TaxonomyLabels& labels,
                                              const ComplexityConfig& config);

// Hard validity rules V1-V8; the returned strings identify the violated
// rules. Soft observations (never rejected) go to `warnings` when given.
std::vector<std::string> validate_combination(const TaxonomyLabels& labels,
                                              std::vector<std::string>* warnings = nullptr);

// Category subsets driving enumeration; defaults to the full taxonomy.
struct TaxonomySubset {
  std::vector<CoreIntent> intents;
  std::vector<StatementType> statements;
  std::vector<SyntaxStructure> structures;
  std::vector<KeyAction> actions;
  static TaxonomySubset full();
};

struct EnumerationCaps {
  int max_structures = 3;
  int max_actions = 2;
  long long hard_ceiling = 5'000'000;  // candidate count before filtering
};

// Emits every valid combination in canonical order (intent, statement,
// structure mask ascending, action mask ascending). Throws
// CombinatorialLimit when the candidate space exceeds the ceiling.
std::vector<Combination> enumerate_combinations(const ComplexityConfig& config,
                                                const EnumerationCaps& caps,
                                                const TaxonomySubset& subset =
                                                    TaxonomySubset::full());

}  // namespace synthsql
