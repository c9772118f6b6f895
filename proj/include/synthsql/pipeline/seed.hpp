#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "synthsql/corpus.hpp"
#include "synthsql/dbforge/schema.hpp"
#include "synthsql/gateway/gateway.hpp"
#include "synthsql/records.hpp"

namespace synthsql {

// |a ∩ b| / |a ∪ b|; two empty sets compare as 1.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Union of category names across all four dimensions (level excluded);
// the Jaccard operand for blueprint retrieval.
std::set<std::string> label_set(const TaxonomyLabels& labels);

struct MatchResult {
  // combination index -> index of the first corpus record matching its full
  // label tuple (labels + level)
  std::map<std::size_t, std::size_t> covered;
  std::vector<std::size_t> uncovered;
};
MatchResult match_combinations(const std::vector<LabeledPair>& records,
                               const std::vector<Combination>& combos);

// Indices of the k records maximizing jaccard(label_set(combo), label_set(r));
// ties broken by corpus order.
std::vector<std::size_t> retrieve_blueprints(const Combination& combo,
                                             const std::vector<LabeledPair>& records,
                                             std::size_t k = 5);

struct SeedOptions {
  int attempts = 3;       // seed_modification calls per combination
  int repair_budget = 3;  // seed_repair calls per failing statement
  double timeout_secs = 10.0;
};

// Closed-loop generation: the returned seed re-classifies to `combo` exactly
// and executes against db_path within the timeout. Throws SeedRejected with
// the last diagnosis.
SeedRecord generate_seed(const Combination& combo, const std::vector<LabeledPair>& blueprints,
                         const DatabaseSchema& schema, const std::string& db_path,
                         Gateway& gateway, const ClassifyContext& ctx, const SeedOptions& opts);

// Returns the record unchanged (zero calls) when its SQL already executes;
// otherwise asks the gateway to repair, re-checking execution and labels.
// Throws RepairExhausted after `budget` attempts.
SeedRecord repair_loop(const SeedRecord& record, const DatabaseSchema& schema,
                       const std::string& db_path, Gateway& gateway, const ClassifyContext& ctx,
                       int budget = 3, double timeout_secs = 10.0);

// Runs `sql` against a throwaway copy of db_path; nullopt on success.
std::optional<std::string> execute_on_copy(const std::string& sql, const std::string& db_path,
                                           double timeout_secs);

}  // namespace synthsql
