#pragma once

#include <cstdint>
#include <string>

#include "synthsql/dbforge/schema.hpp"
#include "synthsql/taxonomy/taxonomy.hpp"

namespace synthsql {

// Rule-based text/SQL synthesis used by the mock provider. The emitted SQL
// re-classifies to exactly the requested combination and executes against a
// database initialized from `schema`; the question's keyword steers the
// heuristic intent classifier to the combination's core intent.
struct BuiltPair {
  bool realizable = false;
  std::string reason;  // set when not realizable
  std::string sql;
  std::string question;
};

// `variant` perturbs fixed literals (deterministically) so distinct call
// sites can get distinct but equivalent statements.
BuiltPair build_pair(const Combination& combo, const DatabaseSchema& schema,
                     std::uint64_t variant = 0);

// Question templates per core intent. `rich` mode mixes in scenario/table
// vocabulary and template variants for lexical diversity; plain mode is a
// single fixed template per intent.
std::string question_for(const Combination& combo, const DatabaseSchema& schema,
                         std::uint64_t variant, bool rich);

}  // namespace synthsql
