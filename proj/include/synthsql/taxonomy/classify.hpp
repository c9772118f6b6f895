#pragma once

#include <string>
#include <vector>

#include "synthsql/gateway/gateway.hpp"
#include "synthsql/sql/detect.hpp"
#include "synthsql/taxonomy/taxonomy.hpp"

namespace synthsql {

struct ClassifiedRecord {
  TaxonomyLabels labels;
  ComplexityLevel level = ComplexityLevel::Simple;
  int score = 0;
  sql::SqlFeatureSummary summary;
};

// Everything classification needs, bundled for call sites that thread it
// through the pipeline.
struct ClassifyContext {
  sql::FunctionTable functions;
  sql::TemporalFormats temporal;
  ComplexityConfig complexity;
  std::string dialect = "sqlite";

  static ClassifyContext defaults();
};

// Ordered rule table: statement type first (Data change / Structure change
// are forced), then question keyword groups, then SQL-shape defaults.
// Total and deterministic.
CoreIntent heuristic_intent(const std::string& question, const sql::SqlFeatureSummary& summary);

// Full four-dimension classification of one question/SQL pair.
ClassifiedRecord classify_pair(const std::string& question, const std::string& sql,
                               const std::string& dialect, const sql::FunctionTable& functions,
                               const sql::TemporalFormats& temporal,
                               const ComplexityConfig& complexity);

// True when `text` contains a keyword that would steer the heuristic to an
// intent other than `target`. Question generators use this to keep schema
// vocabulary from derailing re-classification.
bool triggers_other_intent(const std::string& text, CoreIntent target);

// Higher-fidelity intent via the gateway (intent_classification template);
// falls back to the heuristic on extraction failure or unknown category.
CoreIntent llm_intent(const std::string& question, const std::string& sql,
                      const sql::SqlFeatureSummary& summary, Gateway& gateway);

}  // namespace synthsql
