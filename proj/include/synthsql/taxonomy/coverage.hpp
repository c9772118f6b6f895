#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthsql/taxonomy/taxonomy.hpp"

namespace synthsql {

// Per-dimension category coverage over a labeled corpus. Syntax structures
// and key actions count each present category once per record.
struct CoverageReport {
  std::size_t record_count = 0;
  double intent_coverage = 0.0;
  double statement_coverage = 0.0;
  double structure_coverage = 0.0;
  double action_coverage = 0.0;
  std::map<std::string, std::size_t> intent_histogram;
  std::map<std::string, std::size_t> statement_histogram;
  std::map<std::string, std::size_t> structure_histogram;
  std::map<std::string, std::size_t> action_histogram;
};

// Throws EmptyCorpus. Invariant under record reordering.
CoverageReport coverage_report(const std::vector<TaxonomyLabels>& records);

nlohmann::json to_json(const CoverageReport& report);
// Plain-text four-row table (dimension, covered, total, ratio) plus
// histograms.
std::string format_coverage_table(const CoverageReport& report);

}  // namespace synthsql
