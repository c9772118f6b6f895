#include "synthsql/taxonomy/coverage.hpp"

#include <cstdio>
#include <set>

#include "synthsql/errors.hpp"

namespace synthsql {

CoverageReport coverage_report(const std::vector<TaxonomyLabels>& records) {
  if (records.empty()) throw EmptyCorpus("coverage_report: no records");

  CoverageReport report;
  report.record_count = records.size();
  std::set<CoreIntent> intents;
  std::set<StatementType> statements;
  std::set<SyntaxStructure> structures;
  std::set<KeyAction> actions;
  for (const auto& r : records) {
    intents.insert(r.core_intent);
    statements.insert(r.statement_type);
    report.intent_histogram[name_of(r.core_intent)]++;
    report.statement_histogram[name_of(r.statement_type)]++;
    for (auto s : r.syntax_structures) {
      structures.insert(s);
      report.structure_histogram[name_of(s)]++;
    }
    for (auto a : r.key_actions) {
      actions.insert(a);
      report.action_histogram[name_of(a)]++;
    }
  }
  report.intent_coverage = double(intents.size()) / double(kCoreIntentCount);
  report.statement_coverage = double(statements.size()) / double(kStatementTypeCount);
  report.structure_coverage = double(structures.size()) / double(kSyntaxStructureCount);
  report.action_coverage = double(actions.size()) / double(kKeyActionCount);
  return report;
}

nlohmann::json to_json(const CoverageReport& report) {
  return nlohmann::json{{"record_count", report.record_count},
                        {"core_intent", report.intent_coverage},
                        {"statement_type", report.statement_coverage},
                        {"syntax_structure", report.structure_coverage},
                        {"key_action", report.action_coverage},
                        {"intent_histogram", report.intent_histogram},
                        {"statement_histogram", report.statement_histogram},
                        {"structure_histogram", report.structure_histogram},
                        {"action_histogram", report.action_histogram}};
}

std::string format_coverage_table(const CoverageReport& report) {
  auto covered = [](const std::map<std::string, std::size_t>& h) { return h.size(); };
  char buf[128];
  std::string out;
  out += "Dimension           Covered  Total  Ratio\n";
  auto row = [&](const char* name, std::size_t c, std::size_t total, double ratio) {
    std::snprintf(buf, sizeof(buf), "%-20s %6zu %6zu  %.2f\n", name, c, total, ratio);
    out += buf;
  };
  row("Core intent", covered(report.intent_histogram), kCoreIntentCount, report.intent_coverage);
  row("Statement type", covered(report.statement_histogram), kStatementTypeCount,
      report.statement_coverage);
  row("Syntax structure", covered(report.structure_histogram), kSyntaxStructureCount,
      report.structure_coverage);
  row("Key action", covered(report.action_histogram), kKeyActionCount, report.action_coverage);
  out += "\nHistograms (records per category):\n";
  auto hist = [&](const char* name, const std::map<std::string, std::size_t>& h) {
    out += std::string(name) + ":\n";
    for (const auto& [k, v] : h) {
      std::snprintf(buf, sizeof(buf), "  %-28s %zu\n", k.c_str(), v);
      out += buf;
    }
  };
  hist("Core intent", report.intent_histogram);
  hist("Statement type", report.statement_histogram);
  hist("Syntax structure", report.structure_histogram);
  hist("Key action", report.action_histogram);
  return out;
}

}  // namespace synthsql
