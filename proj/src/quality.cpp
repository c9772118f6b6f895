#include "synthsql/eval/quality.hpp"

#include "synthsql/errors.hpp"
#include "synthsql/gateway/extract.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

const std::string& name_of(QualityLevel level) {
  static const std::string names[] = {"Excellent", "Good", "Average", "Poor"};
  return names[static_cast<int>(level)];
}

std::optional<QualityLevel> quality_level_from(const std::string& name) {
  for (QualityLevel l : {QualityLevel::Excellent, QualityLevel::Good, QualityLevel::Average,
                         QualityLevel::Poor})
    if (name_of(l) == name) return l;
  return std::nullopt;
}

const std::vector<std::string>& quality_criteria() {
  static const std::vector<std::string> criteria = {
      "Real-world Relevance",   "Proper Grammar",
      "Consistency with Database Schema", "Unambiguous Phrasing",
      "SQL Correctness",        "SQL Efficiency",
      "Result Alignment",       "Structural Alignment",
      "Efficiency of Solution", "Answer Adherence"};
  return criteria;
}

std::vector<QualityVerdict> quality_judge(const DatasetRecord& record, Gateway& gateway) {
  std::string missing;
  for (int attempt = 1; attempt <= 2; ++attempt) {  // one reprompt on malformed output
    std::string response = gateway.call("quality_judge",
                                        {{"question", record.question},
                                         {"sql", record.sql},
                                         {"attempt", std::to_string(attempt)}});
    std::map<std::string, QualityVerdict> by_criterion;
    try {
      auto value = extract_structured(response, ExpectedShape{false, {"verdicts"}});
      for (const auto& vj : value.at("verdicts")) {
        QualityVerdict v;
        v.criterion = vj.at("criterion").get<std::string>();
        auto level = quality_level_from(vj.at("level").get<std::string>());
        if (!level) continue;
        v.level = *level;
        v.explanation = vj.at("explanation").get<std::string>();
        if (v.explanation.empty()) continue;
        by_criterion[v.criterion] = v;
      }
    } catch (const std::exception&) {
      missing = quality_criteria().front();
      continue;
    }
    missing.clear();
    std::vector<QualityVerdict> out;
    for (const auto& c : quality_criteria()) {
      auto it = by_criterion.find(c);
      if (it == by_criterion.end()) {
        missing = c;
        break;
      }
      out.push_back(it->second);
    }
    if (missing.empty()) return out;
  }
  throw MissingVerdict("judge output lacks a verdict for criterion: " + missing);
}

double aggregate_quality(const std::vector<QualityVerdict>& group) {
  if (group.empty()) throw EmptyGroup("aggregate_quality: empty verdict group");
  static const double weights[] = {1.0, 0.75, 0.5, 0.25};
  double sum = 0.0;
  for (const auto& v : group) sum += weights[static_cast<int>(v.level)];
  return sum / double(group.size());
}

std::map<std::string, double> aggregate_by_criterion(
    const std::vector<std::vector<QualityVerdict>>& all) {
  std::map<std::string, std::vector<QualityVerdict>> grouped;
  for (const auto& verdicts : all)
    for (const auto& v : verdicts) grouped[v.criterion].push_back(v);
  std::map<std::string, double> out;
  for (const auto& [criterion, group] : grouped) out[criterion] = aggregate_quality(group);
  return out;
}

}  // namespace synthsql
