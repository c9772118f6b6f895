#pragma once

#include <map>
#include <string>
#include <vector>

#include "synthsql/gateway/gateway.hpp"
#include "synthsql/records.hpp"

namespace synthsql {

enum class QualityLevel { Excellent, Good, Average, Poor };
const std::string& name_of(QualityLevel level);
std::optional<QualityLevel> quality_level_from(const std::string& name);

struct QualityVerdict {
  std::string criterion;
  QualityLevel level = QualityLevel::Average;
  std::string explanation;
};

// The ten fixed review criteria, in canonical order.
const std::vector<std::string>& quality_criteria();

// Exactly one verdict per criterion; malformed judge output triggers one
// reprompt, then MissingVerdict naming the absent criterion.
std::vector<QualityVerdict> quality_judge(const DatasetRecord& record, Gateway& gateway);

// Weighted mean with weights 1 / 0.75 / 0.5 / 0.25 per level; in [0.25, 1].
// Throws EmptyGroup.
double aggregate_quality(const std::vector<QualityVerdict>& group);

// Per-criterion aggregation over many records' verdicts.
std::map<std::string, double> aggregate_by_criterion(
    const std::vector<std::vector<QualityVerdict>>& all);

}  // namespace synthsql
