#pragma once

#include <string>
#include <vector>

#include "synthsql/taxonomy/classify.hpp"

namespace synthsql {

struct CorpusPair {
  std::string id;
  std::string db_id;
  std::string question;
  std::string sql;
};

struct LabeledPair {
  CorpusPair pair;
  TaxonomyLabels labels;
  ComplexityLevel level = ComplexityLevel::Simple;
};

// JSONL, one {id?, db_id?, question, sql} object per line.
std::vector<CorpusPair> load_corpus_jsonl(const std::string& path);

// De-facto public text-to-SQL layout: a JSON array of
// {question, query, db_id} objects.
std::vector<CorpusPair> load_spider_json(const std::string& path);

// Classifies every pair; pairs whose SQL fails to parse are skipped with a
// message appended to *skipped.
std::vector<LabeledPair> label_corpus(const std::vector<CorpusPair>& pairs,
                                      const sql::FunctionTable& functions,
                                      const sql::TemporalFormats& temporal,
                                      const ComplexityConfig& complexity,
                                      std::vector<std::string>* skipped = nullptr);

}  // namespace synthsql
