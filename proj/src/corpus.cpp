#include "synthsql/corpus.hpp"

#include "json.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

std::vector<CorpusPair> load_corpus_jsonl(const std::string& path) {
  std::vector<CorpusPair> out;
  std::size_t n = 0;
  for (const auto& line : read_lines(path)) {
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    CorpusPair p;
    p.id = j.value("id", "pair-" + std::to_string(n));
    p.db_id = j.value("db_id", "");
    p.question = j.at("question").get<std::string>();
    p.sql = j.at("sql").get<std::string>();
    out.push_back(std::move(p));
    ++n;
  }
  return out;
}

std::vector<CorpusPair> load_spider_json(const std::string& path) {
  nlohmann::json doc = nlohmann::json::parse(read_file(path));
  if (!doc.is_array()) throw IoError("expected a JSON array of examples in " + path);
  std::vector<CorpusPair> out;
  std::size_t n = 0;
  for (const auto& j : doc) {
    CorpusPair p;
    p.id = j.value("id", "spider-" + std::to_string(n));
    p.db_id = j.value("db_id", "");
    p.question = j.at("question").get<std::string>();
    p.sql = j.at("query").get<std::string>();
    out.push_back(std::move(p));
    ++n;
  }
  return out;
}

std::vector<LabeledPair> label_corpus(const std::vector<CorpusPair>& pairs,
                                      const sql::FunctionTable& functions,
                                      const sql::TemporalFormats& temporal,
                                      const ComplexityConfig& complexity,
                                      std::vector<std::string>* skipped) {
  std::vector<LabeledPair> out;
  for (const auto& p : pairs) {
    try {
      ClassifiedRecord rec = classify_pair(p.question, p.sql, "sqlite", functions, temporal,
                                           complexity);
      out.push_back(LabeledPair{p, rec.labels, rec.level});
    } catch (const std::exception& e) {
      if (skipped) skipped->push_back(p.id + ": " + e.what());
    }
  }
  return out;
}

}  // namespace synthsql
