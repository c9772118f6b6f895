#include "synthsql/eval/diversity.hpp"

#include <cctype>
#include <cmath>
#include <set>

#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

std::vector<std::string> word_tokens(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& raw : split_ws(text)) {
    std::size_t begin = 0, end = raw.size();
    while (begin < end && std::ispunct(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::ispunct(static_cast<unsigned char>(raw[end - 1]))) --end;
    if (end > begin) out.push_back(to_lower(raw.substr(begin, end - begin)));
  }
  return out;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

double ttr(const std::vector<std::string>& questions) {
  std::set<std::string> unique;
  std::size_t total = 0;
  for (const auto& q : questions)
    for (const auto& w : word_tokens(q)) {
      unique.insert(w);
      ++total;
    }
  if (total == 0) throw EmptyCorpus("ttr: no word tokens");
  return double(unique.size()) / double(total);
}

Embedder hashed_bow_embedder(std::size_t dims) {
  return [dims](const std::string& text) {
    std::vector<double> v(dims, 0.0);
    for (const auto& w : word_tokens(text)) v[fnv1a(w) % dims] += 1.0;
    return v;
  };
}

std::size_t semantic_clusters(const std::vector<std::string>& questions,
                              const Embedder& embedder, double threshold) {
  if (questions.empty()) throw EmptyCorpus("semantic_clusters: no questions");
  std::vector<std::vector<double>> vectors;
  vectors.reserve(questions.size());
  for (const auto& q : questions) vectors.push_back(embedder(q));
  for (const auto& v : vectors)
    if (v.size() != vectors[0].size())
      throw EmbedderError("embedder returned vectors of differing length");

  const std::size_t n = vectors.size();
  std::vector<std::vector<std::size_t>> adjacent(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (cosine(vectors[i], vectors[j]) >= threshold) {
        adjacent[i].push_back(j);
        adjacent[j].push_back(i);
      }

  // min-label propagation with fixed iteration order: deterministic, and on
  // a simple similarity graph it converges to connected components
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j : adjacent[i])
        if (label[j] < label[i]) {
          label[i] = label[j];
          changed = true;
        }
  }
  std::set<std::size_t> distinct(label.begin(), label.end());
  return distinct.size();
}

DiversityReport diversity_report(const std::vector<std::string>& questions,
                                 const Embedder& embedder, double threshold) {
  DiversityReport report;
  report.sample_size = questions.size();
  report.ttr = ttr(questions);
  report.cluster_count = semantic_clusters(questions, embedder, threshold);
  return report;
}

}  // namespace synthsql
