#pragma once

#include <functional>
#include <string>
#include <vector>

namespace synthsql {

// Unique lowercase word tokens / total word tokens; whitespace split with
// edge punctuation stripped. Throws EmptyCorpus when no tokens remain.
double ttr(const std::vector<std::string>& questions);

using Embedder = std::function<std::vector<double>(const std::string&)>;

// Offline default: hashed bag-of-words into `dims` buckets.
Embedder hashed_bow_embedder(std::size_t dims = 64);

// Connected communities of the cosine-similarity graph (edges at
// similarity >= threshold), found by deterministic min-label propagation.
// Throws EmbedderError on ragged embeddings.
std::size_t semantic_clusters(const std::vector<std::string>& questions,
                              const Embedder& embedder, double threshold = 0.8);

struct DiversityReport {
  double ttr = 0.0;
  std::size_t cluster_count = 0;
  std::size_t sample_size = 0;
};

DiversityReport diversity_report(const std::vector<std::string>& questions,
                                 const Embedder& embedder, double threshold = 0.8);

}  // namespace synthsql
