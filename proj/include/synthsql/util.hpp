#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace synthsql {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
bool starts_with_icase(std::string_view s, std::string_view prefix);
std::vector<std::string> split_ws(std::string_view s);

// FNV-1a, stable across platforms; used for content-addressed ids.
std::uint64_t fnv1a(std::string_view s);
std::string hex64(std::uint64_t v);

std::string read_file(const std::string& path);
// Writes to a temp file in the same directory and renames into place.
void atomic_write(const std::string& path, const std::string& content);

std::vector<std::string> read_lines(const std::string& path);

// Deterministic 64-bit splitmix stream; the single RNG used for sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n);
  // k distinct indices out of n, order preserved by draw
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::uint64_t state_;
};

// Index-ordered parallel map: results are merged by input index, so output
// is independent of scheduling.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace synthsql
