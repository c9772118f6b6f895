#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace synthsql {

struct ParseError : std::runtime_error {
  std::size_t offset;
  std::string expected;
  ParseError(std::size_t off, const std::string& exp, const std::string& msg)
      : std::runtime_error(msg), offset(off), expected(exp) {}
};

struct UnsupportedFeature : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedStatement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScoreOutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CombinatorialLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyCorpus : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CycleError : std::runtime_error {
  std::vector<std::string> cycle;
  CycleError(std::vector<std::string> c, const std::string& msg)
      : std::runtime_error(msg), cycle(std::move(c)) {}
};

struct ConstraintViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnhancementRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GatewayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AuthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingPlaceholder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownPlaceholder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExtractionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SeedRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RepairExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GoldFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingVerdict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmbedderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace synthsql
