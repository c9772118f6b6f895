#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "synthsql/gateway/prompt.hpp"

namespace synthsql {

// Thrown by providers for retryable transport failures.
struct TransientProviderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GatewayCall {
  std::string id;
  std::string template_name;
  std::string prompt;
  std::string response;
  int attempts = 1;
  double latency_ms = 0.0;
};

class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::string complete(const std::string& template_name, const std::string& prompt) = 0;
  virtual std::string id() const = 0;
};

// Chat-completion endpoint configured by SYNTH_LLM_ENDPOINT / SYNTH_LLM_MODEL /
// SYNTH_LLM_KEY. Admission is limited by a shared token bucket.
std::shared_ptr<Provider> make_remote_provider(unsigned max_concurrent = 4,
                                               unsigned calls_per_minute = 60);

struct RetryPolicy {
  int attempts = 3;
  int base_backoff_ms = 200;  // doubled per retry; zero in tests
};

// Single choke-point for model calls: renders templates, talks to the
// provider with retries, and records every call for provenance replay.
class Gateway {
 public:
  Gateway(PromptLibrary library, std::shared_ptr<Provider> provider, RetryPolicy retry = {});

  // Renders + completes. The returned call id is content-addressed and
  // stable across runs.
  std::string call(const std::string& template_name,
                   const std::map<std::string, std::string>& bindings,
                   std::string* call_id = nullptr);

  std::vector<GatewayCall> log_snapshot() const;
  // One JSON object per line, sorted by call id.
  std::string dump_log() const;
  const PromptLibrary& library() const { return library_; }

 private:
  PromptLibrary library_;
  std::shared_ptr<Provider> provider_;
  RetryPolicy retry_;
  mutable std::mutex mu_;
  std::vector<GatewayCall> log_;
  std::map<std::string, int> id_occurrence_;
};

}  // namespace synthsql
