#include "synthsql/gateway/gateway.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

// Token bucket shared by all remote calls: bounded concurrency plus a
// calls-per-minute budget.
class RateLimiter {
 public:
  RateLimiter(unsigned max_concurrent, unsigned calls_per_minute)
      : max_concurrent_(max_concurrent), calls_per_minute_(calls_per_minute) {}

  void acquire() {
    std::unique_lock<std::mutex> lk(mu_);
    auto now = [] { return std::chrono::steady_clock::now(); };
    cv_.wait(lk, [&] {
      while (!recent_.empty() && now() - recent_.front() > std::chrono::minutes(1))
        recent_.pop_front();
      return active_ < max_concurrent_ && recent_.size() < calls_per_minute_;
    });
    ++active_;
    recent_.push_back(now());
  }

  void release() {
    std::lock_guard<std::mutex> lk(mu_);
    --active_;
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  unsigned active_ = 0;
  unsigned max_concurrent_;
  unsigned calls_per_minute_;
  std::deque<std::chrono::steady_clock::time_point> recent_;
};

class RemoteProvider : public Provider {
 public:
  RemoteProvider(unsigned max_concurrent, unsigned calls_per_minute)
      : limiter_(max_concurrent, calls_per_minute) {
    const char* endpoint = std::getenv("SYNTH_LLM_ENDPOINT");
    const char* model = std::getenv("SYNTH_LLM_MODEL");
    const char* key = std::getenv("SYNTH_LLM_KEY");
    if (!endpoint || !model || !key)
      throw ConfigError(
          "remote provider requires SYNTH_LLM_ENDPOINT, SYNTH_LLM_MODEL and SYNTH_LLM_KEY");
    endpoint_ = endpoint;
    model_ = model;
    key_ = key;
  }

  std::string id() const override { return "remote:" + model_; }

  std::string complete(const std::string& template_name, const std::string& prompt) override {
    (void)template_name;
    limiter_.acquire();
    struct Release {
      RateLimiter& l;
      ~Release() { l.release(); }
    } release{limiter_};

    auto slash = endpoint_.find('/', endpoint_.find("//") + 2);
    std::string host = slash == std::string::npos ? endpoint_ : endpoint_.substr(0, slash);
    std::string path = slash == std::string::npos ? "/v1/chat/completions"
                                                  : endpoint_.substr(slash);
    httplib::Client client(host);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    nlohmann::json body = {
        {"model", model_},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
    };
    httplib::Headers headers = {{"Authorization", "Bearer " + key_}};
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) throw TransientProviderError("transport failure contacting " + host);
    if (res->status == 401 || res->status == 403)
      throw AuthError("provider rejected credentials (HTTP " + std::to_string(res->status) + ")");
    if (res->status >= 500 || res->status == 429)
      throw TransientProviderError("provider returned HTTP " + std::to_string(res->status));
    if (res->status != 200)
      throw GatewayError("provider returned HTTP " + std::to_string(res->status) + ": " +
                         res->body);
    auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty())
      throw GatewayError("malformed provider response: " + res->body);
    return parsed["choices"][0]["message"]["content"].get<std::string>();
  }

 private:
  RateLimiter limiter_;
  std::string endpoint_, model_, key_;
};

}  // namespace

std::shared_ptr<Provider> make_remote_provider(unsigned max_concurrent,
                                               unsigned calls_per_minute) {
  return std::make_shared<RemoteProvider>(max_concurrent, calls_per_minute);
}

Gateway::Gateway(PromptLibrary library, std::shared_ptr<Provider> provider, RetryPolicy retry)
    : library_(std::move(library)), provider_(std::move(provider)), retry_(retry) {}

std::string Gateway::call(const std::string& template_name,
                          const std::map<std::string, std::string>& bindings,
                          std::string* call_id) {
  std::string prompt = library_.get(template_name).render(bindings);
  std::string content_hash = hex64(fnv1a(template_name + "\x1f" + prompt));

  std::string diagnostics;
  auto start = std::chrono::steady_clock::now();
  for (int attempt = 1; attempt <= retry_.attempts; ++attempt) {
    try {
      std::string response = provider_->complete(template_name, prompt);
      GatewayCall call;
      call.template_name = template_name;
      call.prompt = prompt;
      call.response = response;
      call.attempts = attempt;
      call.latency_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      {
        std::lock_guard<std::mutex> lk(mu_);
        int n = id_occurrence_[content_hash]++;
        call.id = content_hash + "-" + std::to_string(n);
        log_.push_back(call);
      }
      if (call_id) *call_id = call.id;
      return response;
    } catch (const TransientProviderError& e) {
      diagnostics += "attempt " + std::to_string(attempt) + ": " + e.what() + "; ";
      if (attempt < retry_.attempts && retry_.base_backoff_ms > 0)
        std::this_thread::sleep_for(
            std::chrono::milliseconds(retry_.base_backoff_ms << (attempt - 1)));
    }
  }
  throw GatewayError("call '" + template_name + "' failed after " +
                     std::to_string(retry_.attempts) + " attempts: " + diagnostics);
}

std::vector<GatewayCall> Gateway::log_snapshot() const {
  std::lock_guard<std::mutex> lk(mu_);
  return log_;
}

std::string Gateway::dump_log() const {
  auto calls = log_snapshot();
  std::sort(calls.begin(), calls.end(),
            [](const GatewayCall& a, const GatewayCall& b) { return a.id < b.id; });
  std::string out;
  for (const auto& c : calls) {
    // latency_ms stays in the in-memory snapshot only: the persisted log is
    // part of the reproducible run artifacts and must be byte-stable
    nlohmann::json j = {
        {"id", c.id},
        {"template", c.template_name},
        {"prompt", c.prompt},
        {"response", c.response},
        {"attempts", c.attempts},
    };
    out += j.dump();
    out += "\n";
  }
  return out;
}

}  // namespace synthsql
