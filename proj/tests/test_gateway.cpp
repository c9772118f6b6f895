#include <filesystem>
#include <memory>

#include "doctest.h"
#include "synthsql/errors.hpp"
#include "synthsql/gateway/extract.hpp"
#include "synthsql/gateway/gateway.hpp"
#include "synthsql/gateway/mock_provider.hpp"
#include "synthsql/gateway/prompt.hpp"
#include "synthsql/util.hpp"

using namespace synthsql;

namespace {

const char* kPromptsDir = SYNTHSQL_SOURCE_DIR "/prompts";

}  // namespace

TEST_CASE("placeholder discovery ignores JSON braces and uppercase") {
  auto t = PromptTemplate::from_body(
      "demo", "Input: {schema}\nExample: {\"key\": 1}\nAlso {NOT_ONE} and {attempt}.");
  CHECK(t.required == std::vector<std::string>{"attempt", "schema"});
  auto rendered = t.render({{"schema", "S"}, {"attempt", "1"}});
  CHECK(rendered.find("Input: S") != std::string::npos);
  CHECK(rendered.find("{\"key\": 1}") != std::string::npos);
  CHECK(rendered.find("{NOT_ONE}") != std::string::npos);
}

TEST_CASE("render rejects missing and unknown bindings") {
  auto t = PromptTemplate::from_body("demo", "{one} {two}");
  CHECK_THROWS_AS(t.render({{"one", "a"}}), MissingPlaceholder);
  CHECK_THROWS_AS(t.render({{"one", "a"}, {"two", "b"}, {"three", "c"}}), UnknownPlaceholder);
  CHECK(t.render({{"one", "a"}, {"two", "b"}}) == "a b");
}

TEST_CASE("shipped prompt library carries all ten templates") {
  auto lib = PromptLibrary::load(kPromptsDir);
  for (const auto& name : PromptLibrary::template_names()) {
    const auto& t = lib.get(name);
    CHECK(t.name == name);
    CHECK_FALSE(t.required.empty());
  }
  CHECK(PromptLibrary::template_names().size() == 10);
  CHECK_THROWS_AS(lib.get("no_such_template"), ConfigError);
  CHECK_THROWS_AS(PromptLibrary::load("/nonexistent/prompt/dir"), IoError);
}

TEST_CASE("gateway call ids are content-addressed with occurrence suffixes") {
  auto lib = PromptLibrary::load(kPromptsDir);
  Gateway gw(lib, make_mock_provider(), RetryPolicy{3, 0});
  std::map<std::string, std::string> bindings = {{"question", "How many users?"},
                                                 {"sql", "SELECT COUNT(*) FROM users"},
                                                 {"attempt", "1"}};
  std::string id1, id2, id3;
  gw.call("semantic_validation", bindings, &id1);
  gw.call("semantic_validation", bindings, &id2);
  auto other = bindings;
  other["attempt"] = "2";
  gw.call("semantic_validation", other, &id3);

  CHECK(id1.substr(id1.size() - 2) == "-0");
  CHECK(id2.substr(id2.size() - 2) == "-1");
  CHECK(id1.substr(0, 16) == id2.substr(0, 16));
  CHECK(id3.substr(0, 16) != id1.substr(0, 16));
  CHECK(id3.substr(id3.size() - 2) == "-0");
}

TEST_CASE("mock provider is deterministic and the dump log is byte-stable") {
  auto lib = PromptLibrary::load(kPromptsDir);
  std::map<std::string, std::string> bindings = {{"question", "List every order"},
                                                 {"sql", "SELECT * FROM orders"},
                                                 {"attempt", "1"}};
  Gateway a(lib, make_mock_provider(), RetryPolicy{3, 0});
  Gateway b(lib, make_mock_provider(), RetryPolicy{3, 0});
  CHECK(a.call("quality_judge", bindings) == b.call("quality_judge", bindings));
  a.call("semantic_validation", bindings);
  b.call("semantic_validation", bindings);
  CHECK(a.dump_log() == b.dump_log());
  // persisted log lines never include wall-clock fields
  CHECK(a.dump_log().find("latency_ms") == std::string::npos);
}

TEST_CASE("fixture files take precedence over the synthesizer") {
  auto dir = std::filesystem::temp_directory_path() / "synthsql_fixture_test";
  std::filesystem::create_directories(dir);
  auto lib = PromptLibrary::load(kPromptsDir);
  std::map<std::string, std::string> bindings = {{"question", "q"}, {"sql", "SELECT 1"},
                                                 {"attempt", "1"}};
  std::string prompt = lib.get("quality_judge").render(bindings);
  std::string fixture = "quality_judge-" + hex64(fnv1a(prompt)) + ".txt";
  atomic_write((dir / fixture).string(), "CANNED RESPONSE");

  Gateway gw(lib, make_mock_provider(dir.string()), RetryPolicy{3, 0});
  CHECK(gw.call("quality_judge", bindings) == "CANNED RESPONSE");

  // different bindings fall through to the synthesizer
  auto other = bindings;
  other["attempt"] = "2";
  CHECK(gw.call("quality_judge", other) != "CANNED RESPONSE");
  std::filesystem::remove_all(dir);
}

namespace {

class FlakyProvider : public Provider {
 public:
  explicit FlakyProvider(int failures) : failures_(failures) {}
  std::string id() const override { return "flaky"; }
  std::string complete(const std::string&, const std::string&) override {
    if (failures_-- > 0) throw TransientProviderError("synthetic outage");
    return "ok";
  }

 private:
  int failures_;
};

}  // namespace

TEST_CASE("transient failures are retried up to the policy limit") {
  auto lib = PromptLibrary::load(kPromptsDir);
  std::map<std::string, std::string> bindings = {{"question", "q"}, {"sql", "s"},
                                                 {"attempt", "1"}};
  Gateway ok(lib, std::make_shared<FlakyProvider>(2), RetryPolicy{3, 0});
  CHECK(ok.call("semantic_validation", bindings) == "ok");
  CHECK(ok.log_snapshot().at(0).attempts == 3);

  Gateway exhausted(lib, std::make_shared<FlakyProvider>(5), RetryPolicy{3, 0});
  CHECK_THROWS_AS(exhausted.call("semantic_validation", bindings), GatewayError);
  CHECK(exhausted.log_snapshot().empty());
}

TEST_CASE("extract_structured finds objects in prose and fences") {
  ExpectedShape obj;
  obj.required_fields = {"verdict"};
  auto clean = extract_structured(R"({"verdict": "pass"})", obj);
  CHECK(clean["verdict"] == "pass");

  auto prose = extract_structured(
      "Sure! Here is my answer:\n```json\n{\"verdict\": \"fail\", \"why\": \"x > y\"}\n```\nDone.",
      obj);
  CHECK(prose["verdict"] == "fail");

  // nested braces inside strings do not break the scan
  auto tricky = extract_structured(R"(note {not json} then {"verdict": "a{b}c \" d"})", obj);
  CHECK(tricky["verdict"] == "a{b}c \" d");
}

TEST_CASE("extract_structured validates shape") {
  ExpectedShape obj;
  obj.required_fields = {"verdict"};
  CHECK_THROWS_AS(extract_structured("no json here at all", obj), ExtractionError);
  CHECK_THROWS_AS(extract_structured(R"({"other": 1})", obj), ExtractionError);

  ExpectedShape list;
  list.is_list = true;
  auto arr = extract_structured("items: [1, 2, 3] trailing", list);
  CHECK(arr.size() == 3);
  CHECK_THROWS_AS(extract_structured(R"({"not": "a list"})", list), ExtractionError);
}
