#include "synthsql/gateway/prompt.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

namespace {

// Placeholders look like {name} where name is [a-z_]+. Anything else,
// including JSON braces in examples, is left alone.
std::vector<std::string> find_placeholders(const std::string& body) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '{') continue;
    std::size_t j = i + 1;
    std::string name;
    while (j < body.size() && (std::islower(static_cast<unsigned char>(body[j])) || body[j] == '_'))
      name.push_back(body[j++]);
    if (j < body.size() && body[j] == '}' && !name.empty()) names.insert(name);
  }
  return {names.begin(), names.end()};
}

}  // namespace

PromptTemplate PromptTemplate::from_body(const std::string& name, const std::string& body) {
  PromptTemplate t;
  t.name = name;
  t.body = body;
  t.required = find_placeholders(body);
  return t;
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& bindings) const {
  for (const auto& [key, value] : bindings) {
    (void)value;
    if (std::find(required.begin(), required.end(), key) == required.end())
      throw UnknownPlaceholder("template '" + name + "' declares no placeholder '" + key + "'");
  }
  for (const auto& key : required) {
    if (!bindings.count(key))
      throw MissingPlaceholder("template '" + name + "' requires placeholder '" + key + "'");
  }
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '{') {
      std::size_t j = i + 1;
      std::string key;
      while (j < body.size() &&
             (std::islower(static_cast<unsigned char>(body[j])) || body[j] == '_'))
        key.push_back(body[j++]);
      if (j < body.size() && body[j] == '}' && bindings.count(key)) {
        out += bindings.at(key);
        i = j;
        continue;
      }
    }
    out.push_back(body[i]);
  }
  return out;
}

const std::vector<std::string>& PromptLibrary::template_names() {
  static const std::vector<std::string> names = {
      "database_generation", "database_enhancement", "question_generation",
      "knowledge_generation", "sql_generation",       "seed_modification",
      "seed_repair",          "intent_classification", "semantic_validation",
      "quality_judge",
  };
  return names;
}

PromptLibrary PromptLibrary::load(const std::string& dir) {
  PromptLibrary lib;
  for (const auto& name : template_names()) {
    std::string path = (std::filesystem::path(dir) / (name + ".txt")).string();
    lib.templates_[name] = PromptTemplate::from_body(name, read_file(path));
  }
  return lib;
}

const PromptTemplate& PromptLibrary::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw ConfigError("unknown prompt template: " + name);
  return it->second;
}

}  // namespace synthsql
