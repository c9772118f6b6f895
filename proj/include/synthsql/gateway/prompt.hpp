#pragma once

#include <map>
#include <string>
#include <vector>

namespace synthsql {

struct PromptTemplate {
  std::string name;
  std::string body;
  std::vector<std::string> required;  // placeholder names found in the body

  static PromptTemplate from_body(const std::string& name, const std::string& body);
  // Throws MissingPlaceholder / UnknownPlaceholder.
  std::string render(const std::map<std::string, std::string>& bindings) const;
};

// Loads <name>.txt files from a prompts directory. All ten pipeline
// templates must be present.
class PromptLibrary {
 public:
  static const std::vector<std::string>& template_names();
  static PromptLibrary load(const std::string& dir);

  const PromptTemplate& get(const std::string& name) const;

 private:
  std::map<std::string, PromptTemplate> templates_;
};

}  // namespace synthsql
