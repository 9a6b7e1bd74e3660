// The analysis registry: a restricted indentation-based configuration format
// with one entry per analysis (description, analysisClass, id, requires,
// options) and conditional dependencies like `throw(exception=explicit|all)`.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spa::mgr {

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using OptionMap = std::map<std::string, std::string>;

// Conjunction of clauses; each clause accepts one of several values for a
// key, e.g. "exception=explicit|all & dump=true".
class Condition {
 public:
  struct Clause {
    std::string key;
    std::vector<std::string> acceptedValues;
  };

  static Condition parse(const std::string& text);

  // True when every clause's key maps to one of its accepted values.
  // Throws RegistryError for keys absent from the option map.
  bool evaluate(const OptionMap& options) const;

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::string toString() const;

 private:
  std::vector<Clause> clauses_;
};

struct Requirement {
  std::string id;
  std::optional<Condition> condition;
};

enum class AnalysisKind { Method, Class, Program, Unknown };

struct AnalysisConfig {
  std::string id;
  std::string description;
  std::string analysisClass;  // informational only
  AnalysisKind kind = AnalysisKind::Unknown;  // from the built-in table
  std::vector<Requirement> requires_;
  OptionMap options;
};

// Parses the registry text, validating id uniqueness, that required ids
// exist, and that condition keys appear in the dependent's options.
std::vector<AnalysisConfig> parseRegistry(const std::string& text);

// The registry shipped with the analyzer.
const std::string& defaultRegistryText();

}  // namespace spa::mgr
