#include "spa/mgr/registry.hpp"

#include <set>
#include <sstream>

namespace spa::mgr {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a trailing comment: '#' at line start or preceded by whitespace.
std::string stripComment(const std::string& line) {
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t'))
      return line.substr(0, i);
  }
  return line;
}

size_t indentOf(const std::string& line) {
  size_t i = 0;
  while (i < line.size() && line[i] == ' ') ++i;
  return i;
}

std::vector<std::string> splitList(const std::string& inner) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char c : inner) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!trim(current).empty()) out.push_back(trim(current));
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw RegistryError("registry line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Condition Condition::parse(const std::string& text) {
  Condition cond;
  std::stringstream clauses(text);
  std::string clauseText;
  while (std::getline(clauses, clauseText, '&')) {
    clauseText = trim(clauseText);
    size_t eq = clauseText.find('=');
    if (eq == std::string::npos)
      throw RegistryError("condition clause '" + clauseText +
                          "' is missing '='");
    Clause clause;
    clause.key = trim(clauseText.substr(0, eq));
    std::stringstream values(clauseText.substr(eq + 1));
    std::string value;
    while (std::getline(values, value, '|')) {
      clause.acceptedValues.push_back(trim(value));
    }
    if (clause.key.empty() || clause.acceptedValues.empty())
      throw RegistryError("malformed condition clause '" + clauseText + "'");
    cond.clauses_.push_back(std::move(clause));
  }
  if (cond.clauses_.empty())
    throw RegistryError("empty condition");
  return cond;
}

bool Condition::evaluate(const OptionMap& options) const {
  for (const Clause& clause : clauses_) {
    auto it = options.find(clause.key);
    if (it == options.end())
      throw RegistryError("condition references unknown option '" +
                          clause.key + "'");
    bool matched = false;
    for (const std::string& v : clause.acceptedValues) matched |= v == it->second;
    if (!matched) return false;
  }
  return true;
}

std::string Condition::toString() const {
  std::string out;
  for (size_t i = 0; i < clauses_.size(); ++i) {
    if (i) out += " & ";
    out += clauses_[i].key + "=";
    for (size_t j = 0; j < clauses_[i].acceptedValues.size(); ++j) {
      if (j) out += "|";
      out += clauses_[i].acceptedValues[j];
    }
  }
  return out;
}

std::vector<AnalysisConfig> parseRegistry(const std::string& text) {
  std::vector<AnalysisConfig> configs;
  std::istringstream in(text);
  std::string rawLine;
  int lineNo = 0;
  AnalysisConfig* current = nullptr;
  bool inOptions = false;
  size_t optionsIndent = 0;

  while (std::getline(in, rawLine)) {
    ++lineNo;
    std::string line = stripComment(rawLine);
    if (trim(line).empty()) continue;
    size_t indent = indentOf(line);
    std::string body = trim(line);

    if (body.rfind("- ", 0) == 0) {
      if (indent != 0) fail(lineNo, "entries must start at column 0");
      configs.emplace_back();
      current = &configs.back();
      inOptions = false;
      body = trim(body.substr(2));
      if (body.empty()) fail(lineNo, "expected 'key: value' after '-'");
    } else if (!current) {
      fail(lineNo, "expected an entry starting with '- '");
    }

    size_t colon = body.find(':');
    if (colon == std::string::npos) fail(lineNo, "expected 'key: value'");
    std::string key = trim(body.substr(0, colon));
    std::string value = trim(body.substr(colon + 1));

    if (inOptions && indent > optionsIndent) {
      current->options[key] = value;
      continue;
    }
    inOptions = false;

    if (key == "description") {
      current->description = value;
    } else if (key == "analysisClass") {
      current->analysisClass = value;
    } else if (key == "id") {
      if (value.empty()) fail(lineNo, "empty id");
      current->id = value;
    } else if (key == "requires") {
      if (value.empty()) fail(lineNo, "requires must be a [ ... ] list");
      if (value.front() != '[' || value.back() != ']')
        fail(lineNo, "requires must be a [ ... ] list");
      for (const std::string& item :
           splitList(value.substr(1, value.size() - 2))) {
        Requirement req;
        size_t open = item.find('(');
        if (open == std::string::npos) {
          req.id = trim(item);
        } else {
          if (item.back() != ')') fail(lineNo, "unterminated condition");
          req.id = trim(item.substr(0, open));
          try {
            req.condition = Condition::parse(
                item.substr(open + 1, item.size() - open - 2));
          } catch (const RegistryError& e) {
            fail(lineNo, e.what());
          }
        }
        if (req.id.empty()) fail(lineNo, "empty requirement id");
        current->requires_.push_back(std::move(req));
      }
    } else if (key == "options") {
      if (!value.empty()) fail(lineNo, "options must be a nested block");
      inOptions = true;
      optionsIndent = indent;
    } else {
      fail(lineNo, "unknown field '" + key + "'");
    }
  }

  // Validation: unique ids, required ids exist, condition keys are declared
  // options of the dependent.
  std::set<std::string> ids;
  for (const AnalysisConfig& c : configs) {
    if (c.id.empty()) throw RegistryError("entry without an id");
    if (!ids.insert(c.id).second)
      throw RegistryError("duplicate analysis id '" + c.id + "'");
  }
  for (const AnalysisConfig& c : configs) {
    for (const Requirement& r : c.requires_) {
      if (!ids.count(r.id))
        throw RegistryError("analysis '" + c.id + "' requires unknown id '" +
                            r.id + "'");
      if (r.condition) {
        for (const auto& clause : r.condition->clauses()) {
          if (!c.options.count(clause.key))
            throw RegistryError("analysis '" + c.id +
                                "': condition key '" + clause.key +
                                "' is not one of its options");
        }
      }
    }
  }
  return configs;
}

const std::string& defaultRegistryText() {
  static const std::string text = R"(
- description: intraprocedural throw analysis
  analysisClass: spa.cfg.ThrowAnalysis
  id: throw
  options:

- description: intraprocedural control-flow graph
  analysisClass: spa.cfg.CFGBuilder
  id: cfg
  requires: [ throw(exception=explicit|all) ]
  options: # default values
    exception: explicit # | null | all
    dump: false # dump .dot files

- description: constant propagation
  analysisClass: spa.dataflow.ConstantPropagation
  id: constprop
  requires: [ cfg ]
  options:
    edge-refine: false
    dump: false

- description: live variables analysis
  analysisClass: spa.dataflow.LiveVariables
  id: livevar
  requires: [ cfg ]
  options:
    dump: false

- description: whole-program pointer analysis
  analysisClass: spa.pta.Solver
  id: pta
  options:
    cs: ci # | k-call | k-obj | k-type
    heap: 1
    merge-types:
    type-filter: true
    timer: false
    throw-plugin: false
    dump: false

- description: taint analysis over the pointer-analysis plugin system
  analysisClass: spa.plugin.TaintPlugin
  id: taint
  options:
    config:
    cs: ci
    heap: 1
    dump: false

- description: class member summary
  analysisClass: spa.mgr.MemberSummary
  id: members
  options:
)";
  return text;
}

}  // namespace spa::mgr
