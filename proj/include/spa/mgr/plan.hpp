// Dependency resolution: the requested analyses plus the closure of their
// active conditional dependencies, topologically ordered.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "spa/mgr/registry.hpp"

namespace spa::mgr {

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlanStep {
  std::string id;
  OptionMap options;  // effective: defaults overridden by the request
};

struct Plan {
  std::vector<PlanStep> steps;

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const PlanStep& s : steps) out.push_back(s.id);
    return out;
  }
};

struct Request {
  std::string id;
  OptionMap overrides;
};

// A dependency is active iff its condition evaluates true against the
// dependent's effective options. Dependencies run with their own defaults
// unless separately requested with overrides. Cycles among active
// dependencies and unknown ids/option keys are errors.
Plan makePlan(const std::vector<AnalysisConfig>& registry,
              const std::vector<Request>& requested);

}  // namespace spa::mgr
