#include "spa/mgr/plan.hpp"

#include <map>
#include <set>

namespace spa::mgr {

namespace {

class Planner {
 public:
  Planner(const std::vector<AnalysisConfig>& registry,
          const std::vector<Request>& requested)
      : requested_(requested) {
    for (const AnalysisConfig& c : registry) byId_[c.id] = &c;
  }

  Plan run() {
    for (const Request& r : requested_) {
      if (!byId_.count(r.id))
        throw PlanError("unknown analysis id '" + r.id + "'");
      for (const auto& [key, value] : r.overrides) {
        if (!byId_.at(r.id)->options.count(key))
          throw PlanError("unknown option '" + key + "' for analysis '" +
                          r.id + "'");
      }
    }
    for (const Request& r : requested_) visit(r.id);
    Plan plan;
    for (const std::string& id : order_)
      plan.steps.push_back({id, effectiveOptions(id)});
    return plan;
  }

 private:
  // Defaults overridden by every matching request; later requests win.
  OptionMap effectiveOptions(const std::string& id) const {
    OptionMap options = byId_.at(id)->options;
    for (const Request& r : requested_) {
      if (r.id != id) continue;
      for (const auto& [key, value] : r.overrides) options[key] = value;
    }
    return options;
  }

  void visit(const std::string& id) {
    if (done_.count(id)) return;
    if (!onStack_.insert(id).second) {
      std::string cycle;
      for (const std::string& s : stack_) cycle += s + " -> ";
      throw PlanError("dependency cycle: " + cycle + id);
    }
    stack_.push_back(id);
    const AnalysisConfig& config = *byId_.at(id);
    OptionMap options = effectiveOptions(id);
    for (const Requirement& req : config.requires_) {
      bool active = true;
      if (req.condition) {
        try {
          active = req.condition->evaluate(options);
        } catch (const RegistryError& e) {
          throw PlanError(std::string(e.what()) + " (while planning '" + id +
                          "')");
        }
      }
      if (active) visit(req.id);
    }
    stack_.pop_back();
    onStack_.erase(id);
    done_.insert(id);
    order_.push_back(id);
  }

  const std::vector<Request>& requested_;
  std::map<std::string, const AnalysisConfig*> byId_;
  std::set<std::string> done_;
  std::set<std::string> onStack_;
  std::vector<std::string> stack_;
  std::vector<std::string> order_;
};

}  // namespace

Plan makePlan(const std::vector<AnalysisConfig>& registry,
              const std::vector<Request>& requested) {
  return Planner(registry, requested).run();
}

}  // namespace spa::mgr
