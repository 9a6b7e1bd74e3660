// The pointer flow graph: every node is a real pointer, every edge says
// "objects flowing into the source also flow into the target", optionally
// restricted by a type filter.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spa/pta/pointer.hpp"

namespace spa::pta {

struct PFGEdge {
  Pointer* target;
  std::optional<ir::Type> filter;
};

class PointerFlowGraph {
 public:
  // False when the same (source, target, filter) edge already exists.
  bool addEdge(Pointer* source, Pointer* target,
               std::optional<ir::Type> filter = std::nullopt) {
    std::string filterKey = filter ? filter->toString() : "";
    if (!dedup_.insert({source, target, filterKey}).second) return false;
    succ_[source].push_back(PFGEdge{target, std::move(filter)});
    ++edgeCount_;
    return true;
  }

  const std::vector<PFGEdge>& succsOf(const Pointer* p) const {
    static const std::vector<PFGEdge> kNone;
    auto it = succ_.find(p);
    return it == succ_.end() ? kNone : it->second;
  }

  size_t edgeCount() const { return edgeCount_; }

  bool hasPath(const Pointer* from, const Pointer* to) const {
    if (from == to) return true;
    std::set<const Pointer*> seen{from};
    std::vector<const Pointer*> work{from};
    while (!work.empty()) {
      const Pointer* p = work.back();
      work.pop_back();
      for (const PFGEdge& e : succsOf(p)) {
        if (e.target == to) return true;
        if (seen.insert(e.target).second) work.push_back(e.target);
      }
    }
    return false;
  }

  template <typename F>
  void forEachEdge(F f) const {
    for (const auto& [source, edges] : succ_) {
      for (const PFGEdge& e : edges) f(source, e);
    }
  }

 private:
  std::map<const Pointer*, std::vector<PFGEdge>> succ_;
  std::set<std::tuple<const Pointer*, const Pointer*, std::string>> dedup_;
  size_t edgeCount_ = 0;
};

}  // namespace spa::pta
