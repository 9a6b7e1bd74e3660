// Abstract heap objects in four categories — allocation-site objects,
// interned constants, per-type merged summaries, and mocked objects with no
// source allocation — plus the manager that owns and interns them all.
#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "spa/ir/program.hpp"

namespace spa::pta {

// "C.m()/3" — the canonical name of a statement within its method.
std::string siteName(const ir::Stmt* stmt, const ir::MethodDecl* method);

class Obj {
 public:
  enum class Kind { New, Constant, Merged, Mock };

  Kind kind() const { return kind_; }
  bool isNew() const { return kind_ == Kind::New; }
  bool isConstant() const { return kind_ == Kind::Constant; }
  bool isMerged() const { return kind_ == Kind::Merged; }
  bool isMock() const { return kind_ == Kind::Mock; }

  const ir::Type& type() const { return type_; }

  // New objects only.
  const ir::Stmt* allocSite() const { return site_; }
  const ir::MethodDecl* container() const { return container_; }

  // Constant objects only.
  const ir::Literal& constantValue() const { return value_; }

  // Merged objects only: the objects this summary stands for.
  const std::vector<const Obj*>& origins() const { return origins_; }

  // Mock objects only.
  const std::string& descriptor() const { return descriptor_; }
  const ir::Stmt* mockSource() const { return site_; }

  // Canonical stable name, e.g. "new Box@Box.main()/0", "const:String:\"a\"",
  // "merged:T", "mock:TaintObj@Main.main()/3".
  const std::string& name() const { return name_; }

 private:
  friend class HeapManager;
  Obj() = default;

  Kind kind_ = Kind::New;
  ir::Type type_;
  const ir::Stmt* site_ = nullptr;             // alloc site or mock source
  const ir::MethodDecl* container_ = nullptr;  // method holding site_
  ir::Literal value_;
  std::string descriptor_;
  std::vector<const Obj*> origins_;
  std::string name_;
};

// Owns every Obj of one analysis run. News are unique per allocation site,
// constants interned per (type, value), merged objects per type, mocks per
// (descriptor, source site).
class HeapManager {
 public:
  explicit HeapManager(std::set<std::string> mergeTypeNames = {})
      : mergeTypes_(std::move(mergeTypeNames)) {}

  bool isMergedType(const std::string& typeName) const {
    return mergeTypes_.count(typeName) > 0;
  }

  // The object a `new` statement allocates: the per-site object, or the
  // per-type merged summary (with the site object recorded as an origin)
  // when the type is configured for merging.
  const Obj* objForAlloc(const ir::Stmt& newStmt,
                         const ir::MethodDecl& container);

  const Obj* constantObj(const ir::Type& type, const ir::Literal& value);
  const Obj* mergedObj(const ir::Type& type);
  const Obj* mockObj(const std::string& descriptor, const ir::Stmt* source,
                     const ir::MethodDecl* sourceMethod, const ir::Type& type);

 private:
  Obj* fresh() {
    storage_.emplace_back(Obj());
    return &storage_.back();
  }

  std::set<std::string> mergeTypes_;
  std::deque<Obj> storage_;
  std::map<const ir::Stmt*, const Obj*> newObjs_;
  std::map<std::string, const Obj*> constantObjs_;  // keyed by name
  std::map<std::string, Obj*> mergedObjs_;          // keyed by type name
  std::map<std::pair<std::string, const ir::Stmt*>, const Obj*> mockObjs_;
};

}  // namespace spa::pta
