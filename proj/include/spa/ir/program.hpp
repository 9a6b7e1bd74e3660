// The parsed program model: classes, methods, method bodies. Immutable after
// parse; analysis results are attached through the ResultHolder annotation
// slots without touching the structure itself.
#pragma once

#include <any>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spa/ir/stmt.hpp"
#include "spa/ir/type.hpp"

namespace spa::ir {

class Hierarchy;
class Program;

class MissingResultError : public std::runtime_error {
 public:
  MissingResultError(const std::string& id, const std::string& level)
      : std::runtime_error("no result stored for analysis '" + id +
                           "' at level '" + level + "'") {}
};

// Uniform per-level result storage: the one getResult(id) accessor shared by
// method bodies, classes, and the program. Values are held as shared_ptr<T>
// inside std::any. Mutation happens on the driver's single thread only.
class ResultHolder {
 public:
  explicit ResultHolder(const char* level) : level_(level) {}

  bool hasResult(const std::string& id) const {
    return results_.find(id) != results_.end();
  }

  template <typename T>
  const T& getResult(const std::string& id) const {
    auto it = results_.find(id);
    if (it == results_.end()) throw MissingResultError(id, level_);
    auto* ptr = std::any_cast<std::shared_ptr<T>>(&it->second);
    if (!ptr || !*ptr) throw MissingResultError(id, level_);
    return **ptr;
  }

  template <typename T>
  void setResult(const std::string& id, std::shared_ptr<T> value) const {
    results_[id] = std::move(value);
  }

  // The std::any must hold a shared_ptr<T> for getResult<T> to find it.
  void setResultAny(const std::string& id, std::any value) const {
    results_[id] = std::move(value);
  }

  const char* resultLevel() const { return level_; }

 private:
  const char* level_;
  mutable std::map<std::string, std::any> results_;
};

class MethodBody : public ResultHolder {
 public:
  struct Handler {
    int tryStart;      // first protected statement index
    int tryEnd;        // exclusive
    int handlerIndex;  // index of the Catch statement
    Type catchType;
  };

  // Statements of each kind in which a variable plays the pointer-relevant
  // role, precomputed in statement order.
  struct RelevantStmts {
    std::vector<const Stmt*> fieldLoads;    // v is the loaded base
    std::vector<const Stmt*> fieldStores;   // v is the stored-into base
    std::vector<const Stmt*> arrayLoads;
    std::vector<const Stmt*> arrayStores;
    std::vector<const Stmt*> invokes;       // v is the receiver
    std::vector<const Stmt*> copiesFrom;    // v is the copied source
  };

  MethodBody() : ResultHolder("method") {}
  MethodBody(const MethodBody&) = delete;
  MethodBody& operator=(const MethodBody&) = delete;

  const MethodDecl& method() const { return *method_; }
  const std::vector<const Var*>& params() const { return params_; }
  const Var* thisVar() const { return thisVar_; }
  // All variables of the body, including this and parameters.
  const std::vector<const Var*>& vars() const { return vars_; }
  const std::vector<Stmt>& stmts() const { return stmts_; }
  const std::vector<Handler>& exceptionTable() const { return handlers_; }

  const RelevantStmts& relevantStmts(const Var* v) const {
    return relevant_.at(v->index);
  }

  // Handlers covering a statement, innermost (smallest try range) first,
  // ties broken by table order.
  std::vector<Handler> handlersFor(int stmtIndex) const;

 private:
  friend class ProgramBuilder;

  const MethodDecl* method_ = nullptr;
  std::deque<Var> varStorage_;
  std::vector<const Var*> params_;
  const Var* thisVar_ = nullptr;
  std::vector<const Var*> vars_;
  std::vector<Stmt> stmts_;
  std::vector<Handler> handlers_;
  std::vector<RelevantStmts> relevant_;  // indexed by Var::index
};

class MethodDecl {
 public:
  MethodDecl() = default;
  MethodDecl(const MethodDecl&) = delete;
  MethodDecl& operator=(const MethodDecl&) = delete;

  const ClassDecl& owner() const { return *owner_; }
  const std::string& name() const { return name_; }
  bool isStatic() const { return isStatic_; }
  bool isAbstract() const { return isAbstract_; }
  const Type& returnType() const { return returnType_; }
  const std::vector<Type>& paramTypes() const { return paramTypes_; }
  const std::vector<std::string>& paramNames() const { return paramNames_; }
  const MethodBody* body() const { return body_.get(); }

  std::string signature() const;  // "C.m(T1,T2)"

 private:
  friend class ProgramBuilder;

  const ClassDecl* owner_ = nullptr;
  std::string name_;
  bool isStatic_ = false;
  bool isAbstract_ = false;
  Type returnType_;
  std::vector<Type> paramTypes_;
  std::vector<std::string> paramNames_;
  std::unique_ptr<MethodBody> body_;
};

class ClassDecl : public ResultHolder {
 public:
  ClassDecl() : ResultHolder("class") {}
  ClassDecl(const ClassDecl&) = delete;
  ClassDecl& operator=(const ClassDecl&) = delete;

  const std::string& name() const { return name_; }
  bool isInterface() const { return isInterface_; }
  bool isBuiltin() const { return isBuiltin_; }
  const ClassDecl* superclass() const { return superclass_; }
  const std::vector<const ClassDecl*>& interfaces() const { return interfaces_; }
  const std::vector<FieldDecl>& fields() const { return fields_; }
  const std::vector<std::unique_ptr<MethodDecl>>& methods() const {
    return methods_;
  }

  const FieldDecl* findField(std::string_view name) const;
  const MethodDecl* findMethod(std::string_view name) const;

 private:
  friend class ProgramBuilder;

  std::string name_;
  bool isInterface_ = false;
  bool isBuiltin_ = false;
  const ClassDecl* superclass_ = nullptr;
  std::vector<const ClassDecl*> interfaces_;
  std::vector<FieldDecl> fields_;
  std::vector<std::unique_ptr<MethodDecl>> methods_;
};

class Program : public ResultHolder {
 public:
  Program();
  ~Program();
  Program(const Program&) = delete;
  Program& operator=(const Program&) = delete;

  // Declaration order; built-in core classes first.
  const std::vector<const ClassDecl*>& classes() const { return classList_; }
  const ClassDecl* classByName(std::string_view name) const;
  // Every static method named "main", in declaration order.
  const std::vector<const MethodDecl*>& entryMethods() const {
    return entryMethods_;
  }
  const Hierarchy& hierarchy() const { return *hierarchy_; }

 private:
  friend class ProgramBuilder;

  std::vector<std::unique_ptr<ClassDecl>> classes_;
  std::vector<const ClassDecl*> classList_;
  std::map<std::string, const ClassDecl*, std::less<>> classByName_;
  std::vector<const MethodDecl*> entryMethods_;
  std::unique_ptr<Hierarchy> hierarchy_;
};

}  // namespace spa::ir
