#include "spa/plugin/taint.hpp"

#include <algorithm>
#include <sstream>

namespace spa::plugin {

namespace {

bool isTaintObj(const pta::CSObj* o) {
  return o->obj()->isMock() &&
         o->obj()->descriptor() == TaintPlugin::kDescriptor;
}

// "<class>.<method>(<descriptor>)" -> resolved declaration.
const ir::MethodDecl* resolveSignature(const std::string& text,
                                       const ir::Program& program) {
  size_t open = text.find('(');
  size_t dot = text.rfind('.', open);
  if (open == std::string::npos || dot == std::string::npos ||
      text.back() != ')') {
    throw TaintConfigError("malformed method signature '" + text + "'");
  }
  std::string className = text.substr(0, dot);
  std::string methodName = text.substr(dot + 1, open - dot - 1);
  std::string descriptor = text.substr(open + 1, text.size() - open - 2);

  const ir::ClassDecl* cls = program.classByName(className);
  if (!cls) throw TaintConfigError("unknown class '" + className + "'");
  const ir::MethodDecl* method = cls->findMethod(methodName);
  if (!method)
    throw TaintConfigError("unknown method '" + className + "." + methodName +
                           "'");
  std::string expected;
  for (size_t i = 0; i < method->paramTypes().size(); ++i) {
    if (i) expected += ",";
    expected += method->paramTypes()[i].toString();
  }
  std::string got = descriptor;
  got.erase(std::remove(got.begin(), got.end(), ' '), got.end());
  if (got != expected)
    throw TaintConfigError("descriptor mismatch for '" + text + "': expected (" +
                           expected + ")");
  return method;
}

TaintVarSpec parseVarSpec(std::istringstream& in, const std::string& prefix) {
  std::string token;
  in >> token;
  if (token.rfind(prefix, 0) != 0)
    throw TaintConfigError("expected '" + prefix + "...', got '" + token + "'");
  std::string value = token.substr(prefix.size());
  TaintVarSpec spec;
  if (value == "base") {
    spec.role = TaintVarSpec::Role::Base;
  } else if (value == "result") {
    spec.role = TaintVarSpec::Role::Result;
  } else if (value == "param") {
    spec.role = TaintVarSpec::Role::Param;
    if (!(in >> spec.paramIndex))
      throw TaintConfigError("expected parameter index after '" + prefix +
                             "param'");
  } else {
    throw TaintConfigError("bad variable spec '" + token + "'");
  }
  return spec;
}

void checkParamIndex(const ir::MethodDecl* m, int index,
                     const std::string& where) {
  if (index < 0 || index >= static_cast<int>(m->paramTypes().size()))
    throw TaintConfigError("parameter index " + std::to_string(index) +
                           " out of range for " + m->signature() + " in " +
                           where);
}

}  // namespace

TaintConfig TaintConfig::parse(const std::string& text,
                               const ir::Program& program) {
  TaintConfig config;
  std::istringstream lines(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(lines, line)) {
    ++lineNo;
    if (size_t hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    std::istringstream in(line);
    std::string kind;
    if (!(in >> kind)) continue;
    std::string sig;
    if (!(in >> sig))
      throw TaintConfigError("line " + std::to_string(lineNo) +
                             ": missing method signature");
    const ir::MethodDecl* method = resolveSignature(sig, program);
    if (kind == "source") {
      std::string arrow, target;
      in >> arrow >> target;
      if (arrow != "->" || target != "result")
        throw TaintConfigError("line " + std::to_string(lineNo) +
                               ": expected '-> result'");
      config.sources.push_back({method, true});
    } else if (kind == "transfer") {
      TaintVarSpec from = parseVarSpec(in, "from:");
      TaintVarSpec to = parseVarSpec(in, "to:");
      if (from.role == TaintVarSpec::Role::Param)
        checkParamIndex(method, from.paramIndex, "transfer");
      if (to.role == TaintVarSpec::Role::Param)
        throw TaintConfigError("transfer target must be base or result");
      config.transfers.push_back({method, from, to});
    } else if (kind == "sink") {
      std::string param;
      in >> param;
      if (param.rfind("param:", 0) != 0)
        throw TaintConfigError("line " + std::to_string(lineNo) +
                               ": expected 'param:N'");
      int index = std::stoi(param.substr(6));
      checkParamIndex(method, index, "sink");
      config.sinks.push_back({method, index});
    } else {
      throw TaintConfigError("line " + std::to_string(lineNo) +
                             ": unknown rule kind '" + kind + "'");
    }
  }
  return config;
}

pta::CSVar* TaintPlugin::resolveVar(const pta::CSCallSite* cs,
                                    const TaintVarSpec& spec) {
  const ir::Invoke* inv = cs->invoke();
  const ir::Var* v = nullptr;
  switch (spec.role) {
    case TaintVarSpec::Role::Base: v = inv->base; break;
    case TaintVarSpec::Role::Result: v = inv->result; break;
    case TaintVarSpec::Role::Param:
      v = spec.paramIndex < static_cast<int>(inv->args.size())
              ? inv->args[spec.paramIndex]
              : nullptr;
      break;
  }
  return v ? solver_->cs().csVar(cs->context, v) : nullptr;
}

void TaintPlugin::onNewCallEdge(const pta::CallEdge& edge) {
  const ir::MethodDecl* target = edge.callee->method;

  for (const auto& source : config_.sources) {
    if (source.method != target || !source.taintsResult) continue;
    pta::CSVar* result = resolveVar(edge.callSite, {});
    // A call that discards its result leaves the taint unobservable.
    if (!result) continue;
    const pta::Obj* mock = solver_->heap().mockObj(
        kDescriptor, edge.callSite->site, edge.callSite->container,
        target->returnType());
    const pta::CSObj* cso = solver_->cs().csObj(
        solver_->contexts().empty(), mock, solver_->contexts().empty());
    solver_->addPointsTo(result, cso);
  }

  for (const auto& transfer : config_.transfers) {
    if (transfer.method != target) continue;
    pta::CSVar* from = resolveVar(edge.callSite, transfer.from);
    pta::CSVar* to = resolveVar(edge.callSite, transfer.to);
    if (!from || !to) continue;
    transferTaint(solver_->getPointsToSet(from), to);
    if (transferVarSet_.insert({from, to}).second)
      transferVars_.emplace_back(from, to);
  }
}

void TaintPlugin::onNewPointsToSet(pta::CSVar* v,
                                   const pta::PointsToSet& delta) {
  for (const auto& [from, to] : transferVars_) {
    if (from == v) transferTaint(delta, to);
  }
}

void TaintPlugin::transferTaint(const pta::PointsToSet& objs, pta::CSVar* to) {
  objs.forEach([&](const pta::CSObj* o) {
    if (isTaintObj(o)) solver_->addPointsTo(to, o);
  });
}

void TaintPlugin::onFinish() {
  std::set<std::tuple<const ir::Stmt*, const ir::Stmt*, int, const pta::Obj*>>
      seen;
  for (const auto& sink : config_.sinks) {
    for (const pta::CSCallSite* cs : solver_->getCallersOf(sink.method)) {
      const ir::Invoke* inv = cs->invoke();
      if (sink.paramIndex >= static_cast<int>(inv->args.size())) continue;
      pta::CSVar* arg =
          solver_->cs().csVar(cs->context, inv->args[sink.paramIndex]);
      solver_->getPointsToSet(arg).forEach([&](const pta::CSObj* o) {
        if (!isTaintObj(o)) return;
        if (!seen.insert({o->obj()->mockSource(), cs->site, sink.paramIndex,
                          o->obj()})
                 .second) {
          return;
        }
        flows_.push_back(TaintFlow{o->obj()->mockSource(),
                                   o->obj()->container(), cs->site,
                                   cs->container, sink.paramIndex, o->obj()});
      });
    }
  }
  std::sort(flows_.begin(), flows_.end(),
            [](const TaintFlow& a, const TaintFlow& b) {
              auto key = [](const TaintFlow& f) {
                return std::make_tuple(
                    pta::siteName(f.sinkSite, f.sinkMethod),
                    pta::siteName(f.sourceSite, f.sourceMethod), f.paramIndex,
                    f.taintObj->name());
              };
              return key(a) < key(b);
            });
}

std::string TaintFlow::toString() const {
  auto site = [](const ir::Stmt* s, const ir::MethodDecl* m) {
    std::string owner = m ? m->owner().name() + "." + m->name() : "?";
    return owner + "@" + (s ? std::to_string(s->index) : "?");
  };
  return "LEAK source=" + site(sourceSite, sourceMethod) +
         " sink=" + site(sinkSite, sinkMethod) +
         " param=" + std::to_string(paramIndex);
}

std::string TaintPlugin::report() const {
  std::string out;
  for (const TaintFlow& f : flows_) out += f.toString() + "\n";
  return out;
}

}  // namespace spa::plugin
