#include "spa/dataflow/livevars.hpp"

#include <sstream>

#include "spa/ir/printer.hpp"

namespace spa::dataflow {

std::string LiveFact::toString() const {
  std::string out = "{";
  bool first = true;
  for (const ir::Var* v : vars) {
    if (!first) out += ", ";
    first = false;
    out += v->name;
  }
  return out + "}";
}

std::string dumpResult(const cfg::CFG& cfg,
                       const DataflowResult<LiveFact>& result) {
  std::ostringstream out;
  for (const ir::Stmt& s : cfg.body().stmts()) {
    out << s.index << " | " << ir::stmtToString(s)
        << " | IN: " << result.inFactOf(s).toString()
        << " | OUT: " << result.outFactOf(s).toString() << "\n";
  }
  return out.str();
}

}  // namespace spa::dataflow
