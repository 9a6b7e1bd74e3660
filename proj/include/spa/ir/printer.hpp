// Canonical text form of the program model. Re-parsing printed output yields
// a structurally identical program.
#pragma once

#include <string>

#include "spa/ir/program.hpp"

namespace spa::ir {

// One statement without label or trailing semicolon, e.g. "x = y.f".
std::string stmtToString(const Stmt& s);

std::string printMethod(const MethodDecl& m);
std::string printProgram(const Program& p);  // user classes only

}  // namespace spa::ir
