// Intraprocedural throw analysis: the declared type of the thrown variable
// per throw statement, plus a fixed table of implicit JVM-style exceptions
// per risky statement kind.
#pragma once

#include <vector>

#include "spa/ir/program.hpp"

namespace spa::cfg {

struct ThrowResult {
  // Indexed by statement; explicit sets are nonempty only at throw
  // statements.
  std::vector<std::vector<ir::Type>> explicitTypes;
  std::vector<std::vector<ir::Type>> implicitTypes;
};

// Implicit table: div/rem -> ArithmeticException, array access ->
// IndexOutOfBoundsException, cast -> ClassCastException, instance
// field/array/invoke base -> NullPointerException.
ThrowResult throwAnalysis(const ir::MethodBody& body);

}  // namespace spa::cfg
