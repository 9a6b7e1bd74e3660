#pragma once

#include <memory>

#include "spa/cfg/cfg.hpp"
#include "spa/cfg/throw_analysis.hpp"
#include "spa/ir/hierarchy.hpp"

namespace spa::cfg {

// Which thrown exceptions become control-flow edges.
enum class ExceptionMode { None, Explicit, All };

// Builds the intra-method CFG. `throws` must be present unless the mode is
// None. Exceptional edges go to the nearest covering handler whose catch
// type is a supertype of the thrown type; unmatched explicit/implicit throws
// get an UNCAUGHT_EXCEPTION edge to exit. In mode None a throw statement
// simply ends its path.
std::unique_ptr<CFG> buildCfg(const ir::MethodBody& body,
                              const ir::Hierarchy& hierarchy,
                              ExceptionMode mode,
                              const ThrowResult* throws = nullptr);

}  // namespace spa::cfg
