// Front end for the textual three-address IR. See the grammar in README.md.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spa/ir/program.hpp"

namespace spa::ir {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses one compilation unit into a fully resolved immutable program.
// Throws ParseError on syntax errors, unresolved references, or hierarchy
// violations. Parsing is deterministic.
std::unique_ptr<Program> parseProgram(std::string_view text);

}  // namespace spa::ir
