#pragma once

#include <span>
#include <string>
#include <string_view>

#include "qgrover/qcl/ast.hpp"
#include "qgrover/qcl/lexer.hpp"

namespace qgrover::qcl {

// Names the interpreter dispatches to the simulator; they cannot be redefined.
bool is_builtin_gate(std::string_view name);
// Pure functions usable in expressions.
bool is_builtin_function(std::string_view name);

// Recursive-descent parser over a token stream from tokenize(). Throws
// ParseError at the first violation.
Program parse_program(std::span<const Token> tokens);

// tokenize + parse_program.
Program parse_source(std::string_view source);

// Re-emits a program as source text that parses to the same structure.
std::string format_program(const Program& program);

// Position-free S-expression dump; equal dumps mean structurally equal ASTs.
std::string dump(const Program& program);

}  // namespace qgrover::qcl
