#pragma once

#include <exception>

namespace qgrover {

// Process exit codes shared by the CLI and the interpreter result.
enum class ExitCode : int {
  Ok = 0,
  Usage = 1,
  Parse = 2,
  Runtime = 3,
  Capacity = 4,
  Domain = 5,
  RoundLimit = 6,
};

// Lex/parse -> Parse; interpreter runtime errors -> Runtime (Capacity when the
// qubit budget ran out); engine DomainError/RoundLimitError -> Domain/RoundLimit.
// Anything else maps to Runtime.
ExitCode exit_code_for(const std::exception& error);

}  // namespace qgrover
