#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qgrover/errors.hpp"

namespace qgrover::qcl {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

// Error tied to a location in the program text. what() is "line:col: message".
class SourceError : public Error {
 public:
  SourceError(SourcePos pos, const std::string& message)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        pos_(pos),
        message_(message) {}

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

class LexError : public SourceError {
 public:
  using SourceError::SourceError;
};

class ParseError : public SourceError {
 public:
  ParseError(SourcePos pos, const std::string& message, std::vector<std::string> expected = {})
      : SourceError(pos, message), expected_(std::move(expected)) {}

  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

enum class RuntimeErrorKind {
  UnboundName,
  TypeMismatch,
  EmptyInputFeed,
  RoundLimit,
  NonUnitaryInverse,
  Unsupported,
  Domain,
  Capacity,
  Machine,
};

const char* to_string(RuntimeErrorKind kind);

class RuntimeError : public SourceError {
 public:
  RuntimeError(RuntimeErrorKind kind, SourcePos pos, const std::string& message)
      : SourceError(pos, std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  RuntimeErrorKind kind() const { return kind_; }

 private:
  RuntimeErrorKind kind_;
};

}  // namespace qgrover::qcl
