#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qgrover/qcl/diagnostics.hpp"

namespace qgrover::qcl {

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

struct IntLiteral {
  std::int64_t value = 0;
};

struct StringLiteral {
  std::string value;
};

// Variable reference; `pi` resolves to the constant when not shadowed.
struct VarRef {
  std::string name;
};

// x[i]: single-qubit sub-register.
struct IndexExpr {
  ExprPtr base;
  ExprPtr index;
};

// #x: register width.
struct WidthExpr {
  ExprPtr operand;
};

enum class UnaryOp { Not, Bang, Negate };

struct UnaryExpr {
  UnaryOp op = UnaryOp::Not;
  ExprPtr operand;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow, Eq };

struct BinaryExpr {
  BinaryOp op = BinaryOp::Add;
  ExprPtr lhs;
  ExprPtr rhs;
};

// Builtin function call inside an expression (floor, ceil, log, sqrt, bit).
struct CallExpr {
  std::string name;
  std::vector<ExprPtr> args;
};

struct Expr {
  std::variant<IntLiteral, StringLiteral, VarRef, IndexExpr, WidthExpr, UnaryExpr, BinaryExpr, CallExpr> node;
  SourcePos pos;
};

enum class VarType { Int, Qureg, Quvoid };

const char* to_string(VarType type);
const char* to_string(UnaryOp op);
const char* to_string(BinaryOp op);

struct Block {
  std::vector<StmtPtr> statements;
};

// int x [= init]; qureg x[width]; quvoid x[width];
struct VarDecl {
  VarType type = VarType::Int;
  std::string name;
  ExprPtr width;
  ExprPtr init;
};

struct Assign {
  std::string name;
  ExprPtr value;
};

// for var = from to to { ... }; both bounds inclusive.
struct ForLoop {
  std::string var;
  ExprPtr from;
  ExprPtr to;
  Block body;
};

struct IfStmt {
  ExprPtr cond;
  Block then_branch;
  StmtPtr else_branch;  // Block or IfStmt, may be null
};

// { ... } until cond;  body runs at least once.
struct UntilLoop {
  Block body;
  ExprPtr cond;
};

// name(args);  or  !name(args);  for the adjoint.
struct CallStmt {
  std::string name;
  std::vector<ExprPtr> args;
  bool inverted = false;
};

struct InputStmt {
  std::optional<std::string> prompt;
  std::string var;
};

struct PrintStmt {
  std::vector<ExprPtr> args;
};

struct MeasureStmt {
  ExprPtr reg;
  std::string var;
};

struct ResetStmt {};

struct Stmt {
  std::variant<VarDecl, Assign, ForLoop, IfStmt, UntilLoop, CallStmt, InputStmt, PrintStmt, MeasureStmt,
               ResetStmt, Block>
      node;
  SourcePos pos;
};

struct Param {
  VarType type = VarType::Int;
  std::string name;
  SourcePos pos;
};

struct ProcDef {
  std::string name;
  std::vector<Param> params;
  Block body;
  SourcePos pos;
};

struct Program {
  std::vector<ProcDef> procedures;

  const ProcDef* find(std::string_view name) const {
    for (const auto& p : procedures) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }
};

}  // namespace qgrover::qcl
