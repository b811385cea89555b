#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qgrover/grover.hpp"
#include "qgrover/qcl/ast.hpp"
#include "qgrover/statevec.hpp"

namespace qgrover::qcl {

enum class GateKind { H, Not, CNot, CPhase };

// One primitive gate on concrete machine qubits. `controls` is only used by
// CNot and `angle` only by CPhase.
struct GateRecord {
  GateKind kind = GateKind::H;
  RegisterHandle target;
  RegisterHandle controls;
  double angle = 0.0;

  GateRecord inverse() const;
  void apply(Machine& machine) const;
};

using GateTrace = std::vector<GateRecord>;

using Value = std::variant<std::int64_t, double, std::string, RegisterHandle>;

struct InterpreterOptions {
  // Guard on `{ ... } until cond;` repetitions.
  std::size_t max_rounds = kDefaultMaxRounds;
  // Check state normalization after every statement.
  bool check_invariants = false;
  // When set, every output line is also written here as it is produced.
  std::ostream* echo = nullptr;
};

// Tree-walking evaluator bound to one program and one machine.
//
// Adjoint calls (`!name(...)`) of user procedures run the body with gate
// applications recorded instead of applied, then replay the record in reverse
// with every gate inverted. Classical control flow inside such a body must not
// depend on quantum state, so measure, reset, input, print and register
// declarations raise NonUnitaryInverse there.
class Interpreter {
 public:
  Interpreter(const Program& program, Machine& machine, std::deque<std::int64_t> input_feed,
              InterpreterOptions options = {});

  // Runs the zero-argument procedure `entry`.
  void run(std::string_view entry);

  // Runs `name(args)` directly, forward or as its adjoint.
  void call(std::string_view name, const std::vector<Value>& args, bool inverted = false);

  const std::vector<std::string>& output() const { return output_; }

 private:
  struct Frame;

  void exec_block(const Block& block, Frame& frame);
  void exec(const Stmt& stmt, Frame& frame);
  Value eval(const Expr& expr, Frame& frame);
  void invoke(const std::string& name, std::vector<Value> args, bool inverted, SourcePos pos);
  void call_builtin_gate(const std::string& name, const std::vector<Value>& args, bool inverted, SourcePos pos);
  void call_procedure(const ProcDef& proc, std::vector<Value> args, SourcePos pos);
  void emit(const GateRecord& gate, SourcePos pos);
  void require_forward(const char* what, SourcePos pos) const;
  void write_line(std::string line);

  const Program& program_;
  Machine& machine_;
  std::deque<std::int64_t> input_;
  InterpreterOptions options_;
  std::vector<std::string> output_;
  std::vector<GateTrace*> traces_;
  std::vector<const ProcDef*> call_stack_;
};

struct ExecutionResult {
  std::vector<std::string> output;
  // 0 on success; otherwise the exit code for the error (see exit_code_for).
  int exit_status = 0;
  std::string diagnostic;
};

// Runs `entry` and captures the outcome instead of throwing.
ExecutionResult interpret(const Program& program, std::string_view entry, Machine& machine,
                          std::vector<std::int64_t> input_feed, InterpreterOptions options = {});

std::string format_value(const Value& value);

}  // namespace qgrover::qcl
