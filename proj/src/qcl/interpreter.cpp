#include "qgrover/qcl/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "qgrover/errors.hpp"
#include "qgrover/exit_code.hpp"
#include "qgrover/qcl/parser.hpp"

namespace qgrover::qcl {

GateRecord GateRecord::inverse() const {
  GateRecord inv = *this;
  if (kind == GateKind::CPhase) inv.angle = -angle;
  return inv;
}

void GateRecord::apply(Machine& machine) const {
  switch (kind) {
    case GateKind::H: machine.apply_hadamard(target); break;
    case GateKind::Not: machine.apply_not(target); break;
    case GateKind::CNot: machine.apply_cnot(target, controls); break;
    case GateKind::CPhase: machine.apply_cphase(angle, target); break;
  }
}

std::string format_value(const Value& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&value)) {
    std::ostringstream os;
    os.precision(12);
    os << *d;
    return os.str();
  }
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  const auto& reg = std::get<RegisterHandle>(value);
  std::string out = "qureg{";
  for (std::size_t i = 0; i < reg.width(); ++i) {
    if (i) out += ",";
    out += std::to_string(reg[i]);
  }
  return out + "}";
}

namespace {

const char* type_name(const Value& v) {
  switch (v.index()) {
    case 0: return "int";
    case 1: return "real";
    case 2: return "string";
    default: return "qureg";
  }
}

[[noreturn]] void type_error(SourcePos pos, const std::string& what) {
  throw RuntimeError(RuntimeErrorKind::TypeMismatch, pos, what);
}

[[noreturn]] void domain_error(SourcePos pos, const std::string& what) {
  throw RuntimeError(RuntimeErrorKind::Domain, pos, what);
}

bool is_number(const Value& v) { return v.index() <= 1; }

double as_double(const Value& v, SourcePos pos) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  type_error(pos, std::string("expected a number, got ") + type_name(v));
}

std::int64_t real_to_int(double d, SourcePos pos) {
  // 2^63 is exactly representable; anything at or above it overflows.
  constexpr double kLimit = 9223372036854775808.0;
  if (!std::isfinite(d) || d >= kLimit || d < -kLimit) domain_error(pos, "value out of integer range");
  return static_cast<std::int64_t>(d);
}

std::int64_t as_int(const Value& v, SourcePos pos) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) {
    if (std::isfinite(*d) && std::floor(*d) == *d) return real_to_int(*d, pos);
    type_error(pos, "non-integral value " + format_value(v) + " where an int is required");
  }
  type_error(pos, std::string("expected an int, got ") + type_name(v));
}

bool as_bool(const Value& v, SourcePos pos) {
  if (!is_number(v)) type_error(pos, std::string("condition must be a number, got ") + type_name(v));
  return as_double(v, pos) != 0.0;
}

const RegisterHandle& as_register(const Value& v, SourcePos pos) {
  if (const auto* r = std::get_if<RegisterHandle>(&v)) return *r;
  type_error(pos, std::string("expected a qureg, got ") + type_name(v));
}

template <typename Op>
std::int64_t checked(Op op, std::int64_t a, std::int64_t b, SourcePos pos) {
  std::int64_t r = 0;
  if (op(a, b, &r)) domain_error(pos, "integer overflow");
  return r;
}

std::int64_t int_pow(std::int64_t base, std::int64_t exp, SourcePos pos) {
  if (base == 0 || base == 1) return exp == 0 ? 1 : base;
  if (base == -1) return exp % 2 ? -1 : 1;
  std::int64_t result = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    std::int64_t next = 0;
    if (__builtin_mul_overflow(result, base, &next)) domain_error(pos, "integer overflow in ^");
    result = next;
  }
  return result;
}

Value binary(BinaryOp op, const Value& a, const Value& b, SourcePos pos) {
  const auto* ia = std::get_if<std::int64_t>(&a);
  const auto* ib = std::get_if<std::int64_t>(&b);
  if (op == BinaryOp::Eq) {
    if (ia && ib) return std::int64_t{*ia == *ib};
    if (is_number(a) && is_number(b)) return std::int64_t{as_double(a, pos) == as_double(b, pos)};
    if (a.index() == b.index()) return std::int64_t{a == b};
    type_error(pos, std::string("cannot compare ") + type_name(a) + " with " + type_name(b));
  }
  if (!is_number(a) || !is_number(b)) {
    type_error(pos, std::string("operator ") + to_string(op) + " needs numbers, got " + type_name(a) + " and " +
                        type_name(b));
  }
  switch (op) {
    case BinaryOp::Add:
      if (ia && ib) return checked([](std::int64_t x, std::int64_t y, std::int64_t* r) { return __builtin_add_overflow(x, y, r); }, *ia, *ib, pos);
      return as_double(a, pos) + as_double(b, pos);
    case BinaryOp::Sub:
      if (ia && ib) return checked([](std::int64_t x, std::int64_t y, std::int64_t* r) { return __builtin_sub_overflow(x, y, r); }, *ia, *ib, pos);
      return as_double(a, pos) - as_double(b, pos);
    case BinaryOp::Mul:
      if (ia && ib) return checked([](std::int64_t x, std::int64_t y, std::int64_t* r) { return __builtin_mul_overflow(x, y, r); }, *ia, *ib, pos);
      return as_double(a, pos) * as_double(b, pos);
    case BinaryOp::Div: {
      const double d = as_double(b, pos);
      if (d == 0.0) domain_error(pos, "division by zero");
      return as_double(a, pos) / d;
    }
    case BinaryOp::Pow:
      if (ia && ib && *ib >= 0) return int_pow(*ia, *ib, pos);
      return std::pow(as_double(a, pos), as_double(b, pos));
    case BinaryOp::Eq: break;
  }
  return std::int64_t{0};
}

Value builtin_function(const std::string& name, const std::vector<Value>& args, SourcePos pos) {
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      type_error(pos, name + " takes " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
                          " argument(s), got " + std::to_string(args.size()));
    }
  };
  if (name == "floor" || name == "ceil") {
    arity(1, 1);
    if (const auto* i = std::get_if<std::int64_t>(&args[0])) return *i;
    const double x = as_double(args[0], pos);
    return real_to_int(name == "floor" ? std::floor(x) : std::ceil(x), pos);
  }
  if (name == "sqrt") {
    arity(1, 1);
    const double x = as_double(args[0], pos);
    if (x < 0.0) domain_error(pos, "sqrt of negative value");
    return std::sqrt(x);
  }
  if (name == "log") {
    arity(1, 2);
    const double x = as_double(args[0], pos);
    if (!(x > 0.0)) domain_error(pos, "log of non-positive value " + format_value(args[0]));
    if (args.size() == 1) return std::log(x);
    const double base = as_double(args[1], pos);
    if (!(base > 0.0) || base == 1.0) domain_error(pos, "invalid log base " + format_value(args[1]));
    // log2 is exact on powers of two, where log(x)/log(2) may not be.
    if (base == 2.0) return std::log2(x);
    return std::log(x) / std::log(base);
  }
  if (name == "bit") {
    arity(2, 2);
    const std::int64_t n = as_int(args[0], pos);
    const std::int64_t i = as_int(args[1], pos);
    if (n < 0 || i < 0) domain_error(pos, "bit() needs non-negative arguments");
    if (i >= 63) return std::int64_t{0};
    return (n >> i) & 1;
  }
  throw RuntimeError(RuntimeErrorKind::UnboundName, pos, "unknown function '" + name + "'");
}

}  // namespace

struct Interpreter::Frame {
  std::vector<std::unordered_map<std::string, Value>> scopes;

  Value* lookup(const std::string& name) {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  void declare(const std::string& name, Value value, SourcePos pos) {
    auto [it, inserted] = scopes.back().emplace(name, std::move(value));
    if (!inserted) throw RuntimeError(RuntimeErrorKind::Unsupported, pos, "'" + name + "' redeclared in the same scope");
  }

  // Stores an integer result into `name`, declaring it in the innermost scope if unbound.
  void store_int(const std::string& name, std::int64_t value, SourcePos pos) {
    if (Value* slot = lookup(name)) {
      if (!std::holds_alternative<std::int64_t>(*slot)) {
        type_error(pos, "'" + name + "' is a " + type_name(*slot) + ", not an int");
      }
      *slot = value;
    } else {
      scopes.back().emplace(name, value);
    }
  }
};

namespace {

struct ScopeGuard {
  explicit ScopeGuard(std::vector<std::unordered_map<std::string, Value>>& s) : scopes(s) { scopes.emplace_back(); }
  ~ScopeGuard() { scopes.pop_back(); }
  ScopeGuard(const ScopeGuard&) = delete;
  ScopeGuard& operator=(const ScopeGuard&) = delete;
  std::vector<std::unordered_map<std::string, Value>>& scopes;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Interpreter::Interpreter(const Program& program, Machine& machine, std::deque<std::int64_t> input_feed,
                         InterpreterOptions options)
    : program_(program), machine_(machine), input_(std::move(input_feed)), options_(options) {}

void Interpreter::run(std::string_view entry) {
  const ProcDef* proc = program_.find(entry);
  if (!proc) {
    throw RuntimeError(RuntimeErrorKind::UnboundName, SourcePos{}, "entry procedure '" + std::string(entry) + "' not defined");
  }
  if (!proc->params.empty()) type_error(proc->pos, "entry procedure '" + proc->name + "' must take no arguments");
  call_procedure(*proc, {}, proc->pos);
}

void Interpreter::call(std::string_view name, const std::vector<Value>& args, bool inverted) {
  invoke(std::string(name), args, inverted, SourcePos{});
}

void Interpreter::write_line(std::string line) {
  if (options_.echo) *options_.echo << line << '\n';
  output_.push_back(std::move(line));
}

void Interpreter::require_forward(const char* what, SourcePos pos) const {
  if (!traces_.empty()) {
    throw RuntimeError(RuntimeErrorKind::NonUnitaryInverse, pos, std::string(what) + " inside an adjoint call");
  }
}

void Interpreter::emit(const GateRecord& gate, SourcePos) {
  if (!traces_.empty()) {
    traces_.back()->push_back(gate);
  } else {
    gate.apply(machine_);
  }
}

void Interpreter::invoke(const std::string& name, std::vector<Value> args, bool inverted, SourcePos pos) {
  if (is_builtin_gate(name)) {
    call_builtin_gate(name, args, inverted, pos);
    return;
  }
  if (is_builtin_function(name)) {
    throw RuntimeError(RuntimeErrorKind::Unsupported, pos, "function '" + name + "' cannot be called as a statement");
  }
  const ProcDef* proc = program_.find(name);
  if (!proc) throw RuntimeError(RuntimeErrorKind::UnboundName, pos, "procedure '" + name + "' not defined");
  if (!inverted) {
    call_procedure(*proc, std::move(args), pos);
    return;
  }
  GateTrace trace;
  traces_.push_back(&trace);
  try {
    call_procedure(*proc, std::move(args), pos);
  } catch (...) {
    traces_.pop_back();
    throw;
  }
  traces_.pop_back();
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) emit(it->inverse(), pos);
}

void Interpreter::call_builtin_gate(const std::string& name, const std::vector<Value>& args, bool inverted,
                                    SourcePos pos) {
  auto arity = [&](std::size_t n) {
    if (args.size() != n) {
      type_error(pos, name + " takes " + std::to_string(n) + " argument(s), got " + std::to_string(args.size()));
    }
  };
  GateRecord gate;
  if (name == "H" || name == "Not") {
    arity(1);
    gate.kind = name == "H" ? GateKind::H : GateKind::Not;
    gate.target = as_register(args[0], pos);
  } else if (name == "CNot") {
    arity(2);
    gate.kind = GateKind::CNot;
    gate.target = as_register(args[0], pos);
    gate.controls = as_register(args[1], pos);
    if (gate.target.width() != 1) {
      throw RuntimeError(RuntimeErrorKind::Machine, pos, "CNot target must be a single qubit");
    }
    if (gate.target.mask() & gate.controls.mask()) {
      throw RuntimeError(RuntimeErrorKind::Machine, pos, "CNot target overlaps its controls");
    }
  } else {
    arity(2);
    gate.kind = GateKind::CPhase;
    gate.angle = as_double(args[0], pos);
    gate.target = as_register(args[1], pos);
  }
  emit(inverted ? gate.inverse() : gate, pos);
}

void Interpreter::call_procedure(const ProcDef& proc, std::vector<Value> args, SourcePos pos) {
  if (std::find(call_stack_.begin(), call_stack_.end(), &proc) != call_stack_.end()) {
    throw RuntimeError(RuntimeErrorKind::Unsupported, pos, "recursive call of '" + proc.name + "'");
  }
  if (args.size() != proc.params.size()) {
    type_error(pos, "'" + proc.name + "' takes " + std::to_string(proc.params.size()) + " argument(s), got " +
                        std::to_string(args.size()));
  }
  Frame frame;
  frame.scopes.emplace_back();
  for (std::size_t i = 0; i < args.size(); ++i) {
    const Param& p = proc.params[i];
    if (p.type == VarType::Int) {
      frame.declare(p.name, as_int(args[i], pos), p.pos);
    } else {
      frame.declare(p.name, as_register(args[i], pos), p.pos);
    }
  }
  call_stack_.push_back(&proc);
  try {
    exec_block(proc.body, frame);
  } catch (...) {
    call_stack_.pop_back();
    throw;
  }
  call_stack_.pop_back();
}

void Interpreter::exec_block(const Block& block, Frame& frame) {
  ScopeGuard guard(frame.scopes);
  for (const auto& s : block.statements) exec(*s, frame);
}

void Interpreter::exec(const Stmt& stmt, Frame& frame) {
  const SourcePos pos = stmt.pos;
  try {
    std::visit(
        overloaded{
            [&](const VarDecl& d) {
              if (d.type == VarType::Int) {
                frame.declare(d.name, d.init ? as_int(eval(*d.init, frame), d.init->pos) : std::int64_t{0}, pos);
                return;
              }
              require_forward("register declaration", pos);
              const std::int64_t width = as_int(eval(*d.width, frame), d.width->pos);
              if (width < 0) domain_error(pos, "negative register width");
              if (frame.scopes.back().count(d.name)) {
                throw RuntimeError(RuntimeErrorKind::Unsupported, pos, "'" + d.name + "' redeclared in the same scope");
              }
              frame.declare(d.name, machine_.allocate(static_cast<std::size_t>(width)), pos);
            },
            [&](const Assign& a) {
              Value* slot = frame.lookup(a.name);
              if (!slot) throw RuntimeError(RuntimeErrorKind::UnboundName, pos, "'" + a.name + "' is not declared");
              if (!std::holds_alternative<std::int64_t>(*slot)) {
                type_error(pos, "cannot assign to " + std::string(type_name(*slot)) + " '" + a.name + "'");
              }
              *slot = as_int(eval(*a.value, frame), a.value->pos);
            },
            [&](const ForLoop& f) {
              const std::int64_t from = as_int(eval(*f.from, frame), f.from->pos);
              const std::int64_t to = as_int(eval(*f.to, frame), f.to->pos);
              for (std::int64_t i = from; i <= to; ++i) {
                frame.store_int(f.var, i, pos);
                exec_block(f.body, frame);
              }
            },
            [&](const IfStmt& s) {
              if (as_bool(eval(*s.cond, frame), s.cond->pos)) {
                exec_block(s.then_branch, frame);
              } else if (s.else_branch) {
                exec(*s.else_branch, frame);
              }
            },
            [&](const UntilLoop& u) {
              std::size_t rounds = 0;
              for (;;) {
                exec_block(u.body, frame);
                ++rounds;
                if (as_bool(eval(*u.cond, frame), u.cond->pos)) break;
                if (rounds >= options_.max_rounds) {
                  throw RuntimeError(RuntimeErrorKind::RoundLimit, pos,
                                     "until-loop condition still false after " + std::to_string(rounds) + " rounds");
                }
              }
            },
            [&](const CallStmt& c) {
              std::vector<Value> args;
              args.reserve(c.args.size());
              for (const auto& a : c.args) args.push_back(eval(*a, frame));
              invoke(c.name, std::move(args), c.inverted, pos);
            },
            [&](const InputStmt& in) {
              require_forward("input", pos);
              if (input_.empty()) {
                throw RuntimeError(RuntimeErrorKind::EmptyInputFeed, pos, "no input value left for '" + in.var + "'");
              }
              const std::int64_t v = input_.front();
              input_.pop_front();
              write_line("? " + (in.prompt ? *in.prompt + " " : std::string()) + std::to_string(v));
              frame.store_int(in.var, v, pos);
            },
            [&](const PrintStmt& p) {
              require_forward("print", pos);
              std::string line;
              for (std::size_t i = 0; i < p.args.size(); ++i) {
                if (i) line += ' ';
                line += format_value(eval(*p.args[i], frame));
              }
              write_line(std::move(line));
            },
            [&](const MeasureStmt& m) {
              require_forward("measure", pos);
              const RegisterHandle reg = as_register(eval(*m.reg, frame), m.reg->pos);
              const MeasurementOutcome outcome = machine_.measure(reg);
              frame.store_int(m.var, static_cast<std::int64_t>(outcome.value), pos);
            },
            [&](const ResetStmt&) {
              require_forward("reset", pos);
              machine_.reset();
            },
            [&](const Block& b) { exec_block(b, frame); },
        },
        stmt.node);
    if (options_.check_invariants && traces_.empty()) machine_.check_normalized();
  } catch (const SourceError&) {
    throw;
  } catch (const CapacityError& e) {
    throw RuntimeError(RuntimeErrorKind::Capacity, pos, e.what());
  } catch (const Error& e) {
    throw RuntimeError(RuntimeErrorKind::Machine, pos, e.what());
  }
}

Value Interpreter::eval(const Expr& expr, Frame& frame) {
  const SourcePos pos = expr.pos;
  return std::visit(
      overloaded{
          [&](const IntLiteral& n) -> Value { return n.value; },
          [&](const StringLiteral& s) -> Value { return s.value; },
          [&](const VarRef& v) -> Value {
            if (const Value* slot = frame.lookup(v.name)) return *slot;
            if (v.name == "pi") return std::numbers::pi;
            throw RuntimeError(RuntimeErrorKind::UnboundName, pos, "'" + v.name + "' is not declared");
          },
          [&](const IndexExpr& i) -> Value {
            const Value base = eval(*i.base, frame);
            const RegisterHandle& reg = as_register(base, i.base->pos);
            const std::int64_t idx = as_int(eval(*i.index, frame), i.index->pos);
            if (idx < 0 || static_cast<std::uint64_t>(idx) >= reg.width()) {
              domain_error(pos, "index " + std::to_string(idx) + " out of range for register of width " +
                                    std::to_string(reg.width()));
            }
            return reg.at(static_cast<std::size_t>(idx));
          },
          [&](const WidthExpr& w) -> Value {
            const Value v = eval(*w.operand, frame);
            return static_cast<std::int64_t>(as_register(v, w.operand->pos).width());
          },
          [&](const UnaryExpr& u) -> Value {
            const Value v = eval(*u.operand, frame);
            if (u.op == UnaryOp::Negate) {
              if (const auto* i = std::get_if<std::int64_t>(&v)) {
                if (*i == std::numeric_limits<std::int64_t>::min()) domain_error(pos, "integer overflow");
                return -*i;
              }
              return -as_double(v, u.operand->pos);
            }
            return std::int64_t{!as_bool(v, u.operand->pos)};
          },
          [&](const BinaryExpr& b) -> Value {
            const Value lhs = eval(*b.lhs, frame);
            const Value rhs = eval(*b.rhs, frame);
            return binary(b.op, lhs, rhs, pos);
          },
          [&](const CallExpr& c) -> Value {
            if (!is_builtin_function(c.name)) {
              if (is_builtin_gate(c.name) || program_.find(c.name)) {
                throw RuntimeError(RuntimeErrorKind::Unsupported, pos,
                                   "'" + c.name + "' has no return value and cannot be used in an expression");
              }
              throw RuntimeError(RuntimeErrorKind::UnboundName, pos, "unknown function '" + c.name + "'");
            }
            std::vector<Value> args;
            args.reserve(c.args.size());
            for (const auto& a : c.args) args.push_back(eval(*a, frame));
            return builtin_function(c.name, args, pos);
          },
      },
      expr.node);
}

ExecutionResult interpret(const Program& program, std::string_view entry, Machine& machine,
                          std::vector<std::int64_t> input_feed, InterpreterOptions options) {
  Interpreter interp(program, machine, std::deque<std::int64_t>(input_feed.begin(), input_feed.end()), options);
  ExecutionResult result;
  try {
    interp.run(entry);
  } catch (const std::exception& e) {
    result.exit_status = static_cast<int>(exit_code_for(e));
    result.diagnostic = e.what();
  }
  result.output = interp.output();
  return result;
}

}  // namespace qgrover::qcl
