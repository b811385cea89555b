#include <sstream>

#include "qgrover/qcl/parser.hpp"

namespace qgrover::qcl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

// Binding strength, matching the parser's grammar levels.
enum Prec { kEq = 1, kAdd = 2, kMul = 3, kUnary = 4, kPow = 5, kAtom = 6 };

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
    switch (b->op) {
      case BinaryOp::Eq: return kEq;
      case BinaryOp::Add:
      case BinaryOp::Sub: return kAdd;
      case BinaryOp::Mul:
      case BinaryOp::Div: return kMul;
      case BinaryOp::Pow: return kPow;
    }
  }
  if (std::holds_alternative<UnaryExpr>(e.node)) return kUnary;
  return kAtom;
}

std::string format_expr(const Expr& e);

std::string format_at(const Expr& e, int min_prec) {
  std::string s = format_expr(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

std::string format_args(const std::vector<ExprPtr>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += format_expr(*args[i]);
  }
  return out;
}

std::string format_expr(const Expr& e) {
  return std::visit(
      overloaded{
          [](const IntLiteral& n) { return std::to_string(n.value); },
          [](const StringLiteral& s) { return quote(s.value); },
          [](const VarRef& v) { return v.name; },
          [](const IndexExpr& i) { return format_at(*i.base, kAtom) + "[" + format_expr(*i.index) + "]"; },
          [](const WidthExpr& w) { return "#" + format_at(*w.operand, kAtom); },
          [](const UnaryExpr& u) {
            const std::string op = u.op == UnaryOp::Not ? "not " : to_string(u.op);
            return op + format_at(*u.operand, kUnary);
          },
          [](const BinaryExpr& b) {
            int left = kAtom;
            int right = kAtom;
            switch (b.op) {
              case BinaryOp::Eq: left = right = kAdd; break;
              case BinaryOp::Add:
              case BinaryOp::Sub: left = kAdd; right = kMul; break;
              case BinaryOp::Mul:
              case BinaryOp::Div: left = kMul; right = kUnary; break;
              case BinaryOp::Pow: left = kAtom; right = kUnary; break;
            }
            return format_at(*b.lhs, left) + to_string(b.op) + format_at(*b.rhs, right);
          },
          [](const CallExpr& c) { return c.name + "(" + format_args(c.args) + ")"; },
      },
      e.node);
}

class SourceWriter {
 public:
  std::string str() const { return out_.str(); }

  void procedure(const ProcDef& p) {
    out_ << "procedure " << p.name << "(";
    for (std::size_t i = 0; i < p.params.size(); ++i) {
      if (i) out_ << ",";
      out_ << to_string(p.params[i].type) << " " << p.params[i].name;
    }
    out_ << ") ";
    block(p.body);
    out_ << "\n";
  }

 private:
  void indent() {
    for (int i = 0; i < depth_; ++i) out_ << "    ";
  }

  void block(const Block& b) {
    out_ << "{\n";
    ++depth_;
    for (const auto& s : b.statements) statement(*s);
    --depth_;
    indent();
    out_ << "}";
  }

  void statement(const Stmt& s) {
    indent();
    std::visit(overloaded{
                   [&](const VarDecl& d) {
                     out_ << to_string(d.type) << " " << d.name;
                     if (d.width) out_ << "[" << format_expr(*d.width) << "]";
                     if (d.init) out_ << " = " << format_expr(*d.init);
                     out_ << ";";
                   },
                   [&](const Assign& a) { out_ << a.name << " = " << format_expr(*a.value) << ";"; },
                   [&](const ForLoop& f) {
                     out_ << "for " << f.var << " = " << format_expr(*f.from) << " to " << format_expr(*f.to)
                          << " ";
                     block(f.body);
                   },
                   [&](const IfStmt& i) { if_chain(i); },
                   [&](const UntilLoop& u) {
                     block(u.body);
                     out_ << " until " << format_expr(*u.cond) << ";";
                   },
                   [&](const CallStmt& c) {
                     out_ << (c.inverted ? "!" : "") << c.name << "(" << format_args(c.args) << ");";
                   },
                   [&](const InputStmt& in) {
                     out_ << "input ";
                     if (in.prompt) out_ << quote(*in.prompt) << ",";
                     out_ << in.var << ";";
                   },
                   [&](const PrintStmt& p) {
                     out_ << "print";
                     if (!p.args.empty()) out_ << " " << format_args(p.args);
                     out_ << ";";
                   },
                   [&](const MeasureStmt& m) { out_ << "measure " << format_expr(*m.reg) << "," << m.var << ";"; },
                   [&](const ResetStmt&) { out_ << "reset;"; },
                   [&](const Block& b) { block(b); },
               },
               s.node);
    out_ << "\n";
  }

  void if_chain(const IfStmt& i) {
    out_ << "if " << format_expr(*i.cond) << " ";
    block(i.then_branch);
    if (!i.else_branch) return;
    out_ << " else ";
    if (const auto* nested = std::get_if<IfStmt>(&i.else_branch->node)) {
      if_chain(*nested);
    } else {
      block(std::get<Block>(i.else_branch->node));
    }
  }

  std::ostringstream out_;
  int depth_ = 0;
};

class SexprWriter {
 public:
  std::string str() const { return out_.str(); }

  void expr(const Expr& e) {
    std::visit(overloaded{
                   [&](const IntLiteral& n) { out_ << n.value; },
                   [&](const StringLiteral& s) { out_ << quote(s.value); },
                   [&](const VarRef& v) { out_ << v.name; },
                   [&](const IndexExpr& i) { list("index", *i.base, *i.index); },
                   [&](const WidthExpr& w) {
                     out_ << "(width ";
                     expr(*w.operand);
                     out_ << ")";
                   },
                   [&](const UnaryExpr& u) {
                     out_ << "(" << to_string(u.op) << " ";
                     expr(*u.operand);
                     out_ << ")";
                   },
                   [&](const BinaryExpr& b) { list(to_string(b.op), *b.lhs, *b.rhs); },
                   [&](const CallExpr& c) {
                     out_ << "(call " << c.name;
                     for (const auto& a : c.args) {
                       out_ << " ";
                       expr(*a);
                     }
                     out_ << ")";
                   },
               },
               e.node);
  }

  void block(const Block& b) {
    out_ << "(block";
    for (const auto& s : b.statements) {
      out_ << " ";
      stmt(*s);
    }
    out_ << ")";
  }

  void stmt(const Stmt& s) {
    std::visit(overloaded{
                   [&](const VarDecl& d) {
                     out_ << "(decl " << to_string(d.type) << " " << d.name;
                     if (d.width) {
                       out_ << " [";
                       expr(*d.width);
                       out_ << "]";
                     }
                     if (d.init) {
                       out_ << " = ";
                       expr(*d.init);
                     }
                     out_ << ")";
                   },
                   [&](const Assign& a) {
                     out_ << "(assign " << a.name << " ";
                     expr(*a.value);
                     out_ << ")";
                   },
                   [&](const ForLoop& f) {
                     out_ << "(for " << f.var << " ";
                     expr(*f.from);
                     out_ << " ";
                     expr(*f.to);
                     out_ << " ";
                     block(f.body);
                     out_ << ")";
                   },
                   [&](const IfStmt& i) {
                     out_ << "(if ";
                     expr(*i.cond);
                     out_ << " ";
                     block(i.then_branch);
                     if (i.else_branch) {
                       out_ << " ";
                       stmt(*i.else_branch);
                     }
                     out_ << ")";
                   },
                   [&](const UntilLoop& u) {
                     out_ << "(until ";
                     block(u.body);
                     out_ << " ";
                     expr(*u.cond);
                     out_ << ")";
                   },
                   [&](const CallStmt& c) {
                     out_ << "(" << (c.inverted ? "adjoint " : "call ") << c.name;
                     for (const auto& a : c.args) {
                       out_ << " ";
                       expr(*a);
                     }
                     out_ << ")";
                   },
                   [&](const InputStmt& in) {
                     out_ << "(input " << (in.prompt ? quote(*in.prompt) : "-") << " " << in.var << ")";
                   },
                   [&](const PrintStmt& p) {
                     out_ << "(print";
                     for (const auto& a : p.args) {
                       out_ << " ";
                       expr(*a);
                     }
                     out_ << ")";
                   },
                   [&](const MeasureStmt& m) {
                     out_ << "(measure ";
                     expr(*m.reg);
                     out_ << " " << m.var << ")";
                   },
                   [&](const ResetStmt&) { out_ << "(reset)"; },
                   [&](const Block& b) { block(b); },
               },
               s.node);
  }

  void procedure(const ProcDef& p) {
    out_ << "(procedure " << p.name << " (";
    for (std::size_t i = 0; i < p.params.size(); ++i) {
      if (i) out_ << " ";
      out_ << to_string(p.params[i].type) << ":" << p.params[i].name;
    }
    out_ << ") ";
    block(p.body);
    out_ << ")\n";
  }

 private:
  void list(const char* head, const Expr& a, const Expr& b) {
    out_ << "(" << head << " ";
    expr(a);
    out_ << " ";
    expr(b);
    out_ << ")";
  }

  std::ostringstream out_;
};

}  // namespace

std::string format_program(const Program& program) {
  SourceWriter w;
  for (const auto& p : program.procedures) w.procedure(p);
  return w.str();
}

std::string dump(const Program& program) {
  SexprWriter w;
  for (const auto& p : program.procedures) w.procedure(p);
  return w.str();
}

}  // namespace qgrover::qcl
