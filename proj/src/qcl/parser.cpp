#include "qgrover/qcl/parser.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

namespace qgrover::qcl {

namespace {

constexpr std::array<std::string_view, 4> kGates = {"H", "Not", "CNot", "CPhase"};
constexpr std::array<std::string_view, 5> kFunctions = {"floor", "ceil", "log", "sqrt", "bit"};

std::string describe(const Token& t) {
  if (t.kind == TokenKind::End) return "end of input";
  if (t.kind == TokenKind::String) return "string \"" + t.text + "\"";
  return std::string(to_string(t.kind)) + " '" + t.text + "'";
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += (i + 1 == items.size()) ? " or " : ", ";
    out += items[i];
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {
    if (toks_.empty() || toks_.back().kind != TokenKind::End) {
      throw ParseError(SourcePos{}, "token stream must end with an end-of-input token");
    }
  }

  Program program() {
    Program prog;
    std::set<std::string> names;
    do {
      ProcDef def = procedure();
      if (is_builtin_gate(def.name) || is_builtin_function(def.name) || def.name == "pi") {
        throw ParseError(def.pos, "procedure name '" + def.name + "' is reserved");
      }
      if (!names.insert(def.name).second) {
        throw ParseError(def.pos, "procedure '" + def.name + "' defined twice");
      }
      prog.procedures.push_back(std::move(def));
    } while (peek().kind != TokenKind::End);
    return prog;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& advance() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.pos, "expected " + join(expected) + ", found " + describe(t), std::move(expected));
  }

  bool accept_symbol(std::string_view s) {
    if (peek().is_symbol(s)) {
      advance();
      return true;
    }
    return false;
  }
  bool accept_keyword(std::string_view k) {
    if (peek().is_keyword(k)) {
      advance();
      return true;
    }
    return false;
  }
  const Token& expect_symbol(std::string_view s) {
    if (!peek().is_symbol(s)) fail({"'" + std::string(s) + "'"});
    return advance();
  }
  const Token& expect_keyword(std::string_view k) {
    if (!peek().is_keyword(k)) fail({"'" + std::string(k) + "'"});
    return advance();
  }
  const Token& expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail({"identifier"});
    return advance();
  }

  static std::optional<VarType> type_keyword(const Token& t) {
    if (t.is_keyword("int")) return VarType::Int;
    if (t.is_keyword("qureg")) return VarType::Qureg;
    if (t.is_keyword("quvoid")) return VarType::Quvoid;
    return std::nullopt;
  }

  ProcDef procedure() {
    ProcDef def;
    def.pos = expect_keyword("procedure").pos;
    def.name = expect_identifier().text;
    expect_symbol("(");
    if (!peek().is_symbol(")")) {
      std::optional<VarType> current;
      do {
        Param p;
        p.pos = peek().pos;
        if (auto t = type_keyword(peek())) {
          advance();
          current = t;
        } else if (!current) {
          fail({"'int'", "'qureg'", "'quvoid'"});
        }
        // An untyped parameter inherits the type of the one before it.
        p.type = *current;
        p.name = expect_identifier().text;
        def.params.push_back(std::move(p));
      } while (accept_symbol(","));
    }
    expect_symbol(")");
    def.body = block();
    return def;
  }

  Block block() {
    expect_symbol("{");
    Block b;
    while (!peek().is_symbol("}")) {
      if (peek().kind == TokenKind::End) fail({"statement", "'}'"});
      b.statements.push_back(statement());
    }
    advance();
    return b;
  }

  template <typename T>
  StmtPtr make_stmt(T node, SourcePos pos) {
    auto s = std::make_unique<Stmt>();
    s->node = std::move(node);
    s->pos = pos;
    return s;
  }

  StmtPtr statement() {
    const Token& t = peek();
    const SourcePos pos = t.pos;
    if (auto type = type_keyword(t)) {
      advance();
      VarDecl decl;
      decl.type = *type;
      decl.name = expect_identifier().text;
      if (*type == VarType::Int) {
        if (accept_symbol("=")) decl.init = expression();
      } else {
        expect_symbol("[");
        decl.width = expression();
        expect_symbol("]");
      }
      expect_symbol(";");
      return make_stmt(std::move(decl), pos);
    }
    if (t.is_keyword("for")) {
      advance();
      ForLoop loop;
      loop.var = expect_identifier().text;
      expect_symbol("=");
      loop.from = expression();
      expect_keyword("to");
      loop.to = expression();
      loop.body = block();
      return make_stmt(std::move(loop), pos);
    }
    if (t.is_keyword("if")) return if_statement();
    if (t.is_symbol("{")) {
      Block body = block();
      if (accept_keyword("until")) {
        UntilLoop loop;
        loop.body = std::move(body);
        loop.cond = expression();
        expect_symbol(";");
        return make_stmt(std::move(loop), pos);
      }
      return make_stmt(std::move(body), pos);
    }
    if (t.is_keyword("input")) {
      advance();
      InputStmt in;
      if (peek().kind == TokenKind::String) {
        in.prompt = advance().text;
        expect_symbol(",");
      }
      in.var = expect_identifier().text;
      expect_symbol(";");
      return make_stmt(std::move(in), pos);
    }
    if (t.is_keyword("print")) {
      advance();
      PrintStmt pr;
      if (!peek().is_symbol(";")) {
        do {
          pr.args.push_back(expression());
        } while (accept_symbol(","));
      }
      expect_symbol(";");
      return make_stmt(std::move(pr), pos);
    }
    if (t.is_keyword("measure")) {
      advance();
      MeasureStmt m;
      m.reg = expression();
      expect_symbol(",");
      m.var = expect_identifier().text;
      expect_symbol(";");
      return make_stmt(std::move(m), pos);
    }
    if (t.is_keyword("reset")) {
      advance();
      expect_symbol(";");
      return make_stmt(ResetStmt{}, pos);
    }
    if (t.is_symbol("!")) {
      advance();
      CallStmt call = call_statement();
      call.inverted = true;
      return make_stmt(std::move(call), pos);
    }
    if (t.kind == TokenKind::Identifier) {
      if (peek(1).is_symbol("(")) return make_stmt(call_statement(), pos);
      if (peek(1).is_symbol("=")) {
        Assign a;
        a.name = advance().text;
        advance();
        a.value = expression();
        expect_symbol(";");
        return make_stmt(std::move(a), pos);
      }
      advance();
      fail({"'('", "'='"});
    }
    fail({"statement"});
  }

  StmtPtr if_statement() {
    const SourcePos pos = expect_keyword("if").pos;
    IfStmt s;
    s.cond = expression();
    s.then_branch = block();
    if (accept_keyword("else")) {
      if (peek().is_keyword("if")) {
        s.else_branch = if_statement();
      } else {
        const SourcePos else_pos = peek().pos;
        s.else_branch = make_stmt(block(), else_pos);
      }
    }
    return make_stmt(std::move(s), pos);
  }

  CallStmt call_statement() {
    CallStmt call;
    call.name = expect_identifier().text;
    call.args = arguments();
    expect_symbol(";");
    return call;
  }

  std::vector<ExprPtr> arguments() {
    expect_symbol("(");
    std::vector<ExprPtr> args;
    if (!peek().is_symbol(")")) {
      do {
        args.push_back(expression());
      } while (accept_symbol(","));
    }
    expect_symbol(")");
    return args;
  }

  template <typename T>
  ExprPtr make_expr(T node, SourcePos pos) {
    auto e = std::make_unique<Expr>();
    e->node = std::move(node);
    e->pos = pos;
    return e;
  }

  // expression := additive ['==' additive]
  ExprPtr expression() {
    ExprPtr lhs = additive();
    if (peek().is_symbol("==")) {
      const SourcePos pos = advance().pos;
      ExprPtr rhs = additive();
      return make_expr(BinaryExpr{BinaryOp::Eq, std::move(lhs), std::move(rhs)}, pos);
    }
    return lhs;
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    for (;;) {
      BinaryOp op;
      if (peek().is_symbol("+")) {
        op = BinaryOp::Add;
      } else if (peek().is_symbol("-")) {
        op = BinaryOp::Sub;
      } else {
        return lhs;
      }
      const SourcePos pos = advance().pos;
      lhs = make_expr(BinaryExpr{op, std::move(lhs), multiplicative()}, pos);
    }
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    for (;;) {
      BinaryOp op;
      if (peek().is_symbol("*")) {
        op = BinaryOp::Mul;
      } else if (peek().is_symbol("/")) {
        op = BinaryOp::Div;
      } else {
        return lhs;
      }
      const SourcePos pos = advance().pos;
      lhs = make_expr(BinaryExpr{op, std::move(lhs), unary()}, pos);
    }
  }

  ExprPtr unary() {
    const Token& t = peek();
    std::optional<UnaryOp> op;
    if (t.is_keyword("not")) {
      op = UnaryOp::Not;
    } else if (t.is_symbol("!")) {
      op = UnaryOp::Bang;
    } else if (t.is_symbol("-")) {
      op = UnaryOp::Negate;
    }
    if (!op) return power();
    const SourcePos pos = advance().pos;
    return make_expr(UnaryExpr{*op, unary()}, pos);
  }

  // power := postfix ['^' unary], right-associative.
  ExprPtr power() {
    ExprPtr base = postfix();
    if (peek().is_symbol("^")) {
      const SourcePos pos = advance().pos;
      return make_expr(BinaryExpr{BinaryOp::Pow, std::move(base), unary()}, pos);
    }
    return base;
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (peek().is_symbol("[")) {
      const SourcePos pos = advance().pos;
      ExprPtr index = expression();
      expect_symbol("]");
      e = make_expr(IndexExpr{std::move(e), std::move(index)}, pos);
    }
    return e;
  }

  ExprPtr primary() {
    const Token& t = peek();
    const SourcePos pos = t.pos;
    switch (t.kind) {
      case TokenKind::Integer: {
        std::int64_t value = 0;
        const auto* first = t.text.data();
        const auto* last = first + t.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) throw ParseError(pos, "integer literal out of range: " + t.text);
        advance();
        return make_expr(IntLiteral{value}, pos);
      }
      case TokenKind::String: {
        std::string text = advance().text;
        return make_expr(StringLiteral{std::move(text)}, pos);
      }
      case TokenKind::Identifier: {
        std::string name = advance().text;
        if (peek().is_symbol("(")) return make_expr(CallExpr{std::move(name), arguments()}, pos);
        return make_expr(VarRef{std::move(name)}, pos);
      }
      default:
        break;
    }
    if (t.is_symbol("(")) {
      advance();
      ExprPtr inner = expression();
      expect_symbol(")");
      return inner;
    }
    if (t.is_symbol("#")) {
      advance();
      return make_expr(WidthExpr{postfix()}, pos);
    }
    fail({"expression"});
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_builtin_gate(std::string_view name) {
  return std::find(kGates.begin(), kGates.end(), name) != kGates.end();
}

bool is_builtin_function(std::string_view name) {
  return std::find(kFunctions.begin(), kFunctions.end(), name) != kFunctions.end();
}

Program parse_program(std::span<const Token> tokens) { return Parser(tokens).program(); }

Program parse_source(std::string_view source) {
  const auto tokens = tokenize(source);
  return parse_program(tokens);
}

const char* to_string(VarType type) {
  switch (type) {
    case VarType::Int: return "int";
    case VarType::Qureg: return "qureg";
    case VarType::Quvoid: return "quvoid";
  }
  return "?";
}

const char* to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Not: return "not";
    case UnaryOp::Bang: return "!";
    case UnaryOp::Negate: return "-";
  }
  return "?";
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "^";
    case BinaryOp::Eq: return "==";
  }
  return "?";
}

}  // namespace qgrover::qcl
