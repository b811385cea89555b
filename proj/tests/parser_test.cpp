#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "doctest.h"
#include "qgrover/qcl/parser.hpp"

using namespace qgrover::qcl;

namespace {

std::string corpus() {
  std::ifstream in(QGROVER_CORPUS);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string wrap(const std::string& body) { return "procedure p() {\n" + body + "\n}\n"; }

// Dump of the single statement inside `procedure p() { ... }`.
std::string stmt_dump(const std::string& stmt) {
  const std::string d = dump(parse_source(wrap(stmt)));
  const std::string prefix = "(procedure p () (block ";
  REQUIRE(d.rfind(prefix, 0) == 0);
  return d.substr(prefix.size(), d.size() - prefix.size() - 3);
}

ParseError parse_error(const std::string& src) {
  try {
    parse_source(src);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected ParseError for: " << src);
  throw;
}

}  // namespace

TEST_CASE("listing parses into four procedures") {
  const Program p = parse_source(corpus());
  REQUIRE(p.procedures.size() == 4);
  CHECK(p.procedures[0].name == "query");
  CHECK(p.procedures[1].name == "diffusi");
  CHECK(p.procedures[2].name == "algoritma");
  CHECK(p.procedures[3].name == "mulai");

  const auto& q = p.procedures[0];
  REQUIRE(q.params.size() == 3);
  CHECK(q.params[0].type == VarType::Qureg);
  CHECK(q.params[1].type == VarType::Quvoid);
  CHECK(q.params[2].type == VarType::Int);
  CHECK(p.procedures[3].params.empty());
}

TEST_CASE("sizing initializer structure") {
  CHECK(stmt_dump("int i = floor(log(bil,2))+1;") == "(decl int i = (+ (call floor (call log bil 2)) 1))");
  CHECK(stmt_dump("int iterasi = ceil(pi/8*sqrt(2^jmlqubit));") ==
        "(decl int iterasi = (call ceil (* (/ pi 8) (call sqrt (^ 2 jmlqubit)))))");
}

TEST_CASE("statement forms") {
  CHECK(stmt_dump("qureg q[jmlqubit];") == "(decl qureg q [jmlqubit])");
  CHECK(stmt_dump("for i=0 to #x-1 { Not(x[i]); }") ==
        "(for i 0 (- (width x) 1) (block (call Not (index x i))))");
  CHECK(stmt_dump("if not bit(bil,i) {!Not(x[i]);}") ==
        "(if (not (call bit bil i)) (block (adjoint Not (index x i))))");
  CHECK(stmt_dump("if a==1 { print 1; } else if a==2 { print 2; } else { print; }") ==
        "(if (== a 1) (block (print 1)) (if (== a 2) (block (print 2)) (block (print))))");
  CHECK(stmt_dump("{ reset; } until m==bil;") == "(until (block (reset)) (== m bil))");
  CHECK(stmt_dump("{ reset; }") == "(block (reset))");
  CHECK(stmt_dump("input \"Masukkan:\",bil;") == "(input \"Masukkan:\" bil)");
  CHECK(stmt_dump("input bil;") == "(input - bil)");
  CHECK(stmt_dump("measure q,hasil;") == "(measure q hasil)");
  CHECK(stmt_dump("print \"Iterasi\",i;") == "(print \"Iterasi\" i)");
  CHECK(stmt_dump("x = x + 1;") == "(assign x (+ x 1))");
  CHECK(stmt_dump("CPhase(pi,f);") == "(call CPhase pi f)");
}

TEST_CASE("operator precedence and associativity") {
  CHECK(stmt_dump("x = 1 + 2 * 3;") == "(assign x (+ 1 (* 2 3)))");
  CHECK(stmt_dump("x = 1 - 2 - 3;") == "(assign x (- (- 1 2) 3))");
  CHECK(stmt_dump("x = 2 ^ 3 ^ 2;") == "(assign x (^ 2 (^ 3 2)))");
  CHECK(stmt_dump("x = -2 ^ 2;") == "(assign x (- (^ 2 2)))");
  CHECK(stmt_dump("x = 2 ^ -1;") == "(assign x (^ 2 (- 1)))");
  CHECK(stmt_dump("x = (1 + 2) * 3;") == "(assign x (* (+ 1 2) 3))");
}

TEST_CASE("untyped parameters inherit the previous type") {
  const Program p = parse_source("procedure oracle(qureg q,int hasil,bil) { measure q,hasil; }");
  REQUIRE(p.procedures[0].params.size() == 3);
  CHECK(p.procedures[0].params[2].type == VarType::Int);
}

TEST_CASE("parse errors") {
  const auto empty = parse_error("");
  CHECK(empty.pos().line == 1);
  CHECK(empty.expected() == std::vector<std::string>{"'procedure'"});

  const auto truncated = parse_error("procedure p() {\n  for i=0 to");
  CHECK(truncated.pos().line == 2);
  CHECK(truncated.expected() == std::vector<std::string>{"expression"});

  CHECK_THROWS_AS(parse_source("procedure p() { int; }"), ParseError);
  CHECK_THROWS_AS(parse_source("procedure p() { qureg q; }"), ParseError);
  CHECK_THROWS_AS(parse_source("procedure p() { x; }"), ParseError);
  CHECK_THROWS_AS(parse_source("procedure p(a) { }"), ParseError);
  CHECK_THROWS_AS(parse_source("procedure p() { } procedure p() { }"), ParseError);
  CHECK_THROWS_AS(parse_source("procedure H() { }"), ParseError);
  CHECK_THROWS_AS(parse_source("procedure p() { x = 99999999999999999999; }"), ParseError);
  CHECK_THROWS_AS(parse_source("reset;"), ParseError);
}

TEST_CASE("format then parse gives the same tree for the listing") {
  const Program original = parse_source(corpus());
  const std::string formatted = format_program(original);
  const Program reparsed = parse_source(formatted);
  CHECK(dump(reparsed) == dump(original));
  CHECK(format_program(reparsed) == formatted);
}

TEST_CASE("property: format/parse round trip on generated expressions") {
  std::mt19937 rng(17);
  const std::vector<std::string> atoms = {"a", "1", "pi", "#q", "q[2]", "bit(a,1)", "floor(a)", "\"s\""};
  const std::vector<std::string> binops = {"+", "-", "*", "/", "^"};
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    if (depth == 0 || rng() % 3 == 0) return atoms[rng() % atoms.size()];
    switch (rng() % 4) {
      case 0: return "-" + gen(depth - 1);
      case 1: return "not " + gen(depth - 1);
      case 2: return "(" + gen(depth - 1) + ")";
      default: return gen(depth - 1) + binops[rng() % binops.size()] + gen(depth - 1);
    }
  };
  for (int i = 0; i < 300; ++i) {
    const std::string src = wrap("x = " + gen(4) + " == " + gen(3) + ";");
    CAPTURE(src);
    const Program p = parse_source(src);
    CHECK(dump(parse_source(format_program(p))) == dump(p));
  }
}
