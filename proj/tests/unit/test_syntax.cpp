#include "pgcl/parser.hpp"

#include "../support/generators.hpp"
#include "doctest.h"

#include <random>

using namespace pgcl;

namespace {

Program parse_classical(const std::string& body) {
  return parse_program_file("var x, y, z; " + body).program;
}

}  // namespace

TEST_CASE("base productions") {
  Program p = parse_program_file("skip").program;
  CHECK(p->kind == ProgNode::Kind::Skip);
  CHECK(pretty_print(p) == "skip");
}

TEST_CASE("parallel assignment example") {
  Program p = parse_classical("x := 0 || x := 1");
  REQUIRE(p->kind == ProgNode::Kind::Par);
  CHECK(p->a->kind == ProgNode::Kind::Atomic);
  CHECK(p->a->atom.kind == Atomic::Kind::Assign);
  CHECK(p->b->atom.kind == Atomic::Kind::Assign);
}

TEST_CASE("seq binds tighter than choice") {
  // "a ; b + c" groups as (a ; b) + c
  Program p = parse_classical("skip ; x := 1 + skip");
  // the expression cannot swallow 'skip', so the assign ends at the '+'
  REQUIRE(p->kind == ProgNode::Kind::NChoice);
  CHECK(p->a->kind == ProgNode::Kind::Seq);
  CHECK(p->b->kind == ProgNode::Kind::Skip);
}

TEST_CASE("par binds tighter than seq") {
  Program p = parse_classical("skip ; skip || x := 1");
  REQUIRE(p->kind == ProgNode::Kind::Seq);
  CHECK(p->b->kind == ProgNode::Kind::Par);

  Program q = parse_classical("skip || skip ; x := 1");
  REQUIRE(q->kind == ProgNode::Kind::Seq);
  CHECK(q->a->kind == ProgNode::Kind::Par);
}

TEST_CASE("left associativity") {
  Program p = parse_classical("skip ; skip ; skip");
  REQUIRE(p->kind == ProgNode::Kind::Seq);
  CHECK(p->a->kind == ProgNode::Kind::Seq);
  CHECK(p->b->kind == ProgNode::Kind::Skip);
}

TEST_CASE("probabilistic choice literals") {
  Program p = parse_classical("skip +[1/2] skip");
  REQUIRE(p->kind == ProgNode::Kind::PChoice);
  CHECK(p->prob == Rat(1, 2));
  CHECK(pretty_print(p) == "skip +[1/2] skip");

  Program q = parse_classical("skip +[0.25] skip");
  CHECK(q->prob == Rat(1, 4));
  // decimals normalize to exact fractions
  CHECK(pretty_print(q) == "skip +[1/4] skip");

  CHECK_THROWS_AS(parse_classical("skip +[3/2] skip"), ParseError);
}

TEST_CASE("choice '+' vs expression '+'") {
  Program p = parse_classical("x := 1 +[1/2] skip");
  REQUIRE(p->kind == ProgNode::Kind::PChoice);
  CHECK(pretty_print(p) == "(x := 1) +[1/2] skip");

  Program q = parse_classical("(x := 1) + skip");
  REQUIRE(q->kind == ProgNode::Kind::NChoice);

  // a '+' whose right side is no expression belongs to the program grammar
  CHECK(parse_classical("x := 1 + skip").get() == q.get());
  // while a well-formed expression keeps the '+'
  Program r = parse_classical("x := 1 + y");
  REQUIRE(r->kind == ProgNode::Kind::Atomic);
  CHECK(pretty_print(r) == "x := 1 + y");
}

TEST_CASE("pretty print examples") {
  CHECK(pretty_print(Prog::skip()) == "skip");
  CHECK(pretty_print(Prog::pchoice(Rat(1, 2), Prog::skip(), Prog::skip())) ==
        "skip +[1/2] skip");
  CHECK(pretty_print(Prog::par(Prog::skip(), Prog::skip())) == "skip || skip");
}

TEST_CASE("interning gives structural pointer equality") {
  Program a = parse_classical("skip ; x := 1");
  Program b = parse_classical("skip ; x := 1");
  CHECK(a.get() == b.get());
  Program c = parse_classical("skip ; x := 2");
  CHECK(a.get() != c.get());
}

TEST_CASE("errors carry spans") {
  try {
    parse_program_file("var x; y := 1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().start >= 7);
    CHECK(e.span().end <= 14);
  }
  CHECK_THROWS_AS(parse_program_file("var x; if x = 1 then { skip }"), ParseError);
  CHECK_THROWS_AS(parse_program_file("var x; while x < 3 skip"), ParseError);
  CHECK_THROWS_AS(parse_program_file("var x; x :~ {1/2: 0, 1/3: 1}"), ParseError);
  // unknown condition variable
  CHECK_THROWS_AS(parse_program_file("var x; while q = 1 { skip }"), ParseError);
}

TEST_CASE("quantum forms") {
  ProgramFile f = parse_program_file("bits 1 qubits 2; H(q1) ; M[x1 <- q2] ; q1 <- |0>");
  CHECK(f.header.kind == Header::Kind::Quantum);
  CHECK(f.header.bits == 1);
  CHECK(f.header.qubits == 2);
  CHECK(pretty_print(f.program) == "H(q1) ; M[x1 <- q2] ; q1 <- |0>");

  CHECK_THROWS_AS(parse_program_file("bits 1 qubits 1; FOO(q1)"), ParseError);
  CHECK_THROWS_AS(parse_program_file("bits 1 qubits 1; H(q2)"), ParseError);
  CHECK_THROWS_AS(parse_program_file("bits 1 qubits 1; M[x2 <- q1]"), ParseError);
  CHECK_THROWS_AS(parse_program_file("bits 1 qubits 2; CNOT(q1, q1)"), ParseError);
  // quantum conditions are bit tests only
  CHECK_THROWS_AS(parse_program_file("bits 1 qubits 1; while x1 < 1 { X(q1) }"), ParseError);
  CHECK_NOTHROW(parse_program_file("bits 2 qubits 1; if x1 = 0 && x2 = 1 then { X(q1) } else { skip }"));
}

TEST_CASE("custom gate names extend the parser") {
  std::set<std::string> extra{"RXX"};
  CHECK_NOTHROW(parse_program_file("bits 0 qubits 2; RXX(q1, q2)", &extra));
  CHECK_THROWS_AS(parse_program_file("bits 0 qubits 2; RXX(q1, q2)"), ParseError);
}

TEST_CASE("round trip on random programs") {
  testing::ProgramGen gen(20240811);
  for (int i = 0; i < 400; ++i) {
    Program p = gen.program(6);
    std::string text = "var x, y, z; " + pretty_print(p);
    Program q = parse_program_file(text).program;
    CHECK(q.get() == p.get());
  }
}

TEST_CASE("parser totality on random byte strings") {
  std::mt19937 rng(7);
  const std::string alphabet =
      "abcxyz012;|+[]{}()<>=!&~:/. \t\nwhileifskip";
  std::uniform_int_distribution<std::size_t> len(0, 40);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    std::size_t n = len(rng);
    for (std::size_t k = 0; k < n; ++k) s += alphabet[ch(rng)];
    try {
      parse_program_file(s);
    } catch (const ParseError&) {
      // located error is the contract
    }
  }
  // raw bytes, including non-ascii
  std::uniform_int_distribution<int> byte(0, 255);
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    for (int k = 0; k < 24; ++k) s += static_cast<char>(byte(rng));
    try {
      parse_program_file(s);
    } catch (const ParseError&) {
    }
  }
}
