#pragma once

#include "pgcl/rational.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pgcl {

// ---------------------------------------------------------------------------
// Integer expressions (classical backend)

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Const, Var, Add, Sub, Mul, Div };
  Kind kind{};
  Int value;        // Const
  std::string var;  // Var
  ExprPtr lhs, rhs;

  static ExprPtr constant(Int v);
  static ExprPtr variable(std::string name);
  static ExprPtr binary(Kind op, ExprPtr l, ExprPtr r);
};

std::string expr_to_string(const ExprPtr& e);

// ---------------------------------------------------------------------------
// Conditions: boolean algebra over comparisons / bit tests

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Cond;
using CondPtr = std::shared_ptr<const Cond>;

struct Cond {
  enum class Kind { True, False, Cmp, Not, And, Or };
  Kind kind{};
  CmpOp op{};         // Cmp
  ExprPtr clhs, crhs; // Cmp
  CondPtr lhs, rhs;   // Not (lhs), And, Or

  static CondPtr constant(bool v);
  static CondPtr compare(CmpOp op, ExprPtr l, ExprPtr r);
  static CondPtr negate(CondPtr c);
  static CondPtr conj(CondPtr l, CondPtr r);
  static CondPtr disj(CondPtr l, CondPtr r);
};

std::string cond_to_string(const CondPtr& c);

/// Collects the variable names the condition mentions into out.
void cond_variables(const CondPtr& c, std::vector<std::string>& out);

// ---------------------------------------------------------------------------
// Atomic programs. One tagged union covers both shipped backends; a backend
// rejects kinds it does not interpret.

struct RandBranch {
  Rat weight;  // > 0, branch weights sum to 1
  ExprPtr expr;
};

struct Atomic {
  enum class Kind { Assign, RandAssign, Gate, Reset, Measure };
  Kind kind{};

  std::string var;                  // Assign / RandAssign target
  ExprPtr expr;                     // Assign
  std::vector<RandBranch> branches; // RandAssign

  std::string gate;                 // Gate name
  std::vector<int> qubits;          // Gate operands (1-based)
  int qubit = 0;                    // Reset / Measure source qubit (1-based)
  int bit = 0;                      // Measure target bit (1-based)

  static Atomic assign(std::string var, ExprPtr e);
  static Atomic rand_assign(std::string var, std::vector<RandBranch> branches);
  static Atomic apply_gate(std::string name, std::vector<int> qubits);
  static Atomic reset(int qubit);
  static Atomic measure(int bit, int qubit);
};

std::string atomic_to_string(const Atomic& a);

// ---------------------------------------------------------------------------
// Programs. Nodes are hash-consed: structurally equal trees share one node,
// so pointer equality is structural equality and the cached text is the
// canonical pretty-print.

struct ProgNode;
using Program = std::shared_ptr<const ProgNode>;

struct ProgNode {
  enum class Kind { Skip, Atomic, Seq, Par, PChoice, NChoice, If, While };
  Kind kind{};
  Atomic atom;     // Atomic
  Rat prob;        // PChoice, in [0,1]
  CondPtr cond;    // If / While
  Program a, b;    // children (While uses a only)

  std::uint64_t id = 0;  // intern id, unique per structure within a process
  std::string repr;      // canonical source text
};

struct Prog {
  static Program skip();
  static Program atomic(Atomic a);
  static Program seq(Program a, Program b);
  static Program par(Program a, Program b);
  static Program pchoice(Rat p, Program a, Program b);
  static Program nchoice(Program a, Program b);
  static Program if_then_else(CondPtr c, Program a, Program b);
  static Program while_loop(CondPtr c, Program body);
};

/// Canonical concrete syntax; parse_program(pretty_print(p)) == p.
const std::string& pretty_print(const Program& p);

// ---------------------------------------------------------------------------
// Program files: header + body

struct Header {
  enum class Kind { Classical, Quantum };
  Kind kind = Kind::Classical;
  std::vector<std::string> vars;  // classical
  int bits = 0;                   // quantum
  int qubits = 0;                 // quantum
};

struct ProgramFile {
  Header header;
  Program program;
};

}  // namespace pgcl
