#include "pgcl/ast.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace pgcl {

// ---------------------------------------------------------------------------
// Integer expressions

ExprPtr Expr::constant(Int v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Const;
  e->value = std::move(v);
  return e;
}

ExprPtr Expr::variable(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->var = std::move(name);
  return e;
}

ExprPtr Expr::binary(Kind op, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

namespace {

// levels: 0 additive, 1 multiplicative, 2 atom
void print_expr(const ExprPtr& e, int min_level, std::string& out) {
  auto infix = [&](const char* op, int level) {
    bool paren = level < min_level;
    if (paren) out += "(";
    print_expr(e->lhs, level, out);
    out += op;
    print_expr(e->rhs, level + 1, out);
    if (paren) out += ")";
  };
  switch (e->kind) {
    case Expr::Kind::Const:
      out += e->value.str();
      break;
    case Expr::Kind::Var:
      out += e->var;
      break;
    case Expr::Kind::Add:
      infix(" + ", 0);
      break;
    case Expr::Kind::Sub:
      infix(" - ", 0);
      break;
    case Expr::Kind::Mul:
      infix(" * ", 1);
      break;
    case Expr::Kind::Div:
      infix(" / ", 1);
      break;
  }
}

}  // namespace

std::string expr_to_string(const ExprPtr& e) {
  std::string out;
  print_expr(e, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Conditions

CondPtr Cond::constant(bool v) {
  auto c = std::make_shared<Cond>();
  c->kind = v ? Kind::True : Kind::False;
  return c;
}

CondPtr Cond::compare(CmpOp op, ExprPtr l, ExprPtr r) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Cmp;
  c->op = op;
  c->clhs = std::move(l);
  c->crhs = std::move(r);
  return c;
}

CondPtr Cond::negate(CondPtr inner) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Not;
  c->lhs = std::move(inner);
  return c;
}

CondPtr Cond::conj(CondPtr l, CondPtr r) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::And;
  c->lhs = std::move(l);
  c->rhs = std::move(r);
  return c;
}

CondPtr Cond::disj(CondPtr l, CondPtr r) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Or;
  c->lhs = std::move(l);
  c->rhs = std::move(r);
  return c;
}

namespace {

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return " = ";
    case CmpOp::Ne: return " != ";
    case CmpOp::Lt: return " < ";
    case CmpOp::Le: return " <= ";
    case CmpOp::Gt: return " > ";
    case CmpOp::Ge: return " >= ";
  }
  return "?";
}

// levels: 0 or, 1 and, 2 not, 3 atom
void print_cond(const CondPtr& c, int min_level, std::string& out) {
  auto infix = [&](const char* op, int level) {
    bool paren = level < min_level;
    if (paren) out += "(";
    print_cond(c->lhs, level, out);
    out += op;
    print_cond(c->rhs, level + 1, out);
    if (paren) out += ")";
  };
  switch (c->kind) {
    case Cond::Kind::True:
      out += "true";
      break;
    case Cond::Kind::False:
      out += "false";
      break;
    case Cond::Kind::Cmp:
      print_expr(c->clhs, 0, out);
      out += cmp_op_text(c->op);
      print_expr(c->crhs, 0, out);
      break;
    case Cond::Kind::Not: {
      bool paren = 2 < min_level;
      if (paren) out += "(";
      out += "!";
      print_cond(c->lhs, 3, out);
      if (paren) out += ")";
      break;
    }
    case Cond::Kind::And:
      infix(" && ", 1);
      break;
    case Cond::Kind::Or:
      infix(" || ", 0);
      break;
  }
}

}  // namespace

std::string cond_to_string(const CondPtr& c) {
  std::string out;
  print_cond(c, 0, out);
  return out;
}

namespace {
void expr_variables(const ExprPtr& e, std::vector<std::string>& out) {
  if (!e) return;
  if (e->kind == Expr::Kind::Var) out.push_back(e->var);
  expr_variables(e->lhs, out);
  expr_variables(e->rhs, out);
}
}  // namespace

void cond_variables(const CondPtr& c, std::vector<std::string>& out) {
  if (!c) return;
  if (c->kind == Cond::Kind::Cmp) {
    expr_variables(c->clhs, out);
    expr_variables(c->crhs, out);
  }
  cond_variables(c->lhs, out);
  cond_variables(c->rhs, out);
}

// ---------------------------------------------------------------------------
// Atomic programs

Atomic Atomic::assign(std::string var, ExprPtr e) {
  Atomic a;
  a.kind = Kind::Assign;
  a.var = std::move(var);
  a.expr = std::move(e);
  return a;
}

Atomic Atomic::rand_assign(std::string var, std::vector<RandBranch> branches) {
  if (branches.empty()) throw std::invalid_argument("rand_assign: no branches");
  Rat total = 0;
  for (const auto& b : branches) {
    if (b.weight <= 0) throw std::invalid_argument("rand_assign: weights must be positive");
    total += b.weight;
  }
  if (total != 1) throw std::invalid_argument("rand_assign: weights must sum to 1");
  Atomic a;
  a.kind = Kind::RandAssign;
  a.var = std::move(var);
  a.branches = std::move(branches);
  return a;
}

Atomic Atomic::apply_gate(std::string name, std::vector<int> qubits) {
  Atomic a;
  a.kind = Kind::Gate;
  a.gate = std::move(name);
  a.qubits = std::move(qubits);
  return a;
}

Atomic Atomic::reset(int qubit) {
  Atomic a;
  a.kind = Kind::Reset;
  a.qubit = qubit;
  return a;
}

Atomic Atomic::measure(int bit, int qubit) {
  Atomic a;
  a.kind = Kind::Measure;
  a.bit = bit;
  a.qubit = qubit;
  return a;
}

std::string atomic_to_string(const Atomic& a) {
  switch (a.kind) {
    case Atomic::Kind::Assign:
      return a.var + " := " + expr_to_string(a.expr);
    case Atomic::Kind::RandAssign: {
      std::string out = a.var + " :~ {";
      bool first = true;
      for (const auto& b : a.branches) {
        if (!first) out += ", ";
        first = false;
        out += rat_to_string(b.weight) + ": " + expr_to_string(b.expr);
      }
      out += "}";
      return out;
    }
    case Atomic::Kind::Gate: {
      std::string out = a.gate + "(";
      bool first = true;
      for (int q : a.qubits) {
        if (!first) out += ", ";
        first = false;
        out += "q" + std::to_string(q);
      }
      out += ")";
      return out;
    }
    case Atomic::Kind::Reset:
      return "q" + std::to_string(a.qubit) + " <- |0>";
    case Atomic::Kind::Measure:
      return "M[x" + std::to_string(a.bit) + " <- q" + std::to_string(a.qubit) + "]";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Program interning

namespace {

// Concrete-syntax precedence levels: 0 choice, 1 seq, 2 par, 3 unit.
int prog_level(ProgNode::Kind k) {
  switch (k) {
    case ProgNode::Kind::PChoice:
    case ProgNode::Kind::NChoice:
      return 0;
    case ProgNode::Kind::Seq:
      return 1;
    case ProgNode::Kind::Par:
      return 2;
    default:
      return 3;
  }
}

// A trailing `x := e` leaves an expression open on the right, which would
// swallow a following choice '+'; such operands get defensive parentheses.
bool ends_with_open_expr(const Program& p) {
  switch (p->kind) {
    case ProgNode::Kind::Atomic:
      return p->atom.kind == Atomic::Kind::Assign;
    case ProgNode::Kind::Seq:
    case ProgNode::Kind::Par:
    case ProgNode::Kind::PChoice:
    case ProgNode::Kind::NChoice:
      return ends_with_open_expr(p->b);
    default:
      return false;
  }
}

std::string render(const ProgNode& n) {
  auto child = [&](const Program& p, int min_level, bool guard_expr = false) {
    if (prog_level(p->kind) < min_level || (guard_expr && ends_with_open_expr(p)))
      return "(" + p->repr + ")";
    return p->repr;
  };
  switch (n.kind) {
    case ProgNode::Kind::Skip:
      return "skip";
    case ProgNode::Kind::Atomic:
      return atomic_to_string(n.atom);
    case ProgNode::Kind::Seq:
      return child(n.a, 1) + " ; " + child(n.b, 2);
    case ProgNode::Kind::Par:
      return child(n.a, 2) + " || " + child(n.b, 3);
    case ProgNode::Kind::PChoice:
      return child(n.a, 0, true) + " +[" + rat_to_string(n.prob) + "] " + child(n.b, 1);
    case ProgNode::Kind::NChoice:
      return child(n.a, 0, true) + " + " + child(n.b, 1);
    case ProgNode::Kind::If:
      return "if " + cond_to_string(n.cond) + " then { " + n.a->repr + " } else { " +
             n.b->repr + " }";
    case ProgNode::Kind::While:
      return "while " + cond_to_string(n.cond) + " { " + n.a->repr + " }";
  }
  return "?";
}

Program intern(ProgNode node) {
  static std::mutex mu;
  static std::unordered_map<std::string, Program> table;
  static std::uint64_t next_id = 1;

  node.repr = render(node);
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(node.repr);
  if (it != table.end()) return it->second;
  node.id = next_id++;
  auto p = std::make_shared<const ProgNode>(std::move(node));
  table.emplace(p->repr, p);
  return p;
}

}  // namespace

Program Prog::skip() {
  ProgNode n;
  n.kind = ProgNode::Kind::Skip;
  return intern(std::move(n));
}

Program Prog::atomic(Atomic a) {
  ProgNode n;
  n.kind = ProgNode::Kind::Atomic;
  n.atom = std::move(a);
  return intern(std::move(n));
}

Program Prog::seq(Program a, Program b) {
  ProgNode n;
  n.kind = ProgNode::Kind::Seq;
  n.a = std::move(a);
  n.b = std::move(b);
  return intern(std::move(n));
}

Program Prog::par(Program a, Program b) {
  ProgNode n;
  n.kind = ProgNode::Kind::Par;
  n.a = std::move(a);
  n.b = std::move(b);
  return intern(std::move(n));
}

Program Prog::pchoice(Rat p, Program a, Program b) {
  if (p < 0 || p > 1) throw std::invalid_argument("pchoice: probability outside [0,1]");
  ProgNode n;
  n.kind = ProgNode::Kind::PChoice;
  n.prob = std::move(p);
  n.a = std::move(a);
  n.b = std::move(b);
  return intern(std::move(n));
}

Program Prog::nchoice(Program a, Program b) {
  ProgNode n;
  n.kind = ProgNode::Kind::NChoice;
  n.a = std::move(a);
  n.b = std::move(b);
  return intern(std::move(n));
}

Program Prog::if_then_else(CondPtr c, Program a, Program b) {
  ProgNode n;
  n.kind = ProgNode::Kind::If;
  n.cond = std::move(c);
  n.a = std::move(a);
  n.b = std::move(b);
  return intern(std::move(n));
}

Program Prog::while_loop(CondPtr c, Program body) {
  ProgNode n;
  n.kind = ProgNode::Kind::While;
  n.cond = std::move(c);
  n.a = std::move(body);
  return intern(std::move(n));
}

const std::string& pretty_print(const Program& p) { return p->repr; }

}  // namespace pgcl
