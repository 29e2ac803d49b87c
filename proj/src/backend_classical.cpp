#include "pgcl/backend_classical.hpp"

#include "pgcl/diagnostics.hpp"

#include <algorithm>

namespace pgcl {

ClassicalBackend::ClassicalBackend(std::vector<std::string> vars,
                                   std::optional<Int> value_bound)
    : vars_(std::move(vars)), value_bound_(std::move(value_bound)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

StateKey ClassicalBackend::encode(const Store& store) const {
  std::string out;
  for (const auto& v : vars_) {
    auto it = store.find(v);
    out += v;
    out += '=';
    out += (it == store.end()) ? "0" : it->second.str();
    out += ';';
  }
  return StateKey{std::move(out)};
}

Store ClassicalBackend::decode(const StateKey& key) const {
  Store store;
  std::size_t i = 0;
  const std::string& s = key.bytes;
  while (i < s.size()) {
    std::size_t eq = s.find('=', i);
    std::size_t end = s.find(';', eq);
    if (eq == std::string::npos || end == std::string::npos)
      throw BackendError("malformed classical state key: " + s);
    store.emplace(s.substr(i, eq - i), Int(s.substr(eq + 1, end - eq - 1)));
    i = end + 1;
  }
  return store;
}

StateKey ClassicalBackend::initial_state(const Store& assignments) const {
  Store store;
  for (const auto& v : vars_) store[v] = 0;
  for (const auto& [k, val] : assignments) {
    if (!store.count(k)) throw BackendError("assignment to undeclared variable '" + k + "'");
    store[k] = val;
  }
  return encode(store);
}

void ClassicalBackend::check_bound(const Int& v) const {
  if (value_bound_ && (v > *value_bound_ || v < -*value_bound_))
    throw BackendError("integer value exceeds configured bound");
}

Int ClassicalBackend::eval_expr(const ExprPtr& e, const Store& store) const {
  switch (e->kind) {
    case Expr::Kind::Const:
      return e->value;
    case Expr::Kind::Var: {
      auto it = store.find(e->var);
      if (it == store.end()) throw BackendError("undeclared variable '" + e->var + "'");
      return it->second;
    }
    case Expr::Kind::Add:
      return eval_expr(e->lhs, store) + eval_expr(e->rhs, store);
    case Expr::Kind::Sub:
      return eval_expr(e->lhs, store) - eval_expr(e->rhs, store);
    case Expr::Kind::Mul:
      return eval_expr(e->lhs, store) * eval_expr(e->rhs, store);
    case Expr::Kind::Div: {
      Int d = eval_expr(e->rhs, store);
      if (d == 0) throw BackendError("division by zero");
      return eval_expr(e->lhs, store) / d;
    }
  }
  throw BackendError("unknown expression kind");
}

Valuation ClassicalBackend::interp_atomic(const Atomic& a, const StateKey& s) const {
  Store store = decode(s);
  switch (a.kind) {
    case Atomic::Kind::Assign: {
      Int v = eval_expr(a.expr, store);
      check_bound(v);
      store[a.var] = std::move(v);
      return Valuation::dirac(encode(store));
    }
    case Atomic::Kind::RandAssign: {
      std::vector<std::pair<StateKey, Rat>> pairs;
      pairs.reserve(a.branches.size());
      for (const auto& b : a.branches) {
        Store next = store;
        Int v = eval_expr(b.expr, store);
        check_bound(v);
        next[a.var] = std::move(v);
        pairs.emplace_back(encode(next), b.weight);
      }
      return Valuation::from_pairs(std::move(pairs));
    }
    default:
      throw BackendError("classical backend cannot interpret atomic '" +
                         atomic_to_string(a) + "'");
  }
}

bool ClassicalBackend::interp_cond(const CondPtr& c, const StateKey& s) const {
  Store store = decode(s);
  std::function<bool(const CondPtr&)> go = [&](const CondPtr& k) -> bool {
    switch (k->kind) {
      case Cond::Kind::True: return true;
      case Cond::Kind::False: return false;
      case Cond::Kind::Not: return !go(k->lhs);
      case Cond::Kind::And: return go(k->lhs) && go(k->rhs);
      case Cond::Kind::Or: return go(k->lhs) || go(k->rhs);
      case Cond::Kind::Cmp: {
        Int l = eval_expr(k->clhs, store);
        Int r = eval_expr(k->crhs, store);
        switch (k->op) {
          case CmpOp::Eq: return l == r;
          case CmpOp::Ne: return l != r;
          case CmpOp::Lt: return l < r;
          case CmpOp::Le: return l <= r;
          case CmpOp::Gt: return l > r;
          case CmpOp::Ge: return l >= r;
        }
      }
    }
    throw BackendError("unknown condition kind");
  };
  return go(c);
}

nlohmann::json ClassicalBackend::state_json(const StateKey& s) const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : decode(s)) j[k] = v.str();
  return j;
}

}  // namespace pgcl
