// Seeded random generators for programs, conditions and valuations, shared
// by the property tests and the acceptance corpus.
#pragma once

#include "pgcl/ast.hpp"
#include "pgcl/backend_classical.hpp"
#include "pgcl/smallstep.hpp"
#include "pgcl/valuation.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

namespace pgcl::testing {

inline std::vector<std::string> corpus_vars() { return {"x", "y", "z"}; }

class ProgramGen {
 public:
  explicit ProgramGen(std::uint32_t seed) : rng_(seed) {}

  std::mt19937& rng() { return rng_; }

  int pick(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  Rat pick_prob() {
    static const Rat probs[] = {Rat(1, 2), Rat(1, 3), Rat(1, 4), Rat(3, 4), Rat(2, 3)};
    return probs[pick(0, 4)];
  }

  std::string pick_var() { return corpus_vars()[pick(0, 2)]; }

  ExprPtr small_expr() {
    // stays within {0,1,2} when stores do
    if (pick(0, 1) == 0) return Expr::constant(pick(0, 2));
    return Expr::variable(pick_var());
  }

  CondPtr small_cond(int depth = 1) {
    int r = pick(0, depth > 0 ? 5 : 3);
    switch (r) {
      case 0: return Cond::compare(CmpOp::Eq, Expr::variable(pick_var()),
                                   Expr::constant(pick(0, 2)));
      case 1: return Cond::compare(CmpOp::Lt, Expr::variable(pick_var()),
                                   Expr::constant(pick(0, 2)));
      case 2: return Cond::compare(CmpOp::Ne, Expr::variable(pick_var()),
                                   Expr::constant(pick(0, 2)));
      case 3: return Cond::constant(pick(0, 1) == 0);
      case 4: return Cond::conj(small_cond(depth - 1), small_cond(depth - 1));
      default: return Cond::negate(small_cond(depth - 1));
    }
  }

  Program leaf() {
    switch (pick(0, 3)) {
      case 0: return Prog::skip();
      case 1: return Prog::atomic(Atomic::assign(pick_var(), small_expr()));
      case 2: return Prog::atomic(Atomic::assign(pick_var(), Expr::constant(pick(0, 2))));
      default: {
        std::vector<RandBranch> branches;
        if (pick(0, 1) == 0) {
          branches.push_back({Rat(1, 2), small_expr()});
          branches.push_back({Rat(1, 2), small_expr()});
        } else {
          branches.push_back({Rat(1, 4), small_expr()});
          branches.push_back({Rat(3, 4), small_expr()});
        }
        return Prog::atomic(Atomic::rand_assign(pick_var(), std::move(branches)));
      }
    }
  }

  /// Random program of AST depth <= depth. While-loops are rare and shallow
  /// so most of the corpus halts quickly.
  Program program(int depth, bool allow_while = true) {
    if (depth <= 0) return leaf();
    switch (pick(0, allow_while ? 13 : 12)) {
      case 0:
      case 1:
        return leaf();
      case 2:
      case 3:
        return Prog::seq(program(depth - 1, allow_while), program(depth - 1, allow_while));
      case 4:
      case 5:
        return Prog::par(program(depth - 1, allow_while), program(depth - 1, allow_while));
      case 6:
      case 7:
        return Prog::pchoice(pick_prob(), program(depth - 1, allow_while),
                             program(depth - 1, allow_while));
      case 8:
      case 9:
      case 10:
        return Prog::nchoice(program(depth - 1, allow_while), program(depth - 1, allow_while));
      case 11:
      case 12:
        return Prog::if_then_else(small_cond(), program(depth - 1, allow_while),
                                  program(depth - 1, allow_while));
      default:
        return Prog::while_loop(
            Cond::compare(CmpOp::Eq, Expr::variable(pick_var()), Expr::constant(pick(1, 2))),
            program(depth - 2 > 0 ? depth - 2 : 0, false));
    }
  }

 private:
  std::mt19937 rng_;
};

inline bool contains_kind(const Program& p, ProgNode::Kind k) {
  if (p->kind == k) return true;
  if (p->a && contains_kind(p->a, k)) return true;
  if (p->b && contains_kind(p->b, k)) return true;
  return false;
}

/// True iff every scheduler path from c halts within k steps (no pending
/// configuration survives k levels).
inline bool halts_within(const Config& c, const Backend& backend, int k,
                         std::size_t cap = 20000) {
  std::set<Config> level{c};
  for (int i = 0; i < k; ++i) {
    std::set<Config> next;
    for (const auto& cfg : level) {
      for (const auto& tv : step(cfg, backend)) {
        for (const auto& [key, w] : tv.entries())
          if (key.tag == OutcomeKey::Tag::Resume) next.insert({key.prog, key.state});
      }
      if (next.size() > cap) return false;
    }
    level = std::move(next);
    if (level.empty()) return true;
  }
  return level.empty();
}

struct CorpusEntry {
  Program program;
  bool has_par = false;
  bool has_pchoice = false;
};

/// Deterministic random corpus: at least `minimum` programs with the
/// guaranteed operator quotas (>= 10 with par, >= 10 with pchoice).
inline std::vector<CorpusEntry> make_corpus(std::uint32_t seed, std::size_t minimum = 30) {
  ProgramGen gen(seed);
  std::vector<CorpusEntry> corpus;
  std::set<std::string> seen;
  std::size_t with_par = 0, with_pchoice = 0;
  while (corpus.size() < minimum || with_par < 10 || with_pchoice < 10) {
    Program p = gen.program(4);
    if (!seen.insert(pretty_print(p)).second) continue;
    CorpusEntry e;
    e.program = p;
    e.has_par = contains_kind(p, ProgNode::Kind::Par);
    e.has_pchoice = contains_kind(p, ProgNode::Kind::PChoice);
    if (corpus.size() >= minimum) {  // quota top-up
      if (with_par < 10 && !e.has_par && with_pchoice >= 10) continue;
      if (with_pchoice < 10 && !e.has_pchoice && with_par >= 10) continue;
      if (with_par < 10 && with_pchoice < 10 && !e.has_par && !e.has_pchoice) continue;
    }
    with_par += e.has_par;
    with_pchoice += e.has_pchoice;
    corpus.push_back(std::move(e));
  }
  return corpus;
}

/// Random subprobability valuation over a small fixed key set, dyadic
/// weights, total mass <= 1.
inline Valuation random_valuation(std::mt19937& rng, int n_keys = 4) {
  std::uniform_int_distribution<int> w(0, 4);
  std::vector<std::pair<StateKey, Rat>> pairs;
  Rat mass = 0;
  for (int i = 0; i < n_keys; ++i) {
    Rat weight(w(rng), 16);
    if (weight == 0) continue;
    if (mass + weight > 1) break;
    mass += weight;
    pairs.emplace_back(StateKey{"s" + std::to_string(i)}, weight);
  }
  return Valuation::from_pairs(std::move(pairs));
}

}  // namespace pgcl::testing
