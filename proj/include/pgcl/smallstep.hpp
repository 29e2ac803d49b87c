#pragma once

#include "pgcl/backend.hpp"
#include "pgcl/valuation.hpp"

#include <map>
#include <set>

namespace pgcl {

struct Config {
  Program prog;
  StateKey state;

  bool operator==(const Config& o) const {
    return prog.get() == o.prog.get() && state == o.state;
  }
  bool operator<(const Config& o) const {
    if (prog->id != o.prog->id) return prog->id < o.prog->id;
    return state < o.state;
  }
};

/// Finite set of one-step transition valuations, canonical and deduplicated.
using TransitionSet = std::vector<TransitionValuation>;

/// Labels of the one-step rules, for coverage instrumentation.
enum class StepRule {
  Skip,
  AtomicProg,
  Seq,
  ParLeft,
  ParRight,
  PChoice,
  NChoiceLeft,
  NChoiceRight,
  IfTrue,
  IfFalse,
  WhileTrue,
  WhileFalse,
};

using RuleCounter = std::map<StepRule, std::size_t>;

/// All one-step transitions of the configuration. Never empty.
/// `rules`, when given, accumulates which rules fired.
TransitionSet step(const Config& c, const Backend& backend, RuleCounter* rules = nullptr);

/// States appearing in any outcome within n iterated steps (includes the
/// start state). Throws BudgetExceededError past `max_states`.
std::set<StateKey> reachable_states(const Config& c, const Backend& backend, int n,
                                    std::size_t max_states = 100000);

/// Debug trace: one line per transition, "<config> --> <valuation>".
std::string step_trace(const Config& c, const Backend& backend);

}  // namespace pgcl
