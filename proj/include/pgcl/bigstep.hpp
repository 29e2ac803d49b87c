#pragma once

#include "pgcl/smallstep.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace pgcl {

/// Decision history: the configurations visited so far, each paired with the
/// transition valuation the scheduler picked there, plus the current one.
struct History {
  struct Entry {
    Config cfg;
    TransitionValuation chosen;  // member of step(cfg)
  };
  std::vector<Entry> past;
  Config current;

  History extended(const TransitionValuation& chosen, Config next) const {
    History h;
    h.past = past;
    h.past.push_back({current, chosen});
    h.current = std::move(next);
    return h;
  }

  /// Canonical encoding, the scheduler-map key.
  std::string key() const;
};

/// Probability-weighted choice over the canonical ordering of step(cfg).
using SchedulerChoice = std::vector<std::pair<Rat, std::size_t>>;

/// Finite partial map from histories to distributions over available
/// transitions; weights are positive rationals summing to 1.
class RandomizedScheduler {
 public:
  void set(const History& h, SchedulerChoice choice);
  const SchedulerChoice* choose(const History& h) const;
  std::size_t size() const { return choices_.size(); }

 private:
  std::map<std::string, SchedulerChoice> choices_;
};

/// n-step partial evaluation of the history's current configuration under
/// the scheduler. Returns nullopt when the scheduler is undefined on any
/// required history (blocked).
std::optional<Valuation> evaluate(const RandomizedScheduler& sch, const History& h, int n,
                                  const Backend& backend);

struct OracleBudget {
  std::size_t max_set = 2000000;   // outcome-set size cap
  std::size_t max_partial = 4000000;
};

/// All n-step outcomes realizable by schedulers that always pick a single
/// transition, with choices independent per branch. Canonically sorted.
std::vector<Valuation> det_outcomes(const Config& c, int n, const Backend& backend,
                                    const OracleBudget& budget = {});

/// Builds a scheduler defined on every history reachable within `depth`
/// steps, choosing random subsets of transitions with random rational
/// weights. Deterministic in the RNG.
RandomizedScheduler make_random_scheduler(const Config& c, int depth, const Backend& backend,
                                          std::mt19937& rng);

/// Repeated evaluation yields structurally identical results.
bool check_determinism(const RandomizedScheduler& sch, const Config& c, int n,
                       const Backend& backend);

/// evaluate at n is pointwise below evaluate at n+1.
bool check_monotonicity(const RandomizedScheduler& sch, const Config& c, int n,
                        const Backend& backend);

}  // namespace pgcl
