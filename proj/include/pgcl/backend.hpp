#pragma once

#include "pgcl/ast.hpp"
#include "pgcl/valuation.hpp"

#include "json.hpp"

namespace pgcl {

/// Instantiation of the language's parameters: the state space (as canonical
/// keys), atomic-program interpretations S -> V_{=1}(S), and conditions
/// S -> bool. Implementations must be pure per key and thread-safe.
class Backend {
 public:
  virtual ~Backend() = default;

  /// Full-probability, finite-support valuation; the meaning of one atomic.
  virtual Valuation interp_atomic(const Atomic& a, const StateKey& s) const = 0;

  virtual bool interp_cond(const CondPtr& c, const StateKey& s) const = 0;

  /// Backend-specific JSON rendering of a state (for reports/dumps).
  virtual nlohmann::json state_json(const StateKey& s) const = 0;
};

}  // namespace pgcl
