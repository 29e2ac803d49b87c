#pragma once

#include "pgcl/backend.hpp"

#include <map>
#include <optional>
#include <string>

namespace pgcl {

/// Classical stores: finite maps from declared variables to integers.
using Store = std::map<std::string, Int>;

class ClassicalBackend : public Backend {
 public:
  explicit ClassicalBackend(std::vector<std::string> vars,
                            std::optional<Int> value_bound = std::nullopt);

  Valuation interp_atomic(const Atomic& a, const StateKey& s) const override;
  bool interp_cond(const CondPtr& c, const StateKey& s) const override;
  nlohmann::json state_json(const StateKey& s) const override;

  /// All declared variables set to 0, overridden by the given assignments.
  StateKey initial_state(const Store& assignments = {}) const;

  StateKey encode(const Store& store) const;
  Store decode(const StateKey& key) const;

  Int eval_expr(const ExprPtr& e, const Store& store) const;

  const std::vector<std::string>& variables() const { return vars_; }

 private:
  void check_bound(const Int& v) const;

  std::vector<std::string> vars_;  // sorted
  std::optional<Int> value_bound_; // |value| cap for fuzzing, unset = unbounded
};

}  // namespace pgcl
