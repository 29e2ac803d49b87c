#pragma once

#include "pgcl/rational.hpp"

#include <vector>

namespace pgcl {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat objective;
  std::vector<Rat> solution;
};

/// maximize c.x subject to A x = b, x >= 0, in exact rational arithmetic.
/// Two-phase dense simplex with Bland's rule. Row count = |b|, column count
/// = |c|; every row of A must have |c| entries.
LpResult solve_lp(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                  const std::vector<Rat>& c);

/// Phase-1 only: is {x >= 0 | A x = b} non-empty?
bool lp_feasible(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b);

}  // namespace pgcl
