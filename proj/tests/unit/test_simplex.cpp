#include "pgcl/simplex.hpp"

#include "doctest.h"

#include <random>

using namespace pgcl;

TEST_CASE("feasibility of simple systems") {
  // x0 + x1 = 1, x >= 0
  CHECK(lp_feasible({{Rat(1), Rat(1)}}, {Rat(1)}));
  // x0 = -1 infeasible over x >= 0 after normalization: -x0 = 1
  CHECK(!lp_feasible({{Rat(1)}}, {Rat(-1)}));
  // x0 = 2, x0 = 3 contradictory
  CHECK(!lp_feasible({{Rat(1)}, {Rat(1)}}, {Rat(2), Rat(3)}));
  // redundant rows are fine
  CHECK(lp_feasible({{Rat(1), Rat(0)}, {Rat(1), Rat(0)}}, {Rat(2), Rat(2)}));
}

TEST_CASE("optimization") {
  // maximize x0 subject to x0 + x1 = 1: optimum 1
  LpResult r = solve_lp({{Rat(1), Rat(1)}}, {Rat(1)}, {Rat(1), Rat(0)});
  CHECK(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rat(1));
  CHECK(r.solution[0] == Rat(1));

  // maximize x0 + 2 x1, x0 + x1 = 1 -> 2 at (0,1)
  r = solve_lp({{Rat(1), Rat(1)}}, {Rat(1)}, {Rat(1), Rat(2)});
  CHECK(r.objective == Rat(2));

  // maximize x0 with x0 - x1 = 0 is unbounded
  r = solve_lp({{Rat(1), Rat(-1)}}, {Rat(0)}, {Rat(1), Rat(0)});
  CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("exactness with awkward rationals") {
  // x0*(1/3) + x1*(1/7) = 10/21 with x0 + x1 = 2 -> x0 = x1 = 1
  LpResult r = solve_lp({{Rat(1, 3), Rat(1, 7)}, {Rat(1), Rat(1)}},
                        {Rat(10, 21), Rat(2)}, {Rat(0), Rat(0)});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.solution[0] * Rat(1, 3) + r.solution[1] * Rat(1, 7) == Rat(10, 21));
  CHECK(r.solution[0] + r.solution[1] == Rat(2));
}

TEST_CASE("solutions satisfy the constraints exactly (random systems)") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int iter = 0; iter < 120; ++iter) {
    std::size_t m = 1 + iter % 3, n = 2 + iter % 4;
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(n));
    std::vector<Rat> x0(n);
    for (auto& v : x0) v = Rat(std::abs(coef(rng)), 2);
    std::vector<Rat> b(m, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        A[i][j] = Rat(coef(rng), 1 + (iter % 2));
        b[i] += A[i][j] * x0[j];
      }
    }
    // x0 >= 0 satisfies Ax=b by construction, so the LP must be feasible
    // and any reported solution must satisfy the constraints exactly.
    std::vector<Rat> c(n, Rat(1));
    LpResult r = solve_lp(A, b, c);
    if (r.status == LpStatus::Optimal) {
      for (std::size_t i = 0; i < m; ++i) {
        Rat lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += A[i][j] * r.solution[j];
        CHECK(lhs == b[i]);
        for (std::size_t j = 0; j < n; ++j) CHECK(r.solution[j] >= 0);
      }
    } else {
      CHECK(r.status == LpStatus::Unbounded);  // never infeasible by construction
    }
  }
}
