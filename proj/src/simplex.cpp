#include "pgcl/simplex.hpp"

#include <cassert>
#include <stdexcept>

namespace pgcl {

namespace {

// Dense tableau: rows 0..m-1 are constraints, row m is the objective
// (reduced costs, maximization). Column layout: structural and artificial
// variables side by side; the last column is the right-hand side.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b)
      : m_(A.size()), n_(A.empty() ? 0 : A[0].size()) {
    rows_.assign(m_ + 1, std::vector<Rat>(n_ + m_ + 1, Rat(0)));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (A[i].size() != n_) throw std::invalid_argument("ragged LP matrix");
      bool flip = b[i] < 0;
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = flip ? -A[i][j] : A[i][j];
      rows_[i][rhs()] = flip ? -b[i] : b[i];
      rows_[i][n_ + i] = 1;  // artificial
      basis_[i] = n_ + i;
    }
  }

  // Phase 1: maximize -(sum of artificials). Returns true if feasible.
  bool phase1() {
    for (std::size_t j = 0; j <= rhs(); ++j) {
      Rat sum = 0;
      for (std::size_t i = 0; i < m_; ++i) sum += rows_[i][j];
      rows_[m_][j] = (j >= n_ && j < n_ + m_) ? sum - 1 : sum;
    }
    // objective row now holds sum of constraint rows minus artificial costs:
    // maximizing it drives the artificial sum to zero.
    run(n_ + m_);
    if (rows_[m_][rhs()] != 0) return false;
    // pivot remaining artificials out of the basis where possible
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t j = 0;
      for (; j < n_; ++j)
        if (rows_[i][j] != 0) break;
      if (j < n_) pivot(i, j);
      // else: the row is all zeros over structural columns (redundant)
    }
    return true;
  }

  // Phase 2: maximize c.x over structural columns. Returns false if unbounded.
  bool phase2(const std::vector<Rat>& c) {
    for (auto& v : rows_[m_]) v = 0;
    for (std::size_t j = 0; j < n_; ++j) rows_[m_][j] = c[j];
    // eliminate basic columns from the objective row
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) continue;
      Rat coef = rows_[m_][basis_[i]];
      if (coef == 0) continue;
      for (std::size_t j = 0; j <= rhs(); ++j) rows_[m_][j] -= coef * rows_[i][j];
    }
    return run(n_);
  }

  Rat objective() const { return -rows_[m_][rhs()]; }

  std::vector<Rat> solution() const {
    std::vector<Rat> x(n_, Rat(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rows_[i][rhs()];
    return x;
  }

 private:
  std::size_t rhs() const { return n_ + m_; }

  // Bland's rule; pivots until no improving column. Columns >= limit are
  // excluded (used to freeze artificials in phase 2). Returns false iff
  // unbounded.
  bool run(std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (rows_[m_][j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;  // optimal
      std::size_t leave = m_;
      Rat best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rat ratio = rows_[i][rhs()] / rows_[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Rat p = rows_[row][col];
    assert(p != 0);
    for (auto& v : rows_[row]) v /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      Rat f = rows_[i][col];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= rhs(); ++j) rows_[i][j] -= f * rows_[row][j];
    }
    basis_[row] = col;
  }

  std::size_t m_, n_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                  const std::vector<Rat>& c) {
  if (A.size() != b.size()) throw std::invalid_argument("LP row mismatch");
  LpResult res;
  Tableau t(A, b);
  if (!t.phase1()) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  if (!t.phase2(c)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.solution = t.solution();
  res.objective = 0;
  for (std::size_t j = 0; j < res.solution.size(); ++j)
    res.objective += c[j] * res.solution[j];
  return res;
}

bool lp_feasible(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b) {
  Tableau t(A, b);
  return t.phase1();
}

}  // namespace pgcl
