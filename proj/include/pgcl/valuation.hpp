#pragma once

#include "pgcl/ast.hpp"
#include "pgcl/rational.hpp"

#include <compare>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace pgcl {

/// Canonical backend-state encoding. Equal bytes iff equal states.
struct StateKey {
  std::string bytes;
  auto operator<=>(const StateKey&) const = default;
};

/// Finite-support map from states to positive rationals with mass <= 1.
/// Entries are kept sorted with no zero weights, so structural equality is
/// semantic equality and the empty valuation is bottom.
class Valuation {
 public:
  Valuation() = default;

  static Valuation zero() { return {}; }
  static Valuation dirac(StateKey s) {
    Valuation v;
    v.entries_.emplace_back(std::move(s), Rat(1));
    return v;
  }
  /// From arbitrary (state, weight) pairs; merges duplicates, drops zeros.
  static Valuation from_pairs(std::vector<std::pair<StateKey, Rat>> pairs);

  const std::vector<std::pair<StateKey, Rat>>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  Rat mass() const;
  Rat at(const StateKey& s) const;  // 0 when absent

  /// r * v, pointwise. Requires r >= 0 and r*mass <= 1.
  Valuation scale(const Rat& r) const;
  /// v + w, pointwise. Requires mass(v)+mass(w) <= 1.
  Valuation add(const Valuation& w) const;
  /// Pointwise order: true iff (*this)(s) <= w(s) everywhere.
  bool leq(const Valuation& w) const;
  /// Sum of weights on states satisfying the predicate.
  Rat measure(const std::function<bool(const StateKey&)>& pred) const;

  bool operator==(const Valuation& o) const { return entries_ == o.entries_; }
  bool operator<(const Valuation& o) const;  // lexicographic, for canonical sets

  std::string to_string() const;  // debug: {key -> num/den, ...}

 private:
  std::vector<std::pair<StateKey, Rat>> entries_;
};

/// One small-step outcome: the program halted in a state, or resumes with a
/// continuation program in a state.
struct OutcomeKey {
  enum class Tag { Halt, Resume };
  Tag tag = Tag::Halt;
  Program prog;  // Resume only; interned, so id is canonical in-process
  StateKey state;

  std::strong_ordering operator<=>(const OutcomeKey& o) const {
    if (auto c = tag <=> o.tag; c != 0) return c;
    if (tag == Tag::Resume) {
      // order by canonical text so traces are stable across runs
      if (auto c = prog->repr <=> o.prog->repr; c != 0) return c;
    }
    return state <=> o.state;
  }
  bool operator==(const OutcomeKey& o) const { return (*this <=> o) == 0; }
};

/// Full-probability valuation over S + (Pr x S): the codomain of one step.
class TransitionValuation {
 public:
  TransitionValuation() = default;
  /// Merges duplicates, drops zeros, checks mass == 1.
  static TransitionValuation from_pairs(std::vector<std::pair<OutcomeKey, Rat>> pairs);

  const std::vector<std::pair<OutcomeKey, Rat>>& entries() const { return entries_; }

  bool operator==(const TransitionValuation& o) const { return entries_ == o.entries_; }
  bool operator<(const TransitionValuation& o) const;

  std::string to_string() const;

 private:
  std::vector<std::pair<OutcomeKey, Rat>> entries_;
};

}  // namespace pgcl
