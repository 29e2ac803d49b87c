#pragma once

#include "pgcl/genset.hpp"

#include <string>
#include <vector>

namespace pgcl {

/// Bottom-layer formulas: observable properties of a single valuation.
/// Threshold(U, p) holds of mu iff mu gives the states in U mass strictly
/// greater than p, with p a rational in [0,1).
struct Inner {
  enum class Kind { Threshold, And, Or, Top, Bot };
  Kind kind = Kind::Top;
  CondPtr cond;  // Threshold
  Rat p;         // Threshold
  std::vector<Inner> kids;

  static Inner threshold(CondPtr U, Rat p);
  static Inner conj(std::vector<Inner> kids);
  static Inner disj(std::vector<Inner> kids);
  static Inner top() { return {}; }
  static Inner bot() {
    Inner f;
    f.kind = Kind::Bot;
    return f;
  }
};

/// Top-layer formulas over the nondeterministic structure: may (some
/// scheduler) and must (every non-blocking scheduler) around inner formulas.
struct Outer {
  enum class Kind { May, Must, And, Or, Top, Bot };
  Kind kind = Kind::Top;
  Inner body;  // May / Must
  std::vector<Outer> kids;

  static Outer may(Inner body);
  static Outer must(Inner body);
  static Outer conj(std::vector<Outer> kids);
  static Outer disj(std::vector<Outer> kids);
  static Outer top() { return {}; }
  static Outer bot() {
    Outer f;
    f.kind = Kind::Bot;
    return f;
  }
};

enum class Mode { Lower, Upper, Biconvex };

Mode mode_from_letter(char c);  // 'l' | 'u' | 'b'
OrderMode order_mode(Mode m);

/// Throws UnsupportedFormulaError when the formula falls outside the
/// adequacy fragment of the mode: Must is forbidden in Lower, May in Upper.
void check_fragment(const Outer& f, Mode m);

/// Semi-decision result: the property was certified at some approximant
/// depth, or the budget ran out without an answer (which is not a "no").
struct Verdict {
  bool holds = false;
  int depth = 0;  // witness depth when holds, else last depth fully explored
  bool resource_limited = false;
  std::string note;

  static Verdict holds_at(int n) { return {true, n, false, {}}; }
  static Verdict unknown(int budget) { return {false, budget, false, {}}; }
};

bool sat_valuation(const Valuation& mu, const Inner& phi, const Backend& backend);

/// Satisfaction of an outer formula by the basic element x(F), evaluated by
/// exact LP over conv F. May bodies are normalized to DNF and each disjunct
/// checked by the exists-LP; Must bodies must simplify to a conjunction of
/// thresholds (the fragment the upper procedure covers).
bool sat_genset(const GenSet& F, const Outer& phi, Mode mode, const Backend& backend);

/// Searches F_1, F_2, ... up to the budget for a depth at which the formula
/// holds. Sound by adequacy: a depth-n success certifies the operational
/// property. A false property yields Unknown at every budget.
Verdict semi_decide(const Config& c, const Outer& phi, Mode mode, int budget,
                    ExtensionEngine& engine);

/// Depth-bounded refinement: the powercone order between the two depth-n
/// approximants. Exact for programs whose executions all halt within n steps.
bool refines(const Config& cP, const Config& cQ, Mode mode, int n, ExtensionEngine& engine);

/// Concrete syntax: `may <inner>` / `must <inner>`, inner thresholds written
/// `P[<cond>] > <rational>` with `&`, `|`, `true`, `false`, parentheses;
/// outer clauses combine with `and` / `or`.
Outer parse_formula(const std::string& text, const Header& header);

}  // namespace pgcl
