#include "pgcl/smallstep.hpp"

#include "pgcl/diagnostics.hpp"

#include <algorithm>

namespace pgcl {

namespace {

void bump(RuleCounter* rules, StepRule r) {
  if (rules) ++(*rules)[r];
}

TransitionSet dedup(TransitionSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

// Rewrites the outcomes of one premise transition: halted states become
// resumptions of `onto_halt`, continuations are wrapped by `wrap`.
TransitionValuation push_continuation(const TransitionValuation& tv, const Program& onto_halt,
                                      const std::function<Program(const Program&)>& wrap) {
  std::vector<std::pair<OutcomeKey, Rat>> pairs;
  pairs.reserve(tv.entries().size());
  for (const auto& [key, w] : tv.entries()) {
    OutcomeKey out;
    out.tag = OutcomeKey::Tag::Resume;
    out.state = key.state;
    out.prog = (key.tag == OutcomeKey::Tag::Halt) ? onto_halt : wrap(key.prog);
    pairs.emplace_back(std::move(out), w);
  }
  return TransitionValuation::from_pairs(std::move(pairs));
}

TransitionValuation mix(const Rat& p, const TransitionValuation& mu,
                        const TransitionValuation& nu) {
  std::vector<std::pair<OutcomeKey, Rat>> pairs;
  pairs.reserve(mu.entries().size() + nu.entries().size());
  for (const auto& [key, w] : mu.entries()) {
    Rat pw = p * w;
    if (pw != 0) pairs.emplace_back(key, pw);
  }
  Rat q = 1 - p;
  for (const auto& [key, w] : nu.entries()) {
    Rat qw = q * w;
    if (qw != 0) pairs.emplace_back(key, qw);
  }
  return TransitionValuation::from_pairs(std::move(pairs));
}

}  // namespace

TransitionSet step(const Config& c, const Backend& backend, RuleCounter* rules) {
  const ProgNode& n = *c.prog;
  try {
    switch (n.kind) {
      case ProgNode::Kind::Skip: {
        bump(rules, StepRule::Skip);
        OutcomeKey halt{OutcomeKey::Tag::Halt, nullptr, c.state};
        return {TransitionValuation::from_pairs({{halt, Rat(1)}})};
      }
      case ProgNode::Kind::Atomic: {
        bump(rules, StepRule::AtomicProg);
        Valuation v = backend.interp_atomic(n.atom, c.state);
        if (v.mass() != 1)
          throw BackendError("atomic interpretation is not full-probability");
        std::vector<std::pair<OutcomeKey, Rat>> pairs;
        for (const auto& [s, w] : v.entries())
          pairs.push_back({{OutcomeKey::Tag::Halt, nullptr, s}, w});
        return {TransitionValuation::from_pairs(std::move(pairs))};
      }
      case ProgNode::Kind::Seq: {
        bump(rules, StepRule::Seq);
        TransitionSet out;
        for (const auto& tv : step({n.a, c.state}, backend, rules))
          out.push_back(push_continuation(
              tv, n.b, [&](const Program& pi) { return Prog::seq(pi, n.b); }));
        return dedup(std::move(out));
      }
      case ProgNode::Kind::Par: {
        TransitionSet out;
        bump(rules, StepRule::ParLeft);
        for (const auto& tv : step({n.a, c.state}, backend, rules))
          out.push_back(push_continuation(
              tv, n.b, [&](const Program& pi) { return Prog::par(pi, n.b); }));
        bump(rules, StepRule::ParRight);
        for (const auto& tv : step({n.b, c.state}, backend, rules))
          out.push_back(push_continuation(
              tv, n.a, [&](const Program& qi) { return Prog::par(n.a, qi); }));
        return dedup(std::move(out));
      }
      case ProgNode::Kind::PChoice: {
        bump(rules, StepRule::PChoice);
        TransitionSet left = step({n.a, c.state}, backend, rules);
        TransitionSet right = step({n.b, c.state}, backend, rules);
        TransitionSet out;
        out.reserve(left.size() * right.size());
        for (const auto& mu : left)
          for (const auto& nu : right) out.push_back(mix(n.prob, mu, nu));
        return dedup(std::move(out));
      }
      case ProgNode::Kind::NChoice: {
        bump(rules, StepRule::NChoiceLeft);
        TransitionSet out = step({n.a, c.state}, backend, rules);
        bump(rules, StepRule::NChoiceRight);
        TransitionSet right = step({n.b, c.state}, backend, rules);
        out.insert(out.end(), right.begin(), right.end());
        return dedup(std::move(out));
      }
      case ProgNode::Kind::If: {
        bool b = backend.interp_cond(n.cond, c.state);
        bump(rules, b ? StepRule::IfTrue : StepRule::IfFalse);
        OutcomeKey resume{OutcomeKey::Tag::Resume, b ? n.a : n.b, c.state};
        return {TransitionValuation::from_pairs({{resume, Rat(1)}})};
      }
      case ProgNode::Kind::While: {
        if (backend.interp_cond(n.cond, c.state)) {
          bump(rules, StepRule::WhileTrue);
          OutcomeKey resume{OutcomeKey::Tag::Resume, Prog::seq(n.a, c.prog), c.state};
          return {TransitionValuation::from_pairs({{resume, Rat(1)}})};
        }
        bump(rules, StepRule::WhileFalse);
        OutcomeKey halt{OutcomeKey::Tag::Halt, nullptr, c.state};
        return {TransitionValuation::from_pairs({{halt, Rat(1)}})};
      }
    }
  } catch (const BackendError& e) {
    if (e.config().empty())
      throw BackendError(e.what(), "<" + c.prog->repr + ", " + c.state.bytes + ">");
    throw;
  }
  throw BackendError("unknown program kind");
}

std::set<StateKey> reachable_states(const Config& c, const Backend& backend, int n,
                                    std::size_t max_states) {
  std::set<StateKey> states{c.state};
  std::set<Config> frontier{c};
  std::set<Config> visited;
  for (int depth = 0; depth < n && !frontier.empty(); ++depth) {
    std::set<Config> next;
    for (const auto& cfg : frontier) {
      if (visited.count(cfg)) continue;
      visited.insert(cfg);
      for (const auto& tv : step(cfg, backend)) {
        for (const auto& [key, w] : tv.entries()) {
          states.insert(key.state);
          if (states.size() > max_states)
            throw BudgetExceededError("reachable-state cap exceeded", depth);
          if (key.tag == OutcomeKey::Tag::Resume) next.insert({key.prog, key.state});
        }
      }
    }
    frontier = std::move(next);
  }
  return states;
}

std::string step_trace(const Config& c, const Backend& backend) {
  std::string out;
  for (const auto& tv : step(c, backend)) {
    out += "<" + c.prog->repr + ", " + c.state.bytes + "> --> " + tv.to_string() + "\n";
  }
  return out;
}

}  // namespace pgcl
