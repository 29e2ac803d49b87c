#include "pgcl/bigstep.hpp"

#include "pgcl/diagnostics.hpp"

#include <algorithm>

namespace pgcl {

std::string History::key() const {
  std::string out;
  for (const auto& e : past) {
    out += "<" + std::to_string(e.cfg.prog->id) + "|" + e.cfg.state.bytes + ">";
    out += e.chosen.to_string();
  }
  out += "<" + std::to_string(current.prog->id) + "|" + current.state.bytes + ">";
  return out;
}

void RandomizedScheduler::set(const History& h, SchedulerChoice choice) {
  Rat total = 0;
  for (const auto& [w, idx] : choice) {
    if (w <= 0) throw std::invalid_argument("scheduler weights must be positive");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("scheduler weights must sum to 1");
  choices_[h.key()] = std::move(choice);
}

const SchedulerChoice* RandomizedScheduler::choose(const History& h) const {
  auto it = choices_.find(h.key());
  return it == choices_.end() ? nullptr : &it->second;
}

std::optional<Valuation> evaluate(const RandomizedScheduler& sch, const History& h, int n,
                                  const Backend& backend) {
  if (n == 0) return Valuation::zero();
  const SchedulerChoice* choice = sch.choose(h);
  if (!choice) return std::nullopt;  // blocked

  TransitionSet transitions = step(h.current, backend);
  Valuation result;
  for (const auto& [pk, idx] : *choice) {
    if (idx >= transitions.size())
      throw std::invalid_argument("scheduler chose an unavailable transition");
    const TransitionValuation& nu = transitions[idx];
    Valuation inner;
    for (const auto& [key, w] : nu.entries()) {
      if (key.tag == OutcomeKey::Tag::Halt) {
        inner = inner.add(Valuation::dirac(key.state).scale(w));
      } else {
        History h2 = h.extended(nu, {key.prog, key.state});
        auto sub = evaluate(sch, h2, n - 1, backend);
        if (!sub) return std::nullopt;  // a blocked premise blocks the rule
        inner = inner.add(sub->scale(w));
      }
    }
    result = result.add(inner.scale(pk));
  }
  return result;
}

std::vector<Valuation> det_outcomes(const Config& c, int n, const Backend& backend,
                                    const OracleBudget& budget) {
  if (n == 0) return {Valuation::zero()};

  std::vector<Valuation> out;
  for (const auto& nu : step(c, backend)) {
    // halted part is fixed; resume branches choose sub-outcomes independently
    Valuation halted;
    std::vector<std::pair<Rat, Config>> resumes;
    for (const auto& [key, w] : nu.entries()) {
      if (key.tag == OutcomeKey::Tag::Halt) {
        halted = halted.add(Valuation::dirac(key.state).scale(w));
      } else {
        resumes.emplace_back(w, Config{key.prog, key.state});
      }
    }
    std::vector<Valuation> partial{halted};
    for (const auto& [w, cfg] : resumes) {
      std::vector<Valuation> subs = det_outcomes(cfg, n - 1, backend, budget);
      std::vector<Valuation> next;
      next.reserve(partial.size() * subs.size());
      for (const auto& p : partial)
        for (const auto& mu : subs) {
          next.push_back(p.add(mu.scale(w)));
          if (next.size() > budget.max_partial)
            throw BudgetExceededError("oracle outcome-set blowup", n);
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
    if (out.size() > budget.max_set)
      throw BudgetExceededError("oracle outcome-set cap exceeded", n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void build_scheduler(RandomizedScheduler& sch, const History& h, int depth,
                     const Backend& backend, std::mt19937& rng) {
  if (depth == 0) return;
  if (sch.choose(h)) return;

  TransitionSet transitions = step(h.current, backend);
  std::size_t available = transitions.size();
  std::uniform_int_distribution<std::size_t> pick_count(1, std::min<std::size_t>(available, 3));
  std::size_t count = pick_count(rng);

  std::vector<std::size_t> indices(available);
  for (std::size_t i = 0; i < available; ++i) indices[i] = i;
  std::shuffle(indices.begin(), indices.end(), rng);
  indices.resize(count);

  std::uniform_int_distribution<int> raw(1, 8);
  std::vector<int> weights(count);
  int total = 0;
  for (auto& w : weights) {
    w = raw(rng);
    total += w;
  }
  SchedulerChoice choice;
  for (std::size_t i = 0; i < count; ++i)
    choice.emplace_back(Rat(weights[i], total), indices[i]);
  sch.set(h, choice);

  for (const auto& [w, idx] : choice) {
    const TransitionValuation& nu = transitions[idx];
    for (const auto& [key, ww] : nu.entries())
      if (key.tag == OutcomeKey::Tag::Resume)
        build_scheduler(sch, h.extended(nu, {key.prog, key.state}), depth - 1, backend, rng);
  }
}

}  // namespace

RandomizedScheduler make_random_scheduler(const Config& c, int depth, const Backend& backend,
                                          std::mt19937& rng) {
  RandomizedScheduler sch;
  History h;
  h.current = c;
  build_scheduler(sch, h, depth, backend, rng);
  return sch;
}

bool check_determinism(const RandomizedScheduler& sch, const Config& c, int n,
                       const Backend& backend) {
  History h;
  h.current = c;
  auto a = evaluate(sch, h, n, backend);
  auto b = evaluate(sch, h, n, backend);
  if (!a && !b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool check_monotonicity(const RandomizedScheduler& sch, const Config& c, int n,
                        const Backend& backend) {
  History h;
  h.current = c;
  auto lo = evaluate(sch, h, n, backend);
  auto hi = evaluate(sch, h, n + 1, backend);
  if (!lo || !hi) return false;
  return lo->leq(*hi);
}

}  // namespace pgcl
