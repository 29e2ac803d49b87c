#include "pgcl/genset.hpp"

#include "pgcl/diagnostics.hpp"

#include <algorithm>

namespace pgcl {

GenSet GenSet::of(std::vector<Valuation> vals) {
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  GenSet g;
  std::set<StateKey> support;
  for (const auto& v : vals)
    for (const auto& [k, w] : v.entries()) support.insert(k);
  g.members = std::move(vals);
  g.support.assign(support.begin(), support.end());
  return g;
}

namespace {

std::vector<StateKey> union_support(const std::vector<Valuation>& vals,
                                    const Valuation* extra = nullptr) {
  std::set<StateKey> keys;
  for (const auto& v : vals)
    for (const auto& [k, w] : v.entries()) keys.insert(k);
  if (extra)
    for (const auto& [k, w] : extra->entries()) keys.insert(k);
  return {keys.begin(), keys.end()};
}

}  // namespace

bool conv_member(const Valuation& target, const std::vector<Valuation>& generators) {
  if (generators.empty()) return false;
  std::vector<StateKey> coords = union_support(generators, &target);

  // lambda_k >= 0, one equality row per coordinate, plus sum(lambda) = 1
  std::size_t n = generators.size();
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (const auto& s : coords) {
    std::vector<Rat> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = generators[k].at(s);
    A.push_back(std::move(row));
    b.push_back(target.at(s));
  }
  A.emplace_back(n, Rat(1));
  b.emplace_back(1);
  return lp_feasible(A, b);
}

std::vector<Valuation> prune_extreme(const std::vector<Valuation>& vals) {
  std::vector<Valuation> canon = vals;
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  if (canon.size() <= 1) return canon;

  std::vector<Valuation> kept;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    std::vector<Valuation> rest;
    rest.reserve(canon.size() - 1);
    for (std::size_t j = 0; j < canon.size(); ++j)
      if (j != i) rest.push_back(canon[j]);
    if (!conv_member(canon[i], rest)) kept.push_back(canon[i]);
  }
  // A finite set and its extreme points have the same hull, so testing each
  // point against all the others (not just the kept ones) is scan-order free.
  return kept;
}

bool order_leq(const GenSet& F, const GenSet& G, OrderMode mode) {
  std::set<StateKey> keys(F.support.begin(), F.support.end());
  keys.insert(G.support.begin(), G.support.end());
  std::vector<StateKey> coords(keys.begin(), keys.end());

  // exists nu in conv(gens) with target <= nu: lambda.G(s) - surplus_s = target(s)
  auto dominated_above = [&](const Valuation& target, const std::vector<Valuation>& gens) {
    std::size_t n = gens.size();
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    for (std::size_t si = 0; si < coords.size(); ++si) {
      std::vector<Rat> row(n + coords.size(), Rat(0));
      for (std::size_t k = 0; k < n; ++k) row[k] = gens[k].at(coords[si]);
      row[n + si] = -1;
      A.push_back(std::move(row));
      b.push_back(target.at(coords[si]));
    }
    std::vector<Rat> simplex_row(n + coords.size(), Rat(0));
    for (std::size_t k = 0; k < n; ++k) simplex_row[k] = 1;
    A.push_back(std::move(simplex_row));
    b.emplace_back(1);
    return lp_feasible(A, b);
  };
  // exists mu in conv(gens) with mu <= target: lambda.G(s) + slack_s = target(s)
  auto dominated_below = [&](const Valuation& target, const std::vector<Valuation>& gens) {
    std::size_t n = gens.size();
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    for (std::size_t si = 0; si < coords.size(); ++si) {
      std::vector<Rat> row(n + coords.size(), Rat(0));
      for (std::size_t k = 0; k < n; ++k) row[k] = gens[k].at(coords[si]);
      row[n + si] = 1;
      A.push_back(std::move(row));
      b.push_back(target.at(coords[si]));
    }
    std::vector<Rat> simplex_row(n + coords.size(), Rat(0));
    for (std::size_t k = 0; k < n; ++k) simplex_row[k] = 1;
    A.push_back(std::move(simplex_row));
    b.emplace_back(1);
    return lp_feasible(A, b);
  };

  bool lower_ok = true, upper_ok = true;
  if (mode == OrderMode::Lower || mode == OrderMode::Biconvex) {
    for (const auto& mu : F.members)
      if (!dominated_above(mu, G.members)) {
        lower_ok = false;
        break;
      }
  }
  if (mode == OrderMode::Upper || mode == OrderMode::Biconvex) {
    for (const auto& nu : G.members)
      if (!dominated_below(nu, F.members)) {
        upper_ok = false;
        break;
      }
  }
  switch (mode) {
    case OrderMode::Lower: return lower_ok;
    case OrderMode::Upper: return upper_ok;
    case OrderMode::Biconvex: return lower_ok && upper_ok;
  }
  return false;
}

bool conv_equal(const GenSet& F, const GenSet& G) {
  for (const auto& mu : F.members)
    if (!conv_member(mu, G.members)) return false;
  for (const auto& nu : G.members)
    if (!conv_member(nu, F.members)) return false;
  return true;
}

bool threshold_feasible(const std::vector<Valuation>& F,
                        const std::vector<std::pair<StatePred, Rat>>& constraints,
                        Polarity polarity) {
  if (F.empty() || constraints.empty())
    throw std::invalid_argument("threshold_feasible: empty input");

  // precompute a_{tk} = mu_k(U_t)
  std::vector<std::vector<Rat>> a(constraints.size(), std::vector<Rat>(F.size()));
  for (std::size_t t = 0; t < constraints.size(); ++t)
    for (std::size_t k = 0; k < F.size(); ++k)
      a[t][k] = F[k].measure(constraints[t].first);

  if (polarity == Polarity::Forall) {
    // mu(U) is linear in mu, so its minimum over conv F is attained at a
    // generator: all of conv F passes iff every generator passes.
    for (std::size_t k = 0; k < F.size(); ++k)
      for (std::size_t t = 0; t < constraints.size(); ++t)
        if (a[t][k] <= constraints[t].second) return false;
    return true;
  }

  // exists: maximize eps s.t. sum_k lambda_k a_{tk} - eps - surplus_t = p_t.
  // Columns: lambda_0..n-1, eps_pos, eps_neg, surplus per constraint.
  std::size_t n = F.size();
  std::size_t cols = n + 2 + constraints.size();
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (std::size_t t = 0; t < constraints.size(); ++t) {
    std::vector<Rat> row(cols, Rat(0));
    for (std::size_t k = 0; k < n; ++k) row[k] = a[t][k];
    row[n] = -1;      // eps positive part
    row[n + 1] = 1;   // eps negative part
    row[n + 2 + t] = -1;
    A.push_back(std::move(row));
    b.push_back(constraints[t].second);
  }
  std::vector<Rat> simplex_row(cols, Rat(0));
  for (std::size_t k = 0; k < n; ++k) simplex_row[k] = 1;
  A.push_back(std::move(simplex_row));
  b.emplace_back(1);

  std::vector<Rat> c(cols, Rat(0));
  c[n] = 1;
  c[n + 1] = -1;
  LpResult res = solve_lp(A, b, c);
  if (res.status == LpStatus::Infeasible) return false;
  if (res.status == LpStatus::Unbounded)
    throw std::logic_error("threshold LP cannot be unbounded");
  return res.objective > 0;
}

ExtensionEngine::ExtensionEngine(const Backend& backend, EngineOptions opts)
    : backend_(backend), opts_(std::move(opts)) {}

GenSet ExtensionEngine::gen_set(const Config& c, int n, std::size_t* size_before) {
  GenSet g = GenSet::of(compute(c, n));
  if (size_before) {
    if (n == 0) {
      *size_before = 1;
    } else {
      auto it = presize_.find(std::make_tuple(c.prog->id, c.state, n));
      *size_before = it == presize_.end() ? g.members.size() : it->second;
    }
  }
  return g;
}

std::vector<Valuation> ExtensionEngine::compute(const Config& c, int n) {
  if (n == 0) return {Valuation::zero()};

  auto key = std::make_tuple(c.prog->id, c.state, n);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  if (opts_.deadline && std::chrono::steady_clock::now() > *opts_.deadline)
    throw BudgetExceededError("wall-time cap exceeded", n);

  std::vector<Valuation> out;
  for (const auto& nu : step(c, backend_)) {
    Valuation halted;
    std::vector<std::pair<Rat, Config>> resumes;
    for (const auto& [okey, w] : nu.entries()) {
      if (okey.tag == OutcomeKey::Tag::Halt) {
        halted = halted.add(Valuation::dirac(okey.state).scale(w));
      } else {
        resumes.emplace_back(w, Config{okey.prog, okey.state});
      }
    }
    std::vector<Valuation> partial{halted};
    for (const auto& [w, cfg] : resumes) {
      std::vector<Valuation> subs = compute(cfg, n - 1);
      std::vector<Valuation> next;
      next.reserve(partial.size() * subs.size());
      for (const auto& p : partial)
        for (const auto& mu : subs) {
          next.push_back(p.add(mu.scale(w)));
          if (next.size() > opts_.max_set)
            throw BudgetExceededError("generating-set cap exceeded", n);
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
    if (out.size() > opts_.max_set)
      throw BudgetExceededError("generating-set cap exceeded", n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::size_t before = out.size();
  if (opts_.prune && out.size() > 1) out = prune_extreme(out);

  presize_.emplace(key, before);
  memo_.emplace(std::move(key), out);
  return out;
}

}  // namespace pgcl
