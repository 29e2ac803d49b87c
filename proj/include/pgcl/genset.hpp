#pragma once

#include "pgcl/bigstep.hpp"
#include "pgcl/simplex.hpp"
#include "pgcl/smallstep.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace pgcl {

/// Finite generating set F with x(F) the depth-n denotational approximant.
/// Members are canonical (sorted, deduplicated); support is the sorted union
/// of member supports and fixes the ambient coordinate space for queries.
struct GenSet {
  std::vector<Valuation> members;
  std::vector<StateKey> support;

  static GenSet of(std::vector<Valuation> vals);
  bool operator==(const GenSet& o) const { return members == o.members; }
};

/// true iff target is a convex combination of the generators
/// (exact-rational LP feasibility).
bool conv_member(const Valuation& target, const std::vector<Valuation>& generators);

/// Keeps exactly the extreme points: drops every member that is a convex
/// combination of the others. conv is preserved; result is scan-order free.
std::vector<Valuation> prune_extreme(const std::vector<Valuation>& vals);

enum class OrderMode { Lower, Upper, Biconvex };

/// The powercone order on basic elements: lower (down-closure containment),
/// upper (up-closure containment, reversed), or both.
bool order_leq(const GenSet& F, const GenSet& G, OrderMode mode);

/// Is conv F equal to conv G (mutual membership of generators)?
bool conv_equal(const GenSet& F, const GenSet& G);

using StatePred = std::function<bool(const StateKey&)>;

enum class Polarity { Exists, Forall };

/// exists: some mu in conv F has mu(U_k) > p_k for all k simultaneously
/// (slack LP, strict). forall: every mu in conv F satisfies all constraints;
/// by linearity it suffices to scan the generators.
bool threshold_feasible(const std::vector<Valuation>& F,
                        const std::vector<std::pair<StatePred, Rat>>& constraints,
                        Polarity polarity);

struct EngineOptions {
  bool prune = true;
  std::size_t max_set = 2000000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct DepthStats {
  int depth = 0;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
  double wall_ms = 0;
};

/// Computes generating sets by the level recursion
///   F_0 = {bottom},
///   F_{n+1} = union over transitions nu of the mixtures
///             sum_i p_i * F_i + sum_j p_j * dirac(s_j),
/// memoized on (program, state, depth). Pure up to the memo table.
class ExtensionEngine {
 public:
  ExtensionEngine(const Backend& backend, EngineOptions opts = {});

  /// `size_before`, when given, receives the set size before level pruning.
  GenSet gen_set(const Config& c, int n, std::size_t* size_before = nullptr);

  const Backend& backend() const { return backend_; }
  const EngineOptions& options() const { return opts_; }
  const std::vector<DepthStats>& stats() const { return stats_; }
  void record_depth_stats(const DepthStats& s) { stats_.push_back(s); }

 private:
  std::vector<Valuation> compute(const Config& c, int n);

  using MemoKey = std::tuple<std::uint64_t, StateKey, int>;
  const Backend& backend_;
  EngineOptions opts_;
  std::map<MemoKey, std::vector<Valuation>> memo_;
  std::map<MemoKey, std::size_t> presize_;
  std::vector<DepthStats> stats_;
};

}  // namespace pgcl
