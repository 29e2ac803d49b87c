#include "pgcl/valuation.hpp"

#include "../support/generators.hpp"
#include "doctest.h"
#include "pgcl/diagnostics.hpp"

#include <random>

using namespace pgcl;

namespace {
StateKey k(const std::string& s) { return StateKey{s}; }
}  // namespace

TEST_CASE("scaling") {
  Valuation v = Valuation::dirac(k("s"));
  CHECK(v.scale(Rat(0)).is_zero());
  CHECK(v.scale(Rat(1)) == v);
  Valuation half = v.scale(Rat(1, 2));
  CHECK(half.at(k("s")) == Rat(1, 2));
  CHECK(half.mass() == Rat(1, 2));
}

TEST_CASE("addition") {
  Valuation v = Valuation::from_pairs({{k("s0"), Rat(1, 2)}});
  Valuation w = Valuation::from_pairs({{k("s1"), Rat(1, 2)}});
  CHECK(Valuation::zero().add(v) == v);
  Valuation sum = v.add(w);
  CHECK(sum.at(k("s0")) == Rat(1, 2));
  CHECK(sum.at(k("s1")) == Rat(1, 2));

  Valuation q = Valuation::from_pairs({{k("s0"), Rat(1, 4)}});
  CHECK(q.add(q) == Valuation::from_pairs({{k("s0"), Rat(1, 2)}}));
}

TEST_CASE("mass overflow is an error") {
  Valuation v = Valuation::dirac(k("s"));
  CHECK_THROWS_AS(v.add(v), BackendError);
  CHECK_THROWS_AS(Valuation::from_pairs({{k("a"), Rat(3, 4)}, {k("b"), Rat(1, 2)}}),
                  BackendError);
}

TEST_CASE("pointwise order") {
  Valuation v = Valuation::from_pairs({{k("s"), Rat(1, 3)}});
  Valuation w = Valuation::from_pairs({{k("s"), Rat(1, 3)}, {k("t"), Rat(1, 3)}});
  CHECK(Valuation::zero().leq(v));
  CHECK(v.leq(w));
  CHECK(!w.leq(v));
  CHECK(!Valuation::from_pairs({{k("s"), Rat(1, 2)}}).leq(
      Valuation::from_pairs({{k("s"), Rat(1, 3)}})));
}

TEST_CASE("measure") {
  auto in = [](std::initializer_list<const char*> keys) {
    std::set<std::string> ks;
    for (auto* s : keys) ks.insert(s);
    return [ks](const StateKey& key) { return ks.count(key.bytes) > 0; };
  };
  CHECK(Valuation::zero().measure(in({"s"})) == Rat(0));
  CHECK(Valuation::dirac(k("s")).measure(in({"s"})) == Rat(1));
  Valuation v = Valuation::from_pairs({{k("s0"), Rat(1, 3)}, {k("s1"), Rat(1, 2)}});
  CHECK(v.measure(in({"s1"})) == Rat(1, 2));
}

TEST_CASE("cone laws and measure linearity on random valuations") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> num(0, 3);
  auto pred = [](const StateKey& s) { return s.bytes == "s0" || s.bytes == "s2"; };
  for (int i = 0; i < 300; ++i) {
    Valuation v = testing::random_valuation(rng);
    Valuation w = testing::random_valuation(rng);
    Rat r(num(rng), 6);
    Rat q(num(rng), 6);

    if (v.mass() + w.mass() <= 1) {
      if ((v.mass() + w.mass()) * r <= 1) {
        CHECK(v.add(w).scale(r) == v.scale(r).add(w.scale(r)));
        CHECK(v.add(w).measure(pred) == v.measure(pred) + w.measure(pred));
      }
      CHECK(v.add(w) == w.add(v));
    }
    if (r * q * v.mass() <= 1 && q * v.mass() <= 1 && r <= 1)
      CHECK(v.scale(q).scale(r) == v.scale(r * q));
    if (r * v.mass() <= 1) CHECK(v.scale(r).measure(pred) == v.measure(pred) * r);
  }
}

TEST_CASE("leq is a partial order on canonical valuations") {
  std::mt19937 rng(555);
  for (int i = 0; i < 200; ++i) {
    Valuation a = testing::random_valuation(rng);
    Valuation b = testing::random_valuation(rng);
    Valuation c = testing::random_valuation(rng);
    CHECK(a.leq(a));
    if (a.leq(b) && b.leq(a)) CHECK(a == b);
    if (a.leq(b) && b.leq(c)) CHECK(a.leq(c));
  }
}

TEST_CASE("transition valuations require mass exactly 1") {
  OutcomeKey halt{OutcomeKey::Tag::Halt, nullptr, k("s")};
  CHECK_NOTHROW(TransitionValuation::from_pairs({{halt, Rat(1)}}));
  CHECK_THROWS_AS(TransitionValuation::from_pairs({{halt, Rat(1, 2)}}), BackendError);
  // duplicate outcomes merge by weight
  TransitionValuation tv =
      TransitionValuation::from_pairs({{halt, Rat(1, 2)}, {halt, Rat(1, 2)}});
  CHECK(tv.entries().size() == 1);
}
