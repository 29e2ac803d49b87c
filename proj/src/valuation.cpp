#include "pgcl/valuation.hpp"

#include "pgcl/diagnostics.hpp"

#include <algorithm>

namespace pgcl {

namespace {

template <typename K>
std::vector<std::pair<K, Rat>> canonicalize(std::vector<std::pair<K, Rat>> pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<K, Rat>> out;
  out.reserve(pairs.size());
  for (auto& [k, w] : pairs) {
    if (w == 0) continue;
    if (w < 0) throw BackendError("negative weight in valuation");
    if (!out.empty() && out.back().first == k) {
      out.back().second += w;
    } else {
      out.emplace_back(std::move(k), std::move(w));
    }
  }
  return out;
}

}  // namespace

Valuation Valuation::from_pairs(std::vector<std::pair<StateKey, Rat>> pairs) {
  Valuation v;
  v.entries_ = canonicalize(std::move(pairs));
  if (v.mass() > 1) throw BackendError("valuation mass exceeds 1");
  return v;
}

Rat Valuation::mass() const {
  Rat m = 0;
  for (const auto& [k, w] : entries_) m += w;
  return m;
}

Rat Valuation::at(const StateKey& s) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                             [](const auto& e, const StateKey& k) { return e.first < k; });
  if (it != entries_.end() && it->first == s) return it->second;
  return Rat(0);
}

Valuation Valuation::scale(const Rat& r) const {
  if (r < 0) throw BackendError("negative scaling of a valuation");
  Valuation out;
  if (r == 0) return out;
  out.entries_.reserve(entries_.size());
  for (const auto& [k, w] : entries_) out.entries_.emplace_back(k, w * r);
  if (out.mass() > 1) throw BackendError("scaling overflows valuation mass");
  return out;
}

Valuation Valuation::add(const Valuation& w) const {
  Valuation out;
  out.entries_.reserve(entries_.size() + w.entries_.size());
  auto a = entries_.begin(), b = w.entries_.begin();
  while (a != entries_.end() || b != w.entries_.end()) {
    if (b == w.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  if (out.mass() > 1) throw BackendError("sum overflows valuation mass");
  return out;
}

bool Valuation::leq(const Valuation& w) const {
  for (const auto& [k, r] : entries_)
    if (r > w.at(k)) return false;
  return true;
}

Rat Valuation::measure(const std::function<bool(const StateKey&)>& pred) const {
  Rat m = 0;
  for (const auto& [k, w] : entries_)
    if (pred(k)) m += w;
  return m;
}

namespace {

template <typename K>
bool lex_less(const std::vector<std::pair<K, Rat>>& a,
              const std::vector<std::pair<K, Rat>>& b) {
  auto i = a.begin();
  auto j = b.begin();
  for (; i != a.end() && j != b.end(); ++i, ++j) {
    if (i->first < j->first) return true;
    if (j->first < i->first) return false;
    if (i->second < j->second) return true;
    if (j->second < i->second) return false;
  }
  return i == a.end() && j != b.end();
}

}  // namespace

bool Valuation::operator<(const Valuation& o) const { return lex_less(entries_, o.entries_); }

std::string Valuation::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, w] : entries_) {
    if (!first) out += ", ";
    first = false;
    out += k.bytes + " -> " + rat_to_string(w);
  }
  return out + "}";
}

TransitionValuation TransitionValuation::from_pairs(
    std::vector<std::pair<OutcomeKey, Rat>> pairs) {
  TransitionValuation tv;
  tv.entries_ = canonicalize(std::move(pairs));
  Rat m = 0;
  for (const auto& [k, w] : tv.entries_) m += w;
  if (m != 1) throw BackendError("transition valuation mass is not 1");
  return tv;
}

bool TransitionValuation::operator<(const TransitionValuation& o) const {
  return lex_less(entries_, o.entries_);
}

std::string TransitionValuation::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, w] : entries_) {
    if (!first) out += ", ";
    first = false;
    if (k.tag == OutcomeKey::Tag::Halt) {
      out += "halt " + k.state.bytes;
    } else {
      out += "<" + k.prog->repr + ", " + k.state.bytes + ">";
    }
    out += " -> " + rat_to_string(w);
  }
  return out + "}";
}

}  // namespace pgcl
