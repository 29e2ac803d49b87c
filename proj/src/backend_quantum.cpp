#include "pgcl/backend_quantum.hpp"

#include "pgcl/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace pgcl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

GateSpec make_gate(std::string name, int arity, std::vector<std::vector<Amp>> m) {
  return GateSpec{std::move(name), arity, std::move(m)};
}

bool is_unitary(const std::vector<std::vector<Amp>>& m, double eps) {
  std::size_t d = m.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (m[i].size() != d) return false;
    for (std::size_t j = 0; j < d; ++j) {
      Amp dot = 0;
      for (std::size_t k = 0; k < d; ++k) dot += m[k][i] * std::conj(m[k][j]);
      Amp want = (i == j) ? Amp(1) : Amp(0);
      if (std::abs(dot - want) > eps) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<GateSpec> builtin_gates() {
  const Amp i{0, 1};
  std::vector<GateSpec> gs;
  gs.push_back(make_gate("I", 1, {{1, 0}, {0, 1}}));
  gs.push_back(make_gate("X", 1, {{0, 1}, {1, 0}}));
  gs.push_back(make_gate("Y", 1, {{0, -i}, {i, 0}}));
  gs.push_back(make_gate("Z", 1, {{1, 0}, {0, -1}}));
  gs.push_back(make_gate("H", 1, {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}));
  gs.push_back(make_gate("S", 1, {{1, 0}, {0, i}}));
  gs.push_back(make_gate("T", 1, {{1, 0}, {0, std::polar(1.0, M_PI / 4)}}));
  gs.push_back(make_gate("CNOT", 2,
                         {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
  gs.push_back(make_gate("CZ", 2,
                         {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}));
  gs.push_back(make_gate("SWAP", 2,
                         {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
  return gs;
}

std::vector<GateSpec> load_gates_json(const nlohmann::json& j, double eps_norm) {
  std::vector<GateSpec> out;
  if (!j.contains("gates")) return out;
  for (const auto& g : j.at("gates")) {
    GateSpec spec;
    spec.name = g.at("name").get<std::string>();
    spec.arity = g.at("size").get<int>();
    if (spec.arity < 1 || spec.arity > 3)
      throw BackendError("custom gate '" + spec.name + "': size must be 1..3");
    std::size_t dim = std::size_t(1) << spec.arity;
    const auto& rows = g.at("matrix");
    if (rows.size() != dim * dim)
      throw BackendError("custom gate '" + spec.name + "': matrix must list " +
                         std::to_string(dim * dim) + " [re,im] entries row-major");
    spec.matrix.assign(dim, std::vector<Amp>(dim));
    for (std::size_t k = 0; k < dim * dim; ++k) {
      const auto& e = rows.at(k);
      spec.matrix[k / dim][k % dim] = Amp(e.at(0).get<double>(), e.at(1).get<double>());
    }
    if (!is_unitary(spec.matrix, eps_norm))
      throw BackendError("custom gate '" + spec.name + "' is not unitary");
    out.push_back(std::move(spec));
  }
  return out;
}

QuantumBackend::QuantumBackend(int bits, int qubits, std::vector<GateSpec> custom_gates,
                               QuantumTolerances tol)
    : bits_(bits), qubits_(qubits), tol_(tol) {
  if (bits < 0 || bits > 24) throw BackendError("bit count out of range (0..24)");
  if (qubits < 0 || qubits > 12) throw BackendError("qubit count out of range (0..12)");
  for (auto& g : builtin_gates()) gates_.emplace(g.name, std::move(g));
  for (auto& g : custom_gates) {
    if (!is_unitary(g.matrix, tol_.eps_norm))
      throw BackendError("gate '" + g.name + "' is not unitary");
    gates_[g.name] = std::move(g);  // custom gates may shadow builtins
  }
}

const GateSpec& QuantumBackend::gate(const std::string& name) const {
  auto it = gates_.find(name);
  if (it == gates_.end()) throw BackendError("unknown gate '" + name + "'");
  return it->second;
}

StateKey QuantumBackend::initial_state() const {
  CQState s;
  s.bits.assign(bits_, 0);
  s.amps.assign(std::size_t(1) << qubits_, Amp(0));
  s.amps[0] = 1;
  return key_of(s);
}

StateKey QuantumBackend::key_of(const CQState& s) const {
  if (static_cast<int>(s.bits.size()) != bits_ ||
      s.amps.size() != (std::size_t(1) << qubits_))
    throw BackendError("classical-quantum state has wrong shape");

  // phase alignment: first significant amplitude becomes real positive
  Amp phase(1, 0);
  for (const Amp& a : s.amps) {
    if (std::abs(a) > tol_.eps_key / 2) {
      phase = std::conj(a) / std::abs(a);
      break;
    }
  }
  std::string key;
  key.reserve(s.bits.size() + 1 + s.amps.size() * 8);
  for (auto b : s.bits) key += b ? '1' : '0';
  key += '|';
  for (const Amp& a : s.amps) {
    Amp v = a * phase;
    long long re = std::llround(v.real() / tol_.eps_key);
    long long im = std::llround(v.imag() / tol_.eps_key);
    key += std::to_string(re) + "," + std::to_string(im) + ";";
  }
  StateKey out{std::move(key)};
  {
    std::lock_guard<std::mutex> lock(mu_);
    reps_.emplace(out, s);  // idempotent: first-seen representative wins
  }
  return out;
}

CQState QuantumBackend::state_of(const StateKey& key) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = reps_.find(key);
    if (it != reps_.end()) return it->second;
  }
  // decode from the grid values; used only for keys built outside this run
  CQState s;
  const std::string& str = key.bytes;
  std::size_t bar = str.find('|');
  if (bar == std::string::npos) throw BackendError("malformed quantum state key");
  for (std::size_t i = 0; i < bar; ++i) s.bits.push_back(str[i] == '1' ? 1 : 0);
  std::size_t i = bar + 1;
  double norm2 = 0;
  while (i < str.size()) {
    std::size_t comma = str.find(',', i);
    std::size_t semi = str.find(';', comma);
    if (comma == std::string::npos || semi == std::string::npos)
      throw BackendError("malformed quantum state key");
    double re = std::stod(str.substr(i, comma - i)) * tol_.eps_key;
    double im = std::stod(str.substr(comma + 1, semi - comma - 1)) * tol_.eps_key;
    s.amps.emplace_back(re, im);
    norm2 += re * re + im * im;
    i = semi + 1;
  }
  if (static_cast<int>(s.bits.size()) != bits_ ||
      s.amps.size() != (std::size_t(1) << qubits_))
    throw BackendError("quantum state key has wrong shape");
  if (norm2 < tol_.eps_norm) throw BackendError("quantum state key has zero norm");
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : s.amps) a *= inv;
  return s;
}

CQState QuantumBackend::apply_gate(const GateSpec& g, const std::vector<int>& targets,
                                   const CQState& s) const {
  if (static_cast<int>(targets.size()) != g.arity)
    throw BackendError("gate '" + g.name + "' expects " + std::to_string(g.arity) +
                       " qubits");
  for (int q : targets)
    if (q < 1 || q > qubits_) throw BackendError("qubit operand out of range");

  std::size_t dim = std::size_t(1) << qubits_;
  std::size_t local = std::size_t(1) << g.arity;
  // qubit q occupies vector-index bit (qubits_ - q); qubit 1 is the MSB
  std::vector<std::size_t> masks(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t)
    masks[t] = std::size_t(1) << (qubits_ - targets[t]);
  std::size_t target_union = 0;
  for (auto m : masks) target_union |= m;

  CQState out = s;
  std::vector<Amp> gathered(local), mixed(local);
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & target_union) continue;  // enumerate blocks via zeroed targets
    for (std::size_t l = 0; l < local; ++l) {
      std::size_t idx = base;
      for (std::size_t t = 0; t < masks.size(); ++t)
        if (l & (local >> (t + 1))) idx |= masks[t];
      gathered[l] = s.amps[idx];
    }
    for (std::size_t r = 0; r < local; ++r) {
      Amp acc = 0;
      for (std::size_t cix = 0; cix < local; ++cix) acc += g.matrix[r][cix] * gathered[cix];
      mixed[r] = acc;
    }
    for (std::size_t l = 0; l < local; ++l) {
      std::size_t idx = base;
      for (std::size_t t = 0; t < masks.size(); ++t)
        if (l & (local >> (t + 1))) idx |= masks[t];
      out.amps[idx] = mixed[l];
    }
  }
  return out;
}

Rat QuantumBackend::snap_probability(double p) const {
  Rat r = rationalize(p, tol_.max_den);
  if (std::abs(rat_to_double(r) - p) <= tol_.eps_prob) return r;
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++warn_count_;
  }
  return rat_from_double(p);
}

std::vector<std::pair<Rat, CQState>> QuantumBackend::collapse(int qubit, const CQState& s,
                                                              bool zero_qubit,
                                                              std::vector<int>* outcome_bits) const {
  if (qubit < 1 || qubit > qubits_) throw BackendError("qubit index out of range");
  std::size_t dim = s.amps.size();
  std::size_t mask = std::size_t(1) << (qubits_ - qubit);

  double p1 = 0, p0 = 0;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double w = std::norm(s.amps[idx]);
    if (idx & mask) p1 += w; else p0 += w;
  }
  if (p0 + p1 < 1 - 1e-6 || p0 + p1 > 1 + 1e-6)
    throw BackendError("amplitude vector is not normalized");

  std::vector<std::pair<double, int>> outcomes;
  if (p0 > tol_.eps_norm) outcomes.emplace_back(p0, 0);
  if (p1 > tol_.eps_norm) outcomes.emplace_back(p1, 1);
  if (outcomes.empty()) throw BackendError("amplitude corruption: no measurable branch");

  std::vector<std::pair<Rat, CQState>> branches;
  for (auto [p, b] : outcomes) {
    CQState next = s;
    double inv = 1.0 / std::sqrt(p);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      bool in_branch = ((idx & mask) != 0) == (b == 1);
      next.amps[idx] = in_branch ? s.amps[idx] * inv : Amp(0);
    }
    if (zero_qubit && b == 1) {
      // move the collapsed slice from the |1> half to the |0> half
      for (std::size_t idx = 0; idx < dim; ++idx) {
        if (idx & mask) {
          next.amps[idx & ~mask] = next.amps[idx];
          next.amps[idx] = 0;
        }
      }
    }
    if (outcome_bits) outcome_bits->push_back(b);
    branches.emplace_back(Rat(0), std::move(next));
  }

  // exact weights: snap the first branch, complement the second
  if (branches.size() == 1) {
    branches[0].first = 1;
  } else {
    Rat r0 = snap_probability(outcomes[0].first);
    if (r0 <= 0 || r0 >= 1) r0 = rat_from_double(outcomes[0].first);
    branches[0].first = r0;
    branches[1].first = 1 - r0;
  }
  return branches;
}

std::vector<std::pair<Rat, CQState>> QuantumBackend::measure_branches(
    int bit, int qubit, const CQState& s) const {
  if (bit < 1 || bit > bits_) throw BackendError("bit index out of range");
  std::vector<int> outcomes;
  auto branches = collapse(qubit, s, /*zero_qubit=*/false, &outcomes);
  for (std::size_t k = 0; k < branches.size(); ++k)
    branches[k].second.bits[bit - 1] = static_cast<std::uint8_t>(outcomes[k]);
  return branches;
}

std::vector<std::pair<Rat, CQState>> QuantumBackend::reset_branches(int qubit,
                                                                    const CQState& s) const {
  return collapse(qubit, s, /*zero_qubit=*/true);
}

Valuation QuantumBackend::interp_atomic(const Atomic& a, const StateKey& skey) const {
  CQState s = state_of(skey);
  std::vector<std::pair<Rat, CQState>> branches;
  switch (a.kind) {
    case Atomic::Kind::Gate:
      branches.emplace_back(Rat(1), apply_gate(gate(a.gate), a.qubits, s));
      break;
    case Atomic::Kind::Reset:
      branches = reset_branches(a.qubit, s);
      break;
    case Atomic::Kind::Measure:
      branches = measure_branches(a.bit, a.qubit, s);
      break;
    default:
      throw BackendError("quantum backend cannot interpret atomic '" +
                         atomic_to_string(a) + "'");
  }
  std::vector<std::pair<StateKey, Rat>> pairs;
  pairs.reserve(branches.size());
  for (auto& [w, st] : branches) pairs.emplace_back(key_of(st), w);
  return Valuation::from_pairs(std::move(pairs));
}

bool QuantumBackend::interp_cond(const CondPtr& c, const StateKey& skey) const {
  // bits are verbatim in the key prefix
  const std::string& str = skey.bytes;
  std::size_t bar = str.find('|');
  if (bar == std::string::npos || static_cast<int>(bar) != bits_)
    throw BackendError("malformed quantum state key");

  std::function<bool(const CondPtr&)> go = [&](const CondPtr& k) -> bool {
    switch (k->kind) {
      case Cond::Kind::True: return true;
      case Cond::Kind::False: return false;
      case Cond::Kind::Not: return !go(k->lhs);
      case Cond::Kind::And: return go(k->lhs) && go(k->rhs);
      case Cond::Kind::Or: return go(k->lhs) || go(k->rhs);
      case Cond::Kind::Cmp: {
        if (k->op != CmpOp::Eq || k->clhs->kind != Expr::Kind::Var ||
            k->crhs->kind != Expr::Kind::Const)
          throw BackendError("quantum conditions are bit tests xI = 0 or xI = 1");
        const std::string& v = k->clhs->var;
        if (v.size() < 2 || v[0] != 'x')
          throw BackendError("quantum conditions test bits xI");
        int i = std::stoi(v.substr(1));
        if (i < 1 || i > bits_) throw BackendError("bit index out of range");
        int want = static_cast<int>(k->crhs->value);
        return (str[i - 1] == '1' ? 1 : 0) == want;
      }
    }
    throw BackendError("unknown condition kind");
  };
  return go(c);
}

nlohmann::json QuantumBackend::state_json(const StateKey& skey) const {
  CQState s = state_of(skey);
  nlohmann::json bits = nlohmann::json::array();
  for (auto b : s.bits) bits.push_back(static_cast<int>(b));
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& a : s.amps) amps.push_back({a.real(), a.imag()});
  return {{"bits", bits}, {"amps", amps}};
}

}  // namespace pgcl
