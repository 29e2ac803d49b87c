#pragma once

#include "pgcl/backend.hpp"

#include <complex>
#include <map>
#include <mutex>
#include <vector>

namespace pgcl {

using Amp = std::complex<double>;

/// Pure classical-quantum state: n classical bits plus a unit state vector
/// over m qubits. Qubit 1 is the most significant bit of the vector index.
struct CQState {
  std::vector<std::uint8_t> bits;
  std::vector<Amp> amps;  // size 2^m
};

struct GateSpec {
  std::string name;
  int arity = 1;                        // acts on 2^arity amplitudes
  std::vector<std::vector<Amp>> matrix; // row-major, 2^arity x 2^arity
};

struct QuantumTolerances {
  double eps_norm = 1e-9;  // unitarity / normalization slack
  double eps_key = 1e-6;   // amplitude grid width for canonical keys
  double eps_prob = 1e-9;  // weight rationalization slack
  Int max_den = Int(1) << 20;
};

class QuantumBackend : public Backend {
 public:
  QuantumBackend(int bits, int qubits, std::vector<GateSpec> custom_gates = {},
                 QuantumTolerances tol = {});

  Valuation interp_atomic(const Atomic& a, const StateKey& s) const override;
  bool interp_cond(const CondPtr& c, const StateKey& s) const override;
  nlohmann::json state_json(const StateKey& s) const override;

  /// All bits 0, quantum register |0...0>.
  StateKey initial_state() const;

  /// Canonical key: bits verbatim, amplitudes phase-aligned (first
  /// significant amplitude real positive) and rounded to the eps_key grid.
  /// Registers the state as the key's representative.
  StateKey key_of(const CQState& s) const;

  /// Representative for a key; falls back to decoding the grid values.
  CQState state_of(const StateKey& key) const;

  const GateSpec& gate(const std::string& name) const;
  int bit_count() const { return bits_; }
  int qubit_count() const { return qubits_; }
  const QuantumTolerances& tolerances() const { return tol_; }
  std::size_t rationalization_warnings() const { return warn_count_; }

  // channel pieces, exposed for direct testing
  CQState apply_gate(const GateSpec& g, const std::vector<int>& targets,
                     const CQState& s) const;
  std::vector<std::pair<Rat, CQState>> measure_branches(int bit, int qubit,
                                                        const CQState& s) const;
  std::vector<std::pair<Rat, CQState>> reset_branches(int qubit, const CQState& s) const;

 private:
  Rat snap_probability(double p) const;
  std::vector<std::pair<Rat, CQState>> collapse(int qubit, const CQState& s, bool zero_qubit,
                                                std::vector<int>* outcome_bits = nullptr) const;

  int bits_ = 0;
  int qubits_ = 0;
  std::map<std::string, GateSpec> gates_;
  QuantumTolerances tol_;

  mutable std::mutex mu_;
  mutable std::map<StateKey, CQState> reps_;  // first-seen representatives
  mutable std::size_t warn_count_ = 0;
};

/// Built-in library: I, X, Y, Z, H, S, T, CNOT, CZ, SWAP.
std::vector<GateSpec> builtin_gates();

/// Loads {"gates":[{name, size, matrix: [[re,im],...] row-major}]} and
/// checks each matrix is unitary.
std::vector<GateSpec> load_gates_json(const nlohmann::json& j, double eps_norm = 1e-9);

}  // namespace pgcl
