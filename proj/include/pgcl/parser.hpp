#pragma once

#include "pgcl/ast.hpp"
#include "pgcl/diagnostics.hpp"

#include <set>
#include <string>
#include <string_view>

namespace pgcl {

/// Parses a full program file (header + body). Checks that conditions and
/// assignments only reference declared variables (classical) or in-range
/// bits/qubits (quantum), and that gate names are known.
/// `extra_gates` extends the built-in gate set for name resolution.
ProgramFile parse_program_file(std::string_view text,
                               const std::set<std::string>* extra_gates = nullptr);

/// Parses a bare condition in the context of a header (used for formulas).
CondPtr parse_condition(std::string_view text, const Header& header);

/// Built-in gate names accepted by the quantum backend.
const std::set<std::string>& builtin_gate_names();

}  // namespace pgcl
