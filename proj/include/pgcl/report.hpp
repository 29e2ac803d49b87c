#pragma once

#include "pgcl/logic.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace pgcl {

inline constexpr const char* kToolName = "pgclc";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
  Mode mode = Mode::Biconvex;
  int budget = 5;
  std::string backend = "classical";  // "classical" | "quantum"
  std::string init;                    // classical: "x=0,y=1"
  bool json_output = false;
  bool prune = true;
  std::optional<std::string> dump_dir;  // per-depth genset dumps
  bool oracle_check = false;
  std::size_t max_genset = 2000000;
  std::size_t max_states = 100000;
  std::optional<long> time_ms;
  std::optional<std::string> gates_path;  // custom-gate sidecar
};

struct Report {
  std::string command;  // "check" | "refine"
  std::string program;
  std::string formula;   // check
  std::string program_b; // refine
  char mode = 'b';
  int budget = 0;
  std::string backend;

  Verdict verdict;           // check
  std::optional<bool> refinement;  // refine (depth-bounded)

  std::vector<DepthStats> depths;
  std::optional<bool> oracle_agreement;

  int exit_code = 0;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Parsed program plus the backend and initial state the header implies.
struct LoadedProgram {
  ProgramFile file;
  std::shared_ptr<Backend> backend;
  StateKey initial;
};

/// Builds the backend and initial state for a program given as text.
LoadedProgram load_program_text(const std::string& text, const RunConfig& cfg);

/// Parses "x=0,y=1" into a store.
std::map<std::string, Int> parse_init_string(const std::string& init);

/// Loads, parses and checks PROGRAM |= FORMULA within the budget.
/// Exit codes: 0 holds, 10 unknown, 1 usage/parse error, 2 unsupported
/// formula (the caller maps exceptions to 1/2; this function reports 0/10).
Report run_check(const std::string& program_path, const std::string& formula_path,
                 const RunConfig& cfg);

/// Depth-bounded refinement verdict between two programs sharing a header.
Report run_refine(const std::string& program_a_path, const std::string& program_b_path,
                  const RunConfig& cfg);

}  // namespace pgcl
