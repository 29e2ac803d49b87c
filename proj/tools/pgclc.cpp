#include "pgcl/diagnostics.hpp"
#include "pgcl/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

namespace {

void add_common(CLI::App* cmd, pgcl::RunConfig& cfg, std::string& mode) {
  cmd->add_option("--mode", mode, "powerdomain mode: l (may), u (must), b (both)")
      ->check(CLI::IsMember({"l", "u", "b"}))
      ->default_val("b");
  cmd->add_option("--budget", cfg.budget, "approximant depth budget")
      ->check(CLI::PositiveNumber)
      ->default_val(5);
  cmd->add_option("--backend", cfg.backend, "state-space backend")
      ->check(CLI::IsMember({"classical", "quantum"}))
      ->default_val("classical");
  cmd->add_option("--init", cfg.init, "initial classical store, e.g. \"x=0,y=1\"");
  cmd->add_flag("--json", cfg.json_output, "emit a JSON report");
  cmd->add_flag_function(
      "--no-prune", [&cfg](std::int64_t) { cfg.prune = false; },
      "keep generating sets unpruned between levels");
  cmd->add_option("--max-genset", cfg.max_genset, "generating-set size cap");
  cmd->add_option("--max-states", cfg.max_states, "reachable-state cap");
  cmd->add_option("--gates", cfg.gates_path, "JSON sidecar with custom gate matrices");
}

int emit(const pgcl::Report& rep, bool json) {
  if (json)
    std::cout << rep.to_json().dump(2) << std::endl;
  else
    std::cout << rep.to_text();
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifier for concurrent probabilistic GCL"};
  app.require_subcommand(1);

  pgcl::RunConfig cfg;
  std::string mode = "b";

  std::string program, formula, program_b;
  std::string dump_dir;

  CLI::App* check = app.add_subcommand("check", "semi-decide PROGRAM |= FORMULA");
  add_common(check, cfg, mode);
  check->add_option("--dump-gensets", dump_dir, "dump per-depth generating sets to DIR");
  check->add_flag("--oracle-check", cfg.oracle_check,
                  "cross-check approximants against the scheduler oracle");
  check->add_option("program", program, "program file")->required();
  check->add_option("formula", formula, "formula file")->required();

  CLI::App* refine = app.add_subcommand("refine", "depth-bounded refinement A <= B");
  add_common(refine, cfg, mode);
  refine->add_option("program_a", program, "candidate refinement")->required();
  refine->add_option("program_b", program_b, "reference program")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (const char* ms = std::getenv("PGCLC_TIME_MS")) {
    try {
      cfg.time_ms = std::stol(ms);
    } catch (...) {
      std::cerr << "error: PGCLC_TIME_MS must be an integer\n";
      return 1;
    }
  }
  cfg.mode = pgcl::mode_from_letter(mode[0]);
  if (!dump_dir.empty()) cfg.dump_dir = dump_dir;

  try {
    if (check->parsed()) return emit(pgcl::run_check(program, formula, cfg), cfg.json_output);
    return emit(pgcl::run_refine(program, program_b, cfg), cfg.json_output);
  } catch (const pgcl::UnsupportedFormulaError& e) {
    std::cerr << "unsupported formula: " << e.what() << "\n";
    return 2;
  } catch (const pgcl::ParseError& e) {
    std::cerr << "parse error at bytes " << e.span().start << ".." << e.span().end << ": "
              << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
