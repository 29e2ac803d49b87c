#include "pgcl/backend_quantum.hpp"
#include "pgcl/diagnostics.hpp"
#include "pgcl/parser.hpp"
#include "pgcl/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using namespace pgcl;

RunConfig make_cfg(const std::string& mode, bool prune, const std::string& init) {
  RunConfig cfg;
  cfg.mode = mode_from_letter(mode.empty() ? 'b' : mode[0]);
  cfg.prune = prune;
  cfg.init = init;
  return cfg;
}

py::list valuation_to_py(const Valuation& v, const Backend& backend) {
  py::list out;
  for (const auto& [k, w] : v.entries()) {
    py::dict e;
    e["state"] = backend.state_json(k).dump();
    e["weight"] = rat_to_string(w);
    out.append(e);
  }
  return out;
}

py::dict check(const std::string& program, const std::string& formula,
               const std::string& mode, int budget, bool prune, const std::string& init) {
  RunConfig cfg = make_cfg(mode, prune, init);
  LoadedProgram lp = load_program_text(program, cfg);
  Outer phi = parse_formula(formula, lp.file.header);
  ExtensionEngine engine(*lp.backend, {prune});
  Verdict v = semi_decide({lp.file.program, lp.initial}, phi, cfg.mode, budget, engine);
  py::dict out;
  out["holds"] = v.holds;
  out["depth"] = v.depth;
  out["resource_limited"] = v.resource_limited;
  return out;
}

bool refine_py(const std::string& program_a, const std::string& program_b,
               const std::string& mode, int depth, const std::string& init) {
  RunConfig cfg = make_cfg(mode, true, init);
  LoadedProgram a = load_program_text(program_a, cfg);
  LoadedProgram b = load_program_text(program_b, cfg);
  ExtensionEngine engine(*a.backend, {});
  return refines({a.file.program, a.initial}, {b.file.program, a.initial}, cfg.mode, depth,
                 engine);
}

py::list gen_set_py(const std::string& program, int depth, bool prune,
                    const std::string& init) {
  RunConfig cfg = make_cfg("b", prune, init);
  LoadedProgram lp = load_program_text(program, cfg);
  ExtensionEngine engine(*lp.backend, {prune});
  GenSet F = engine.gen_set({lp.file.program, lp.initial}, depth);
  py::list out;
  for (const auto& v : F.members) out.append(valuation_to_py(v, *lp.backend));
  return out;
}

py::list det_outcomes_py(const std::string& program, int depth, const std::string& init) {
  RunConfig cfg = make_cfg("b", true, init);
  LoadedProgram lp = load_program_text(program, cfg);
  auto outcomes = det_outcomes({lp.file.program, lp.initial}, depth, *lp.backend);
  py::list out;
  for (const auto& v : outcomes) out.append(valuation_to_py(v, *lp.backend));
  return out;
}

std::string pretty(const std::string& program) {
  return pretty_print(parse_program_file(program).program);
}

std::string trace(const std::string& program, const std::string& init) {
  RunConfig cfg = make_cfg("b", true, init);
  LoadedProgram lp = load_program_text(program, cfg);
  return step_trace({lp.file.program, lp.initial}, *lp.backend);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "verifier for concurrent probabilistic GCL";

  py::register_exception<ParseError>(m, "ProgramParseError", PyExc_ValueError);
  py::register_exception<UnsupportedFormulaError>(m, "UnsupportedFormula", PyExc_ValueError);
  py::register_exception<BudgetExceededError>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("pretty_print", &pretty, py::arg("program"),
        "canonical source text of a parsed program");
  m.def("check", &check, py::arg("program"), py::arg("formula"), py::arg("mode") = "b",
        py::arg("budget") = 5, py::arg("prune") = true, py::arg("init") = "",
        "semi-decide program |= formula; returns {holds, depth, resource_limited}");
  m.def("refine", &refine_py, py::arg("program_a"), py::arg("program_b"),
        py::arg("mode") = "b", py::arg("depth") = 3, py::arg("init") = "",
        "depth-bounded refinement between programs sharing a header");
  m.def("gen_set", &gen_set_py, py::arg("program"), py::arg("depth"),
        py::arg("prune") = true, py::arg("init") = "",
        "generating set of the depth-n denotational approximant");
  m.def("det_outcomes", &det_outcomes_py, py::arg("program"), py::arg("depth"),
        py::arg("init") = "",
        "n-step big-step outcomes under deterministic schedulers");
  m.def("step_trace", &trace, py::arg("program"), py::arg("init") = "",
        "one-step transitions of the initial configuration");

#ifdef PGCL_VERSION
  m.attr("__version__") = PGCL_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
