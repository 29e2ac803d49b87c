#include "pgcl/report.hpp"

#include "pgcl/backend_classical.hpp"
#include "pgcl/backend_quantum.hpp"
#include "pgcl/diagnostics.hpp"
#include "pgcl/parser.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

namespace pgcl {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

char mode_letter(Mode m) {
  switch (m) {
    case Mode::Lower: return 'l';
    case Mode::Upper: return 'u';
    case Mode::Biconvex: return 'b';
  }
  return '?';
}

LoadedProgram load_program(const std::string& path, const RunConfig& cfg) {
  return load_program_text(read_file(path), cfg);
}

EngineOptions engine_options(const RunConfig& cfg) {
  EngineOptions opts;
  opts.prune = cfg.prune;
  opts.max_set = cfg.max_genset;
  if (cfg.time_ms)
    opts.deadline =
        std::chrono::steady_clock::now() + std::chrono::milliseconds(*cfg.time_ms);
  return opts;
}

nlohmann::json valuation_json(const Valuation& v, const Backend& backend) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, w] : v.entries())
    arr.push_back({{"state", backend.state_json(k)}, {"weight", rat_to_string(w)}});
  return arr;
}

void dump_gensets(const std::string& dir, const Config& c, int up_to, const Backend& backend,
                  ExtensionEngine& engine) {
  std::filesystem::create_directories(dir);
  for (int n = 1; n <= up_to; ++n) {
    std::size_t before = 0;
    GenSet F = engine.gen_set(c, n, &before);
    nlohmann::json j;
    j["depth"] = n;
    j["cardinality_before_pruning"] = before;
    j["cardinality_after_pruning"] = F.members.size();
    nlohmann::json members = nlohmann::json::array();
    for (const auto& v : F.members) members.push_back(valuation_json(v, backend));
    j["members"] = members;
    std::ofstream out(dir + "/genset_depth_" + std::to_string(n) + ".json");
    out << j.dump(2) << "\n";
  }
}

bool oracle_agrees(const Config& c, int up_to, const Backend& backend,
                   const EngineOptions& base_opts) {
  EngineOptions opts = base_opts;
  opts.prune = false;  // the recursions must match as literal sets
  ExtensionEngine unpruned(backend, opts);
  for (int n = 0; n <= up_to; ++n) {
    GenSet F = unpruned.gen_set(c, n);
    std::vector<Valuation> oracle = det_outcomes(c, n, backend);
    if (F.members != oracle) return false;
  }
  return true;
}

}  // namespace

std::map<std::string, Int> parse_init_string(const std::string& init) {
  Store store;
  std::size_t i = 0;
  while (i < init.size()) {
    std::size_t eq = init.find('=', i);
    if (eq == std::string::npos) throw std::runtime_error("malformed init (want x=0,y=1)");
    std::size_t comma = init.find(',', eq);
    if (comma == std::string::npos) comma = init.size();
    std::string name = init.substr(i, eq - i);
    std::string value = init.substr(eq + 1, comma - eq - 1);
    auto strip = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      return s;
    };
    store[strip(name)] = Int(strip(value));
    i = comma + 1;
  }
  return store;
}

LoadedProgram load_program_text(const std::string& text, const RunConfig& cfg) {
  std::vector<GateSpec> custom;
  std::set<std::string> extra_names;
  if (cfg.gates_path) {
    custom = load_gates_json(nlohmann::json::parse(read_file(*cfg.gates_path)));
    for (const auto& g : custom) extra_names.insert(g.name);
  }

  LoadedProgram out;
  out.file = parse_program_file(text, extra_names.empty() ? nullptr : &extra_names);

  if (out.file.header.kind == Header::Kind::Quantum) {
    if (cfg.backend == "classical")
      throw std::runtime_error("program has a quantum header; use --backend quantum");
    auto backend = std::make_shared<QuantumBackend>(out.file.header.bits,
                                                    out.file.header.qubits, std::move(custom));
    out.initial = backend->initial_state();
    out.backend = std::move(backend);
  } else {
    if (cfg.backend == "quantum")
      throw std::runtime_error("program has a classical header; use --backend classical");
    auto backend = std::make_shared<ClassicalBackend>(out.file.header.vars);
    out.initial =
        backend->initial_state(cfg.init.empty() ? Store{} : parse_init_string(cfg.init));
    out.backend = std::move(backend);
  }
  return out;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["command"] = command;
  j["program"] = program;
  if (command == "check") j["formula"] = formula;
  if (command == "refine") j["program_b"] = program_b;
  j["mode"] = std::string(1, mode);
  j["budget"] = budget;
  j["backend"] = backend;
  if (command == "check") {
    nlohmann::json v;
    v["status"] = verdict.holds ? "holds" : "unknown";
    if (verdict.holds) v["witness_depth"] = verdict.depth;
    else v["budget_exhausted_at"] = verdict.depth;
    if (verdict.resource_limited) v["resource_limited"] = true;
    if (!verdict.note.empty()) v["note"] = verdict.note;
    j["verdict"] = v;
  } else {
    j["verdict"] = {{"refines", refinement.value_or(false)},
                    {"depth_bounded", true},
                    {"depth", budget}};
  }
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : depths)
    ds.push_back({{"n", d.depth},
                  {"genset_before", d.size_before},
                  {"genset_after", d.size_after},
                  {"wall_ms", d.wall_ms}});
  j["depths"] = ds;
  if (oracle_agreement) j["oracle"] = {{"checked", true}, {"agreement", *oracle_agreement}};
  j["exit_code"] = exit_code;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << kToolName << " " << kToolVersion << " | " << command << " | mode " << mode
      << " | budget " << budget << " | backend " << backend << "\n";
  out << "program: " << program << "\n";
  if (command == "check") {
    out << "formula: " << formula << "\n";
    if (verdict.holds) {
      out << "verdict: holds (witness depth " << verdict.depth << ")\n";
    } else {
      out << "verdict: unknown (budget exhausted at depth " << verdict.depth << ")\n";
      if (verdict.resource_limited) out << "note: " << verdict.note << "\n";
    }
  } else {
    out << "program_b: " << program_b << "\n";
    out << "verdict: " << (refinement.value_or(false) ? "refines" : "does not refine")
        << " (depth-bounded at " << budget << ")\n";
  }
  for (const auto& d : depths)
    out << "  depth " << d.depth << ": |F| " << d.size_before << " -> " << d.size_after
        << " (" << d.wall_ms << " ms)\n";
  if (oracle_agreement)
    out << "oracle check: " << (*oracle_agreement ? "agreement" : "DISAGREEMENT") << "\n";
  return out.str();
}

Report run_check(const std::string& program_path, const std::string& formula_path,
                 const RunConfig& cfg) {
  LoadedProgram lp = load_program(program_path, cfg);
  std::string formula_text = read_file(formula_path);
  Outer phi = parse_formula(formula_text, lp.file.header);

  Report rep;
  rep.command = "check";
  rep.program = program_path;
  rep.formula = formula_path;
  rep.mode = mode_letter(cfg.mode);
  rep.budget = cfg.budget;
  rep.backend = lp.file.header.kind == Header::Kind::Quantum ? "quantum" : "classical";

  ExtensionEngine engine(*lp.backend, engine_options(cfg));
  Config c{lp.file.program, lp.initial};
  rep.verdict = semi_decide(c, phi, cfg.mode, cfg.budget, engine);
  rep.depths = engine.stats();

  int explored = rep.verdict.holds ? rep.verdict.depth : rep.verdict.depth;
  if (cfg.oracle_check && explored > 0)
    rep.oracle_agreement = oracle_agrees(c, explored, *lp.backend, engine_options(cfg));
  if (cfg.dump_dir && explored > 0)
    dump_gensets(*cfg.dump_dir, c, explored, *lp.backend, engine);

  rep.exit_code = rep.verdict.holds ? 0 : 10;
  return rep;
}

Report run_refine(const std::string& program_a_path, const std::string& program_b_path,
                  const RunConfig& cfg) {
  LoadedProgram a = load_program(program_a_path, cfg);
  LoadedProgram b = load_program(program_b_path, cfg);
  const Header &ha = a.file.header, &hb = b.file.header;
  bool same_header = ha.kind == hb.kind && ha.vars == hb.vars && ha.bits == hb.bits &&
                     ha.qubits == hb.qubits;
  if (!same_header) throw std::runtime_error("programs must share a header");

  Report rep;
  rep.command = "refine";
  rep.program = program_a_path;
  rep.program_b = program_b_path;
  rep.mode = mode_letter(cfg.mode);
  rep.budget = cfg.budget;
  rep.backend = a.file.header.kind == Header::Kind::Quantum ? "quantum" : "classical";

  ExtensionEngine engine(*a.backend, engine_options(cfg));
  bool ok = refines({a.file.program, a.initial}, {b.file.program, a.initial}, cfg.mode,
                    cfg.budget, engine);
  rep.refinement = ok;
  rep.exit_code = ok ? 0 : 10;
  return rep;
}

}  // namespace pgcl
