#include "aspmtqs/cli/commands.hpp"

#include "aspmtqs/cli/compose.hpp"
#include "aspmtqs/cli/pipeline.hpp"
#include "aspmtqs/cli/report.hpp"
#include "aspmtqs/cli/svg.hpp"
#include "aspmtqs/spatial/catalog.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace aspmtqs::cli {

namespace {

struct SolverFlags {
  std::string solver;
  double timeout = 60;
  int precision = 20;
  std::string dump_smt;
  std::string logic = "QF_NRA";
  bool no_prune = false;
  bool no_symmetry = false;
};

struct CommonFlags {
  std::string file;
  std::string dump_ground;
  bool check_tight = false;
  bool oracle = false;
  bool json = false;
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--solver", f.solver, "SMT solver executable (default: $ASPMTQS_SOLVER, then z3 on PATH)");
  app->add_option("--timeout", f.timeout, "Solver wall-clock limit in seconds")->check(CLI::PositiveNumber);
  app->add_option("--precision", f.precision, "Decimal digits for algebraic model values")
      ->check(CLI::Range(1, 200));
  app->add_option("--dump-smt", f.dump_smt, "Write the SMT-LIB2 script to a file ('-' for stdout)");
  app->add_option("--logic", f.logic, "SMT-LIB2 logic to declare (QF_NRA, or NRA for solvers that prefer it)");
  app->add_flag("--no-prune", f.no_prune, "Keep definitions of relation instances nothing else mentions");
  app->add_flag("--no-symmetry", f.no_symmetry, "Do not fix coordinates the theory is invariant under");
}

void add_program_flags(CLI::App* app, CommonFlags& f) {
  app->add_option("file", f.file, "Program file (.aspmtqs)")->required();
  app->add_option("--dump-ground", f.dump_ground, "Write the ground program to a file ('-' for stdout)");
  app->add_flag("--check-tight", f.check_tight, "Print the dependency graph (DOT) and the tightness verdict");
  app->add_flag("--json", f.json, "Print the report as JSON");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PhaseError("parse", "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_to(const std::string& target, const std::string& text, std::ostream& out) {
  if (target == "-") {
    out << text;
    return;
  }
  std::ofstream f(target, std::ios::binary);
  if (!f) throw Error("cannot write '" + target + "'");
  f << text;
}

smt::SolverConfig solver_config(const SolverFlags& f) {
  smt::SolverConfig c;
  c.path = smt::resolve_solver(f.solver.empty() ? std::nullopt : std::optional<std::string>(f.solver));
  c.timeout_s = f.timeout;
  c.precision = f.precision;
  return c;
}

int exit_for(smt::Verdict v) {
  switch (v) {
    case smt::Verdict::Sat: return kSat;
    case smt::Verdict::Unsat: return kUnsat;
    case smt::Verdict::Unknown:
    case smt::Verdict::Timeout: return kUnknown;
    case smt::Verdict::SolverError: return kError;
  }
  return kError;
}

void emit_report(const RunReport& r, bool json, std::ostream& out) {
  if (json) {
    out << to_json(r).dump(2) << "\n";
  } else {
    out << to_text(r);
  }
}

// A tightness report must not stop at the completion's own tightness check.
Compilation compile_for(const CommonFlags& f, std::span<const std::string> queries = {}) {
  CompileOptions co;
  co.complete = !f.check_tight;
  return compile(read_file(f.file), queries, co);
}

// --dump-ground and --check-tight; returns an exit code when the run stops here.
std::optional<int> inspect(const CommonFlags& f, const Compilation& c, std::ostream& out) {
  if (!f.dump_ground.empty()) write_to(f.dump_ground, pretty_print(c.ground.to_program()), out);
  if (!f.check_tight) return std::nullopt;
  DependencyGraph g = build_dependency_graph(c.ground);
  out << g.to_dot();
  Tightness t = is_tight(g);
  if (t.tight) {
    out << "tight: yes\n";
    return kSat;
  }
  out << "tight: no; cycle:";
  for (const auto& v : t.cycle) out << " " << v << " ->";
  out << " " << t.cycle.front() << "\n";
  return kUnsat;
}

smt::SmtResult solve_theory(const Compilation& c, std::span<const Formula> extra, const SolverFlags& f,
                            std::ostream& out, RunReport& report) {
  smt::EmitOptions eo;
  eo.logic = f.logic;
  eo.prune = !f.no_prune;
  smt::SmtScript script = script_for(c, extra, eo, !f.no_symmetry);
  if (!f.dump_smt.empty()) write_to(f.dump_smt, script.text(), out);
  auto start = std::chrono::steady_clock::now();
  smt::SmtResult r = smt::run_solver(script, solver_config(f));
  report.timings.solve = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (r.model) {
    fill_pruned(script, *r.model);
    if (r.model->has_approximations())
      report.warnings.push_back("model contains decimal approximations of algebraic values");
  }
  if (r.verdict == smt::Verdict::SolverError || r.verdict == smt::Verdict::Timeout ||
      r.verdict == smt::Verdict::Unknown)
    if (!r.diagnostics.empty()) report.warnings.push_back("solver: " + r.diagnostics);
  return r;
}

int cmd_oracle(const CommonFlags& f, const std::vector<std::string>& values, const std::string& defaults,
               bool fixed_functions, std::size_t bound, std::ostream& out) {
  CompileOptions co;
  co.complete = false;
  Compilation c = compile(read_file(f.file), {}, co);
  if (auto code = inspect(f, c, out)) return *code;
  OracleOptions oo;
  oo.bound = bound;
  oo.fixed_functions = fixed_functions;
  auto parse_list = [](const std::string& text) {
    std::vector<Rational> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
      auto q = parse_rational(item);
      if (!q) throw Error("bad value '" + item + "'");
      out.push_back(*q);
    }
    return out;
  };
  if (!defaults.empty()) oo.default_values = parse_list(defaults);
  for (const auto& v : values) {
    auto eq = v.rfind('=');
    if (eq == std::string::npos) throw Error("--values expects key=v1,v2,...");
    oo.value_domains[v.substr(0, eq)] = parse_list(v.substr(eq + 1));
  }
  RunReport r;
  r.command = "oracle";
  r.timings = c.timings;
  auto start = std::chrono::steady_clock::now();
  r.models = brute_force_stable_models(c.ground, oo);
  r.timings.solve = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.verdict = std::to_string(r.models.size()) + " stable model(s)";
  r.warnings = c.warnings;
  emit_report(r, f.json, out);
  return r.models.empty() ? kUnsat : kSat;
}

int cmd_solve(const CommonFlags& f, const SolverFlags& s, std::ostream& out) {
  Compilation c = compile_for(f);
  if (auto code = inspect(f, c, out)) return *code;
  RunReport r;
  r.command = "solve";
  r.timings = c.timings;
  r.warnings = c.warnings;
  smt::SmtResult res = solve_theory(c, {}, s, out, r);
  r.verdict = smt::to_string(res.verdict);
  r.model = res.model;
  emit_report(r, f.json, out);
  return exit_for(res.verdict);
}

int cmd_entail(const CommonFlags& f, const SolverFlags& s, const std::string& query, std::ostream& out) {
  std::vector<std::string> queries = {query};
  Compilation c = compile_for(f, queries);
  if (auto code = inspect(f, c, out)) return *code;
  RunReport r;
  r.command = "entail";
  r.timings = c.timings;
  r.warnings = c.warnings;
  Formula negated = Formula::negate(c.queries.front());
  smt::SmtResult res = solve_theory(c, std::span<const Formula>(&negated, 1), s, out, r);
  if (res.verdict == smt::Verdict::Unsat) {
    r.verdict = "entailed";
  } else if (res.verdict == smt::Verdict::Sat) {
    r.verdict = "not entailed";
    r.model = res.model;  // a counterexample
  } else {
    r.verdict = smt::to_string(res.verdict);
  }
  emit_report(r, f.json, out);
  if (res.verdict == smt::Verdict::Unsat) return kSat;
  if (res.verdict == smt::Verdict::Sat) return kUnsat;
  return exit_for(res.verdict);
}

int cmd_svg(const CommonFlags& f, const SolverFlags& s, const std::vector<std::string>& step,
            const std::string& output, std::ostream& out) {
  Compilation c = compile(read_file(f.file));
  RunReport r;
  smt::SmtResult res = solve_theory(c, {}, s, out, r);
  if (!res.model) throw Error("no model (verdict " + std::string(smt::to_string(res.verdict)) + ")");
  std::vector<Term> extras;
  for (const auto& a : step) {
    if (auto q = parse_rational(a)) {
      extras.push_back(Term::number(*q));
    } else {
      extras.push_back(Term::object(a));
    }
  }
  write_to(output, render_svg(c.program, *res.model, extras), out);
  return kSat;
}

int cmd_compose(const std::string& a, const std::string& b, const std::string& base, const std::string& shape,
                int jobs, const SolverFlags& s, bool json, std::ostream& out) {
  CompositionOptions o;
  o.base = base;
  o.jobs = jobs;
  o.solver = solver_config(s);
  if (!shape.empty()) {
    o.shape = spatial::parse_shape(shape);
    if (!o.shape) throw Error("unknown shape '" + shape + "'");
  }
  CompositionResult r = compose(a, b, o);
  if (json) {
    nlohmann::json j;
    j["a"] = a;
    j["b"] = b;
    j["base"] = r.base;
    j["shape"] = spatial::shape_name(r.shape);
    j["composition"] = r.members();
    j["complete"] = r.complete();
    j["candidates"] = nlohmann::json::array();
    for (const auto& c : r.candidates) {
      nlohmann::json w = nlohmann::json::array();
      for (const auto& g : c.witness) {
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& v : g.values) vals.push_back(to_string(v));
        w.push_back(vals);
      }
      j["candidates"].push_back({{"relation", c.relation}, {"verdict", smt::to_string(c.verdict)},
                                 {"confirmed", c.confirmed}, {"witness", w}, {"note", c.note}});
    }
    out << j.dump(2) << "\n";
  } else {
    out << a << " o " << b << " = {";
    auto m = r.members();
    for (std::size_t i = 0; i < m.size(); ++i) out << (i ? ", " : "") << m[i];
    out << "}" << (r.complete() ? "" : " (incomplete: some candidates undecided)") << "  (" << r.base << " over "
        << spatial::shape_name(r.shape) << ")\n";
    for (const auto& c : r.candidates) {
      out << "  " << c.relation << ": " << smt::to_string(c.verdict);
      if (c.verdict == smt::Verdict::Sat) out << (c.confirmed ? ", witness confirmed" : ", witness unconfirmed");
      if (!c.witness.empty()) {
        out << " [";
        for (std::size_t i = 0; i < c.witness.size(); ++i) {
          out << (i ? "; " : "") << "o" << i + 1 << "=(";
          for (std::size_t k = 0; k < c.witness[i].values.size(); ++k)
            out << (k ? ", " : "") << to_string(c.witness[i].values[k]);
          out << ")";
        }
        out << "]";
      }
      if (!c.note.empty() && c.verdict != smt::Verdict::Sat) out << " (" << c.note << ")";
      out << "\n";
    }
  }
  return r.complete() ? kSat : kUnknown;
}

int cmd_list(const std::string& only, std::ostream& out) {
  for (const auto& name : spatial::theory_names()) {
    if (!only.empty() && only != name) continue;
    out << name << ":\n";
    for (const auto& rel : spatial::theory(name)) {
      out << "  " << rel.name << "(";
      for (std::size_t i = 0; i < rel.arg_kinds.size(); ++i) {
        spatial::Shape s{rel.arg_kinds[i], 0};
        std::string kind = rel.arg_kinds[i] == spatial::GeomKind::Polygon
                               ? "polygon(3.." + std::to_string(rel.max_vertices) + ")"
                               : spatial::shape_name(s);
        out << (i ? ", " : "") << kind;
      }
      out << ")  " << spatial::to_string(rel.group);
      if (rel.base) out << ", base";
      if (!rel.converse.empty()) out << ", converse " << rel.converse;
      out << "\n";
    }
  }
  return kSat;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial reasoning with tight ASPMT programs over nonlinear real arithmetic", "aspmtqs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "aspmtqs 0.1.0");

  CommonFlags common;
  SolverFlags solver;

  auto* solve = app.add_subcommand("solve", "Check satisfiability and print a model");
  add_program_flags(solve, common);
  add_solver_flags(solve, solver);
  solve->add_flag("--oracle", common.oracle, "Use the brute-force stable model oracle instead of the solver");

  std::string query;
  auto* entail = app.add_subcommand("entail", "Check whether every stable model satisfies a formula");
  add_program_flags(entail, common);
  entail->add_option("query", query, "Ground formula, e.g. \"rccEC(a, c, 1)\"")->required();
  add_solver_flags(entail, solver);

  std::vector<std::string> values;
  std::string default_values;
  bool fixed_functions = false;
  std::size_t bound = std::size_t{1} << 20;
  auto* oracle = app.add_subcommand("oracle", "Enumerate stable models by brute force (finite domains)");
  add_program_flags(oracle, common);
  oracle->add_option("--values", values, "Candidate values for a function instance: 'x(a)=0,1,2'");
  oracle->add_option("--default-values", default_values, "Candidates for unlisted instances: '0,1'");
  oracle->add_flag("--fixed-functions", fixed_functions, "Hold functions fixed in the minimality check");
  oracle->add_option("--bound", bound, "Maximum number of interpretations");

  std::string rel_a, rel_b, base, shape;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool compose_json = false;
  auto* compose_cmd = app.add_subcommand("compose", "Compute a composition table entry");
  compose_cmd->add_option("a", rel_a, "First relation")->required();
  compose_cmd->add_option("b", rel_b, "Second relation")->required();
  compose_cmd->add_option("--base", base, "Candidate base set: rcc8, rcc5, ia, ra, size");
  compose_cmd->add_option("--shape", shape, "Object shape (circle, triangle, polygon(4), interval, rectangle)");
  compose_cmd->add_option("--jobs", jobs, "Concurrent solver processes")->check(CLI::PositiveNumber);
  compose_cmd->add_flag("--json", compose_json, "Print JSON");
  add_solver_flags(compose_cmd, solver);

  std::vector<std::string> step;
  std::string svg_out = "-";
  auto* svg = app.add_subcommand("svg", "Solve and draw the model as SVG");
  svg->add_option("file", common.file, "Program file (.aspmtqs)")->required();
  svg->add_option("--step", step, "Extra arguments of the parametric functions, e.g. the step")
      ->delimiter(',');
  svg->add_option("-o,--output", svg_out, "Output file ('-' for stdout)");
  add_solver_flags(svg, solver);

  std::string theory_name;
  auto* list = app.add_subcommand("list-relations", "Print the relation catalog");
  list->add_option("--theory", theory_name, "Only this theory");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSat : kError;
  }

  try {
    if (*solve) return common.oracle ? cmd_oracle(common, {}, "", false, bound, out) : cmd_solve(common, solver, out);
    if (*entail) return cmd_entail(common, solver, query, out);
    if (*oracle) return cmd_oracle(common, values, default_values, fixed_functions, bound, out);
    if (*compose_cmd) return cmd_compose(rel_a, rel_b, base, shape, jobs, solver, compose_json, out);
    if (*svg) return cmd_svg(common, solver, step, svg_out, out);
    if (*list) return cmd_list(theory_name, out);
  } catch (const PhaseError& e) {
    err << "error in " << e.what() << "\n";
    return kError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace aspmtqs::cli
