// Acceptance run: one PASS/FAIL line per criterion, with its time bound.
#include "aspmtqs/cli/compose.hpp"
#include "aspmtqs/cli/pipeline.hpp"
#include "aspmtqs/spatial/catalog.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include "random_programs.hpp"
#include "samplers.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

using namespace aspmtqs;
using spatial::Geometry;
using spatial::Shape;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitExample1 = 10;
constexpr double kLimitExample2 = 30;
constexpr double kLimitGrowth = 60;
constexpr double kLimitMotion = 300;
constexpr double kLimitAttach = 60;  // each scenario
constexpr double kLimitCompletion = 120;
constexpr double kLimitJepd = 60;
constexpr double kLimitCrossValidation = 900;
constexpr double kLimitCompose = 600;

// Sample sizes.
constexpr int kRandomPrograms = 200;
constexpr int kJepdPairs = 10000;
constexpr int kCrossSamples = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string slurp(const std::string& name) {
  std::ifstream in(std::filesystem::path(ASPMTQS_SCENARIOS) / (name + ".aspmtqs"));
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

smt::SolverConfig solver_config() {
  smt::SolverConfig cfg;
  cfg.path = smt::resolve_solver(std::nullopt);
  cfg.timeout_s = 120;
  return cfg;
}

smt::Entailment entailment(const std::string& scenario, const std::string& query) {
  std::vector<std::string> queries = {query};
  auto c = cli::compile(slurp(scenario), queries);
  return cli::entails(c, c.queries.front(), solver_config()).entailment;
}

smt::Verdict satisfiability(const std::string& scenario) {
  auto c = cli::compile(slurp(scenario));
  return smt::run_solver(cli::script_for(c), solver_config()).verdict;
}

// ---- criteria ---------------------------------------------------------------

Outcome example_one() {
  Outcome o;
  auto c = cli::compile(slurp("example1"));
  auto script = cli::script_for(c);
  auto r = smt::run_solver(script, solver_config());
  o.require(r.verdict == smt::Verdict::Sat, std::string("example1 ") + smt::to_string(r.verdict));
  if (r.model) {
    o.require(!r.model->has_approximations(), "model has algebraic approximations");
    auto circle = [&](const std::string& n) {
      auto v = [&](const std::string& p) { return r.model->reals.at(p + "(" + n + ")").value; };
      return Geometry::of(spatial::CircleParams{{v("x"), v("y")}, v("r")});
    };
    const auto& cat = spatial::catalog_rcc8_circles();
    auto rel = [&](const char* name) -> const spatial::RelationDef& {
      return *std::find_if(cat.begin(), cat.end(), [&](const auto& d) { return d.name == name; });
    };
    Geometry a = circle("a"), b = circle("b"), cc = circle("c");
    o.require(spatial::eval_relation(std::vector<Geometry>{a, b}, rel("rccDR")), "model: DR(a,b) fails");
    o.require(spatial::eval_relation(std::vector<Geometry>{b, cc}, rel("rccDR")), "model: DR(b,c) fails");
    o.require(spatial::eval_relation(std::vector<Geometry>{a, cc}, rel("rccPP")), "model: PP(a,c) fails");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("model a=") + testkit::describe(a) +
                " b=" + testkit::describe(b) + " c=" + testkit::describe(cc);
  }
  auto eq = satisfiability("example1_equal_radii");
  o.require(eq == smt::Verdict::Unsat, std::string("equal radii ") + smt::to_string(eq));
  return o;
}

Outcome example_two() {
  Outcome o;
  for (const char* q : {"rccTPP(a, b)", "rccEC(b, c)", "rccEC(a, c)", "collinear(a, b, c)"}) {
    auto e = entailment("example2", q);
    o.require(e == smt::Entailment::Entailed, std::string(q) + " " + smt::to_string(e));
  }
  auto left = satisfiability("example2_left");
  o.require(left == smt::Verdict::Unsat, std::string("leftOf variant ") + smt::to_string(left));
  if (o.pass) o.detail = "TPP(a,b), EC(b,c), EC(a,c), collinear entailed; leftOf variant unsat";
  return o;
}

Outcome growth() {
  Outcome o;
  for (const char* q : {"rccEC(a, c, 1)", "x(a, 0) = x(b, 0) & y(a, 0) = y(b, 0)"}) {
    auto e = entailment("growth", q);
    o.require(e == smt::Entailment::Entailed, std::string(q) + " " + smt::to_string(e));
  }
  if (o.pass) o.detail = "EC(a,c,1) and concentricity at step 0 entailed";
  return o;
}

Outcome motion() {
  Outcome o;
  auto both = entailment("motion", "rccDC(a, c, 1) | rccEC(a, c, 1)");
  o.require(both == smt::Entailment::Entailed, std::string("disjunction ") + smt::to_string(both));
  for (const char* q : {"rccDC(a, c, 1)", "rccEC(a, c, 1)"}) {
    auto e = entailment("motion", q);
    o.require(e == smt::Entailment::NotEntailed, std::string(q) + " " + smt::to_string(e));
  }
  if (o.pass) o.detail = "DC|EC entailed, neither disjunct alone";
  return o;
}

Outcome attach_one() {
  Outcome o;
  auto yes = entailment("attach1", "detach(car, trailer, 0)");
  auto no = entailment("attach1", "not detach(car, trailer, 0)");
  o.require(yes == smt::Entailment::NotEntailed, std::string("detach ") + smt::to_string(yes));
  o.require(no == smt::Entailment::NotEntailed, std::string("not detach ") + smt::to_string(no));
  if (o.pass) o.detail = "detach neither entailed nor refuted";
  return o;
}

Outcome attach_two() {
  Outcome o;
  auto yes = entailment("attach2", "detach(car, trailer, 0)");
  o.require(yes == smt::Entailment::Entailed, std::string("detach ") + smt::to_string(yes));
  auto sat = satisfiability("attach2");
  o.require(sat == smt::Verdict::Sat, std::string("attach2 ") + smt::to_string(sat));
  if (o.pass) o.detail = "detach entailed";
  return o;
}

Outcome completion_vs_oracle() {
  Outcome o;
  std::mt19937 rng(20240601);
  int discrepancies = 0, with_models = 0, total_models = 0;
  testkit::RandomProgramShape larger;
  larger.max_rules = 6;
  larger.max_objects = 3;
  for (int i = 0; i < kRandomPrograms; ++i) {
    std::string src = testkit::random_tight_program(rng, i % 2 ? larger : testkit::RandomProgramShape{});
    auto cmp = testkit::compare_completion_with_oracle(src);
    if (!cmp.agree) {
      if (discrepancies == 0) o.detail = "first discrepancy:\n" + src + cmp.detail;
      ++discrepancies;
    }
    with_models += cmp.stable_models > 0;
    total_models += static_cast<int>(cmp.stable_models);
  }
  o.require(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
  if (o.pass)
    o.detail = std::to_string(kRandomPrograms) + " programs, 0 discrepancies, " + std::to_string(total_models) +
               " stable models, " + std::to_string(with_models) + " programs with at least one";
  return o;
}

Outcome jepd() {
  Outcome o;
  std::mt19937 rng(77);
  auto run = [&](const char* label, const std::vector<spatial::RelationDef>& catalog, std::vector<Shape> shapes,
                 const std::vector<testkit::GeometryPair>& engineered, std::function<Geometry()> first,
                 std::function<Geometry()> second) {
    auto base = testkit::base_relations(catalog, shapes);
    testkit::JepdTally t;
    for (const auto& p : engineered) testkit::tally_jepd(t, p, base);
    std::size_t engineered_count = t.samples;
    for (int i = 0; i < kJepdPairs; ++i) testkit::tally_jepd(t, {first(), second()}, base);
    o.require(t.violations == 0, std::string(label) + ": " + std::to_string(t.violations) + " violations, " +
                                     t.first_violation);
    o.detail += (o.detail.empty() ? "" : "; ") + std::string(label) + " " + std::to_string(t.samples) + " (" +
                std::to_string(engineered_count) + " engineered)";
  };
  run("circles", spatial::catalog_rcc8_circles(), {Shape::circle(), Shape::circle()},
      testkit::engineered_circle_pairs(), [&] { return testkit::random_circle(rng); },
      [&] { return testkit::random_circle(rng); });
  run("intervals", spatial::catalog_interval_algebra(), {Shape::interval(), Shape::interval()},
      testkit::engineered_interval_pairs(), [&] { return testkit::random_interval(rng); },
      [&] { return testkit::random_interval(rng); });
  run("point/segment", spatial::catalog_orientation(), {Shape::point(), Shape::segment()},
      testkit::engineered_point_segment_pairs(), [&] { return testkit::random_point(rng); },
      [&] { return testkit::random_segment(rng); });
  return o;
}

// One (relation, shapes) group of the cross-validation.
struct CrossGroup {
  const spatial::RelationDef* rel;
  std::vector<Shape> shapes;
  int samples;
};

struct CrossTally {
  std::size_t checked = 0;
  std::size_t disagreements = 0;
  std::size_t positives = 0;
  std::string first;
};

CrossTally cross_validate(const CrossGroup& g, std::uint32_t seed, const smt::SolverConfig& cfg) {
  std::mt19937 rng(seed);
  smt::SmtScript script;
  std::vector<spatial::ParamTerms> terms;
  for (std::size_t k = 0; k < g.shapes.size(); ++k) {
    spatial::ParamTerms t;
    for (const auto& p : spatial::parameter_names(g.shapes[k]))
      t.push_back(Term::apply(p, {Term::object("o" + std::to_string(k + 1))}));
    terms.push_back(std::move(t));
  }
  script.assertions.push_back(smt::emit_formula(spatial::expand_relation(*g.rel, terms), script));

  std::vector<std::vector<Geometry>> samples;
  std::vector<std::vector<std::string>> checks;
  auto draw = [&](int i) {
    std::vector<Geometry> geoms;
    for (std::size_t k = 0; k < g.shapes.size(); ++k) {
      // Repeating an earlier argument now and then reaches equality relations.
      if (k > 0 && g.shapes[k] == g.shapes[k - 1] && i % 8 == 0) {
        geoms.push_back(geoms.back());
        continue;
      }
      Geometry fresh = testkit::random_geometry(rng, g.shapes[k].kind, std::max(3, g.shapes[k].vertices));
      if (k > 0 && i % 3 == 1) {
        // Borrow coordinates from the previous argument so that shared
        // endpoints and equal extents are common; keep it only if still valid.
        Geometry mixed = fresh;
        const auto& from = geoms.back().values;
        for (auto& v : mixed.values)
          if (rng() % 2) v = from[rng() % from.size()];
        try {
          spatial::validate(mixed);
          fresh = mixed;
        } catch (const SpatialError&) {
        }
      }
      geoms.push_back(std::move(fresh));
    }
    return geoms;
  };
  for (int i = 0; i < g.samples; ++i) {
    std::vector<Geometry> geoms = draw(i);
    // Every fourth sample searches for a positive instance, so rare relations
    // are exercised on both sides.
    for (int tries = 0; i % 4 == 0 && tries < 300 && !spatial::eval_relation(geoms, *g.rel); ++tries)
      geoms = draw(i + 1 + tries);
    std::vector<std::string> fix;
    for (std::size_t k = 0; k < geoms.size(); ++k) {
      for (std::size_t p = 0; p < terms[k].size(); ++p) {
        auto it = script.symbols.find(instance_key(terms[k][p]));
        if (it == script.symbols.end()) continue;  // parameter the body does not use
        fix.push_back("(= " + it->second + " " + smt::emit_number(geoms[k].values[p]) + ")");
      }
    }
    samples.push_back(std::move(geoms));
    checks.push_back(std::move(fix));
  }
  auto verdicts = smt::run_batch(script, checks, cfg);
  CrossTally t;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    bool expected = spatial::eval_relation(samples[i], *g.rel);
    bool ok = (verdicts[i] == smt::Verdict::Sat && expected) || (verdicts[i] == smt::Verdict::Unsat && !expected);
    ++t.checked;
    t.positives += expected;
    if (!ok) {
      if (t.disagreements == 0) {
        t.first = g.rel->name + " on";
        for (const auto& x : samples[i]) t.first += " " + testkit::describe(x);
        t.first += std::string(": solver ") + smt::to_string(verdicts[i]) + ", eval " + (expected ? "true" : "false");
      }
      ++t.disagreements;
    }
  }
  return t;
}

Outcome cross_validation() {
  Outcome o;
  smt::SolverConfig cfg = solver_config();
  cfg.timeout_s = 600;
  std::vector<CrossGroup> groups;
  std::size_t relations = 0;
  for (const auto& name : spatial::theory_names()) {
    for (const auto& rel : spatial::theory(name)) {
      ++relations;
      bool polygonal = std::any_of(rel.arg_kinds.begin(), rel.arg_kinds.end(),
                                   [](auto k) { return k == spatial::GeomKind::Polygon; });
      if (!polygonal) {
        std::vector<Shape> shapes;
        for (auto k : rel.arg_kinds) shapes.push_back(Shape{k, 0});
        groups.push_back({&rel, shapes, kCrossSamples});
        continue;
      }
      // Polygon overloads: samples spread over vertex counts 3..5.
      std::vector<std::vector<int>> counts = {{3, 3}, {3, 4}, {4, 3}, {5, 4}};
      for (std::size_t j = 0; j < counts.size(); ++j) {
        std::vector<Shape> shapes;
        for (std::size_t k = 0; k < rel.arg_kinds.size(); ++k)
          shapes.push_back(rel.arg_kinds[k] == spatial::GeomKind::Polygon ? Shape::polygon(counts[j][k])
                                                                          : Shape{rel.arg_kinds[k], 0});
        if (!rel.accepts(shapes)) continue;
        groups.push_back({&rel, shapes, kCrossSamples / static_cast<int>(counts.size())});
      }
    }
  }

  std::vector<CrossTally> tallies(groups.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(groups.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < groups.size(); i = next++) {
      try {
        tallies[i] = cross_validate(groups[i], 1000 + static_cast<std::uint32_t>(i), cfg);
      } catch (const std::exception& e) {
        errors[i] = groups[i].rel->name + ": " + e.what();
      }
    }
  };
  unsigned jobs = std::max(2u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::map<const spatial::RelationDef*, std::size_t> per_relation;
  std::size_t checked = 0, disagreements = 0, never_true = 0;
  std::map<const spatial::RelationDef*, std::size_t> positives;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    o.require(errors[i].empty(), errors[i]);
    per_relation[groups[i].rel] += tallies[i].checked;
    positives[groups[i].rel] += tallies[i].positives;
    checked += tallies[i].checked;
    if (tallies[i].disagreements && disagreements == 0) o.require(false, tallies[i].first);
    disagreements += tallies[i].disagreements;
  }
  for (const auto& [rel, n] : per_relation) o.require(n >= kCrossSamples, rel->name + " only " + std::to_string(n));
  std::string never;
  for (const auto& [rel, n] : positives) {
    if (n) continue;
    ++never_true;
    never += " " + rel->name;
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(relations) + " relations, " + std::to_string(checked) +
              " solver checks, " + std::to_string(disagreements) + " disagreements, " + std::to_string(never_true) +
              " relations never true on samples" + (never.empty() ? "" : " (" + never.substr(1) + ")");
  return o;
}

Outcome composition() {
  Outcome o;
  cli::CompositionOptions opt;
  opt.solver = solver_config();
  opt.solver.timeout_s = 60;
  opt.jobs = std::max(2u, std::thread::hardware_concurrency());
  std::size_t cells = 0, entries = 0;
  auto check = [&](const cli::CompositionResult& r, const std::string& label) {
    ++cells;
    o.require(r.complete(), label + " incomplete");
    for (const auto& c : r.candidates) {
      if (c.verdict != smt::Verdict::Sat) continue;
      ++entries;
      o.require(c.confirmed, label + ": " + c.relation + " witness not confirmed");
    }
  };
  opt.base = "rcc5";
  for (const auto& a : spatial::base_set("rcc5")) {
    for (const auto& b : spatial::base_set("rcc5")) {
      auto r = cli::compose(a, b, opt);
      check(r, a + " o " + b);
      if (a == "rccEQ") o.require(r.members() == std::vector<std::string>{b}, "EQ o " + b + " wrong");
    }
  }
  opt.base = "ia";
  auto bb = cli::compose("before", "before", opt);
  check(bb, "before o before");
  o.require(bb.members() == std::vector<std::string>{"before"}, "before o before wrong");
  if (o.pass)
    o.detail = std::to_string(cells) + " cells (full RCC-5 over circles, before o before), " +
               std::to_string(entries) + " entries, all witnesses confirmed";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  try {
    smt::resolve_solver(std::nullopt);
  } catch (const std::exception& e) {
    std::cout << "FAIL all: " << e.what() << "\n";
    return 1;
  }
  std::vector<Criterion> criteria = {
      {1, "example1 scenario (three circles)", kLimitExample1, example_one},
      {2, "example2 scenario (tangential part, collinear centres)", kLimitExample2, example_two},
      {3, "growth", kLimitGrowth, growth},
      {4, "motion", kLimitMotion, motion},
      {5, "attach I", kLimitAttach, attach_one},
      {5, "attach II", kLimitAttach, attach_two},
      {6, "completion agrees with the stable model oracle", kLimitCompletion, completion_vs_oracle},
      {7, "jointly exhaustive, pairwise disjoint", kLimitJepd, jepd},
      {8, "encodings agree with numeric evaluation", kLimitCrossValidation, cross_validation},
      {9, "composition", kLimitCompose, composition},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s >= c.limit_s) o.require(false, "over the time limit");
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << std::fixed
              << std::setprecision(2) << s << " s, limit " << std::setprecision(0) << c.limit_s
              << " s): " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
