#include "aspmtqs/cli/compose.hpp"

#include "aspmtqs/cli/pipeline.hpp"
#include "aspmtqs/spatial/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace aspmtqs::cli {

namespace {

spatial::Shape default_shape(const std::string& base) {
  if (base == "ia") return spatial::Shape::interval();
  if (base == "ra") return spatial::Shape::rectangle();
  return spatial::Shape::circle();
}

const spatial::RelationDef* overload(const std::string& name, spatial::Shape shape,
                                     const std::vector<std::string>& includes) {
  std::vector<spatial::Shape> shapes = {shape, shape};
  return spatial::find_relation(name, shapes, includes);
}

}  // namespace

std::vector<std::string> CompositionResult::members() const {
  std::vector<std::string> out;
  for (const auto& c : candidates)
    if (c.verdict == smt::Verdict::Sat) out.push_back(c.relation);
  return out;
}

bool CompositionResult::complete() const {
  return std::all_of(candidates.begin(), candidates.end(), [](const CompositionCandidate& c) {
    return c.verdict == smt::Verdict::Unsat || (c.verdict == smt::Verdict::Sat && c.confirmed);
  });
}

CompositionResult compose(const std::string& a, const std::string& b, const CompositionOptions& options) {
  CompositionResult result;
  result.base = options.base;
  if (result.base.empty()) {
    for (const auto& name : spatial::base_set_names()) {
      auto set = spatial::base_set(name);
      if (std::count(set.begin(), set.end(), a) && std::count(set.begin(), set.end(), b)) {
        result.base = name;
        break;
      }
    }
    if (result.base.empty())
      throw Error("no base set contains both '" + a + "' and '" + b + "'; pass --base");
  }
  std::vector<std::string> candidates = spatial::base_set(result.base);
  if (candidates.empty()) throw Error("unknown base set '" + result.base + "'");
  result.shape = options.shape.value_or(default_shape(result.base));

  std::vector<std::string> includes = spatial::theory_names();
  for (const auto& name : {a, b}) {
    if (!overload(name, result.shape, includes))
      throw Error("relation '" + name + "' is not defined over " + spatial::shape_name(result.shape) + " pairs");
  }
  const spatial::RelationGroup group = overload(candidates.front(), result.shape, includes)->group;
  for (const auto& name : {a, b})
    if (overload(name, result.shape, includes)->group != group)
      throw Error("mixed catalogs: '" + name + "' is not in the catalog of base set '" + result.base + "'");

  std::string source;
  source += ":- include";
  for (std::size_t i = 0; i < includes.size(); ++i) source += (i ? ", " : " ") + includes[i];
  source += ".\n:- sorts obj :: " + spatial::shape_name(result.shape) + ".\n";
  source += ":- objects o1, o2, o3 :: obj.\n";
  source += a + "(o1, o2).\n" + b + "(o2, o3).\n";
  std::vector<std::string> queries;
  for (const auto& c : candidates) queries.push_back(c + "(o1, o3)");
  Compilation comp = compile(source, queries);

  result.candidates.resize(candidates.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      CompositionCandidate& cand = result.candidates[i];
      cand.relation = candidates[i];
      try {
        smt::SmtScript script = script_for(comp, std::span<const Formula>(&comp.queries[i], 1));
        smt::SmtResult r = smt::run_solver(script, options.solver);
        cand.verdict = r.verdict;
        if (r.verdict != smt::Verdict::Sat || !r.model) {
          if (r.verdict != smt::Verdict::Unsat) cand.note = r.diagnostics;
          continue;
        }
        for (const char* obj : {"o1", "o2", "o3"}) {
          spatial::Geometry g{result.shape, {}};
          for (const auto& p : spatial::parameter_names(result.shape)) {
            auto it = r.model->reals.find(p + "(" + obj + ")");
            g.values.push_back(it == r.model->reals.end() ? Rational(0) : it->second.value);
          }
          cand.witness.push_back(std::move(g));
        }
        if (r.model->has_approximations()) {
          cand.note = "witness holds algebraic values; exact confirmation skipped";
          continue;
        }
        auto holds = [&](const std::string& name, std::size_t x, std::size_t y) {
          std::vector<spatial::Geometry> pair = {cand.witness[x], cand.witness[y]};
          return spatial::eval_relation(pair, *overload(name, result.shape, includes));
        };
        cand.confirmed = holds(a, 0, 1) && holds(b, 1, 2) && holds(cand.relation, 0, 2);
        if (!cand.confirmed) cand.note = "witness rejected by eval_relation";
      } catch (const Error& e) {
        cand.verdict = smt::Verdict::SolverError;
        cand.note = e.what();
      }
    }
  };
  int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return result;
}

}  // namespace aspmtqs::cli
