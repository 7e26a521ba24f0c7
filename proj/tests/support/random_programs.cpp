#include "random_programs.hpp"

#include "aspmtqs/cli/pipeline.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace aspmtqs::testkit {

namespace {

struct Constant {
  std::string name;
  bool function = false;
};

}  // namespace

std::string random_tight_program(std::mt19937& rng, const RandomProgramShape& shape) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  const int objects = pick(1, shape.max_objects);
  const int predicates = pick(1, shape.max_predicates);
  std::vector<Constant> ranked;
  for (int i = 0; i < predicates; ++i) ranked.push_back({std::string(1, static_cast<char>('p' + i)), false});
  if (shape.function && coin(0.6)) ranked.push_back({"f", true});
  std::shuffle(ranked.begin(), ranked.end(), rng);

  std::vector<std::string> names;
  for (int i = 0; i < objects; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  auto argument = [&] { return coin(0.5) ? std::string("X") : names[pick(0, objects - 1)]; };
  auto value = [&] { return std::to_string(pick(0, 1)); };
  auto literal = [&](std::size_t rank, bool positive) {
    const Constant& c = ranked[rank];
    std::string text = c.function ? c.name + "(" + argument() + ") = " + value() : c.name + "(" + argument() + ")";
    return positive ? text : "not " + (c.function ? "(" + text + ")" : text);
  };

  std::string src = ":- sorts thing.\n:- objects ";
  for (int i = 0; i < objects; ++i) src += (i ? ", " : "") + names[i];
  src += " :: thing.\n:- constants intensional ";
  bool first = true;
  for (const auto& c : ranked)
    if (!c.function) {
      src += (first ? "" : ", ") + c.name + "(thing)";
      first = false;
    }
  src += " :: boolean";
  for (const auto& c : ranked)
    if (c.function) src += "; intensional " + c.name + "(thing) :: real";
  src += ".\n:- variables X :: thing.\n";

  const int rules = pick(1, shape.max_rules);
  for (int r = 0; r < rules; ++r) {
    const bool constraint = coin(0.15);
    std::size_t head = static_cast<std::size_t>(pick(0, static_cast<int>(ranked.size()) - 1));
    std::vector<std::string> body;
    const int literals = pick(0, 2);
    for (int l = 0; l < literals; ++l) {
      std::size_t rank = static_cast<std::size_t>(pick(0, static_cast<int>(ranked.size()) - 1));
      bool positive = coin(0.5);
      // Positive dependencies only point down the ranking.
      if (!constraint && positive && rank <= head) positive = false;
      body.push_back(literal(rank, positive));
    }
    std::string line;
    if (constraint) {
      if (body.empty()) body.push_back(literal(head, true));
      line = "<- ";
    } else {
      const Constant& c = ranked[head];
      std::string h = c.function ? c.name + "(" + argument() + ") = " + value() : c.name + "(" + argument() + ")";
      line = coin(0.3) ? "{" + h + "}" : h;
      if (!body.empty()) line += " <- ";
    }
    for (std::size_t i = 0; i < body.size(); ++i) line += (i ? " & " : "") + body[i];
    src += line + ".\n";
  }
  return src;
}

ModelComparison compare_completion_with_oracle(const std::string& source) {
  cli::Compilation c = cli::compile(source);
  OracleOptions options;
  options.default_values = {Rational(0), Rational(1)};
  std::set<std::string> stable, completed;
  for (const auto& m : brute_force_stable_models(c.ground, options)) stable.insert(to_string(m));
  for (const auto& m : enumerate_models(c.theory, options)) completed.insert(to_string(m));
  ModelComparison out;
  out.agree = stable == completed;
  out.stable_models = stable.size();
  out.completion_models = completed.size();
  if (!out.agree) {
    out.detail = "stable:\n";
    for (const auto& m : stable) out.detail += "  " + m + "\n";
    out.detail += "completion:\n";
    for (const auto& m : completed) out.detail += "  " + m + "\n";
  }
  return out;
}

}  // namespace aspmtqs::testkit
