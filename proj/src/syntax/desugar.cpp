#include "aspmtqs/syntax/desugar.hpp"

namespace aspmtqs {

Rule desugar_choice(const Rule& rule) {
  if (!rule.head.choice) return rule;
  Rule out = rule;
  out.head.choice = false;
  Formula guard = Formula::negate(Formula::negate(rule.head.formula));
  if (rule.body.is_truth()) {
    out.body = guard;
  } else if (auto* a = rule.body.as<AndFormula>()) {
    std::vector<Formula> items = a->items;
    items.push_back(guard);
    out.body = Formula::conj(std::move(items));
  } else {
    out.body = Formula::conj({rule.body, guard});
  }
  return out;
}

std::vector<Rule> expand_frame_macro(const ConstantDecl& constant, const SortDecl& step_sort) {
  if (constant.arg_sorts.empty() || constant.arg_sorts.back() != step_sort.name ||
      step_sort.kind != SortKind::IntegerRange)
    throw Error("inertial constant '" + constant.name + "' has no step argument of sort '" +
                step_sort.name + "'");
  std::vector<Term> now;
  for (std::size_t i = 0; i + 1 < constant.arg_sorts.size(); ++i)
    now.push_back(Term::variable("_X" + std::to_string(i + 1), constant.arg_sorts[i]));
  std::vector<Term> next = now;
  Term step = Term::variable("_S", step_sort.name);
  now.push_back(step);
  next.push_back(Term::add(step, Term::number(1)));

  Rule r;
  r.head.choice = true;
  if (constant.is_predicate()) {
    r.head.kind = Head::Kind::Atom;
    r.head.formula = Formula::atom(constant.name, next);
    r.body = Formula::atom(constant.name, now);
  } else {
    Term value = Term::variable("_V", kRealSort);
    r.head.kind = Head::Kind::FunctionEq;
    r.head.formula = Formula::equal(Term::apply(constant.name, next), value);
    r.body = Formula::equal(Term::apply(constant.name, now), value);
  }
  return {r};
}

}  // namespace aspmtqs
