#include "aspmtqs/syntax/evaluator.hpp"

#include "aspmtqs/error.hpp"
#include "aspmtqs/syntax/printer.hpp"

namespace aspmtqs {

namespace {

std::string arg_text(const Term& t, const Interpretation& interp) {
  if (auto* o = t.as<ObjectTerm>()) return o->name;
  return to_string(evaluate(t, interp));
}

}  // namespace

std::string ground_key(const std::string& name, const std::vector<Term>& args,
                       const Interpretation& interp) {
  if (args.empty()) return name;
  std::string key = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) key += ", ";
    key += arg_text(args[i], interp);
  }
  return key + ")";
}

Rational evaluate(const Term& term, const Interpretation& interp) {
  if (auto* n = term.as<NumberTerm>()) return n->value;
  if (auto* a = term.as<ApplyTerm>()) {
    std::string key = ground_key(a->function, a->args, interp);
    auto it = interp.functions.find(key);
    if (it == interp.functions.end()) throw Error("no value for '" + key + "'");
    return it->second;
  }
  if (auto* e = term.as<ArithTerm>()) {
    switch (e->op) {
      case ArithOp::Add: return evaluate(e->operands[0], interp) + evaluate(e->operands[1], interp);
      case ArithOp::Sub: return evaluate(e->operands[0], interp) - evaluate(e->operands[1], interp);
      case ArithOp::Mul: return evaluate(e->operands[0], interp) * evaluate(e->operands[1], interp);
      case ArithOp::Neg: return -evaluate(e->operands[0], interp);
    }
  }
  throw Error("cannot evaluate non-numeric term '" + to_string(term) + "'");
}

bool evaluate(const Formula& f, const Interpretation& interp) {
  if (f.is_falsity()) return false;
  if (auto* a = f.as<AtomFormula>()) {
    std::string key = ground_key(a->predicate, a->args, interp);
    auto it = interp.atoms.find(key);
    if (it == interp.atoms.end()) throw Error("no truth value for '" + key + "'");
    return it->second;
  }
  if (auto* c = f.as<CompareFormula>()) {
    auto* lo = c->lhs.as<ObjectTerm>();
    auto* ro = c->rhs.as<ObjectTerm>();
    if (lo || ro) {
      if (!lo || !ro || c->op != CompareOp::Eq)
        throw Error("cannot evaluate '" + to_string(f) + "'");
      return lo->name == ro->name;
    }
    Rational l = evaluate(c->lhs, interp);
    Rational r = evaluate(c->rhs, interp);
    switch (c->op) {
      case CompareOp::Lt: return l < r;
      case CompareOp::Le: return l <= r;
      case CompareOp::Eq: return l == r;
      case CompareOp::Ge: return l >= r;
      case CompareOp::Gt: return l > r;
    }
  }
  if (auto* a = f.as<AndFormula>()) {
    for (const auto& item : a->items)
      if (!evaluate(item, interp)) return false;
    return true;
  }
  if (auto* o = f.as<OrFormula>()) {
    for (const auto& item : o->items)
      if (evaluate(item, interp)) return true;
    return false;
  }
  if (auto* imp = f.as<ImpliesFormula>())
    return !evaluate(imp->antecedent, interp) || evaluate(imp->consequent, interp);
  throw Error("cannot evaluate formula");
}

}  // namespace aspmtqs
