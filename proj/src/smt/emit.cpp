#include "aspmtqs/error.hpp"
#include "aspmtqs/smt/smt.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include <cctype>
#include <set>

namespace aspmtqs::smt {

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "true", "false", "and", "or", "not", "ite", "let", "forall", "exists", "distinct", "xor",
    "par", "as", "_", "!", "BINARY", "DECIMAL", "HEXADECIMAL", "NUMERAL", "STRING"};

std::string symbol_for(const std::string& key, const std::string& sort, SmtScript& s) {
  if (auto it = s.symbols.find(key); it != s.symbols.end()) return it->second;
  std::string base = sanitize(key);
  std::string sym = base;
  for (int n = 2; s.sources.count(sym); ++n) sym = base + "_" + std::to_string(n);
  s.symbols.emplace(key, sym);
  s.sources.emplace(sym, key);
  s.declarations.emplace_back(sym, sort);
  return sym;
}

std::string nary(const char* op, const std::vector<std::string>& parts) {
  std::string out = std::string("(") + op;
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

const char* compare_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Eq: return "=";
    case CompareOp::Ge: return ">=";
    case CompareOp::Gt: return ">";
  }
  return "=";
}

void mentions(const Formula& f, std::set<std::string>& out) {
  std::vector<GroundInstance> found;
  collect_instances(f, found);
  for (const auto& g : found) out.insert(g.key());
}

}  // namespace

std::string sanitize(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      out += c;
    } else if (c == '(' || c == ',') {
      out += '_';
    } else if (c == '-') {
      out += 'm';
    } else if (c == '/') {
      out += 'd';
    } else if (c == '.') {
      out += 'p';
    } else if (c != ')' && c != ' ') {
      out += '_';
    }
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out = "s_" + out;
  if (kReserved.count(out)) out += "_";
  return out;
}

std::string emit_number(const Rational& q) {
  if (q < 0) return "(- " + emit_number(-q) + ")";
  if (q.get_den() == 1) return q.get_num().get_str() + ".0";
  return "(/ " + q.get_num().get_str() + ".0 " + q.get_den().get_str() + ".0)";
}

std::string emit_term(const Term& t, SmtScript& s) {
  if (auto* n = t.as<NumberTerm>()) return emit_number(n->value);
  if (t.as<ApplyTerm>()) return symbol_for(instance_key(t), "Real", s);
  if (auto* e = t.as<ArithTerm>()) {
    std::vector<std::string> ops;
    for (const auto& op : e->operands) ops.push_back(emit_term(op, s));
    switch (e->op) {
      case ArithOp::Add: return nary("+", ops);
      case ArithOp::Sub: return nary("-", ops);
      case ArithOp::Mul: return nary("*", ops);
      case ArithOp::Neg: return nary("-", ops);
    }
  }
  throw SolverError("term '" + to_string(t) + "' has no arithmetic reading");
}

std::string emit_formula(const Formula& f, SmtScript& s) {
  if (f.is_falsity()) return "false";
  if (f.is_truth()) return "true";
  if (f.as<AtomFormula>()) return symbol_for(instance_key(f), "Bool", s);
  if (auto* c = f.as<CompareFormula>())
    return nary(compare_symbol(c->op), {emit_term(c->lhs, s), emit_term(c->rhs, s)});
  if (auto* a = f.as<AndFormula>()) {
    if (a->items.empty()) return "true";
    if (a->items.size() == 2) {
      auto* x = a->items[0].as<ImpliesFormula>();
      auto* y = a->items[1].as<ImpliesFormula>();
      if (x && y && x->antecedent.same_node(y->consequent) && x->consequent.same_node(y->antecedent))
        return nary("=", {emit_formula(x->antecedent, s), emit_formula(x->consequent, s)});
    }
    if (a->items.size() == 1) return emit_formula(a->items.front(), s);
    std::vector<std::string> parts;
    for (const auto& i : a->items) parts.push_back(emit_formula(i, s));
    return nary("and", parts);
  }
  if (auto* o = f.as<OrFormula>()) {
    if (o->items.empty()) return "false";
    if (o->items.size() == 1) return emit_formula(o->items.front(), s);
    std::vector<std::string> parts;
    for (const auto& i : o->items) parts.push_back(emit_formula(i, s));
    return nary("or", parts);
  }
  if (const Formula* inner = f.negated()) return nary("not", {emit_formula(*inner, s)});
  if (auto* imp = f.as<ImpliesFormula>())
    return nary("=>", {emit_formula(imp->antecedent, s), emit_formula(imp->consequent, s)});
  throw SolverError("formula '" + to_string(f) + "' has no SMT-LIB reading");
}

std::string SmtScript::prelude() const {
  std::string out = "(set-option :produce-models true)\n(set-logic " + logic + ")\n";
  for (const auto& [sym, sort] : declarations) out += "(declare-fun " + sym + " () " + sort + ")\n";
  for (const auto& a : assertions) out += "(assert " + a + ")\n";
  return out;
}

std::string SmtScript::text() const {
  std::string out = prelude();
  for (const auto& c : commands) out += c + "\n";
  return out;
}

std::vector<bool> kept_clauses(const CompletedTheory& theory, std::span<const Formula> extra) {
  std::set<std::string> predicates;
  for (const auto& inst : theory.intensionals)
    if (inst.predicate) predicates.insert(inst.key());

  std::vector<bool> kept(theory.clauses.size(), true);
  std::vector<std::set<std::string>> uses(theory.clauses.size());
  for (std::size_t i = 0; i < theory.clauses.size(); ++i) mentions(theory.clauses[i].formula, uses[i]);
  std::set<std::string> external;
  for (const auto& f : extra) mentions(f, external);
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::string, int> count;
    for (std::size_t i = 0; i < uses.size(); ++i) {
      if (!kept[i]) continue;
      for (const auto& k : uses[i])
        if (k != theory.clauses[i].defines) ++count[k];
    }
    for (std::size_t i = 0; i < uses.size(); ++i) {
      const std::string& d = theory.clauses[i].defines;
      if (!kept[i] || d.empty() || !predicates.count(d) || external.count(d) || count[d] > 0) continue;
      kept[i] = false;
      changed = true;
    }
  }
  return kept;
}

SmtScript emit_smtlib(const CompletedTheory& theory, std::span<const Formula> extra,
                      const EmitOptions& options) {
  SmtScript script;
  script.logic = options.logic;
  std::vector<bool> kept = options.prune ? kept_clauses(theory, extra)
                                        : std::vector<bool>(theory.clauses.size(), true);
  for (std::size_t i = 0; i < theory.clauses.size(); ++i) {
    if (!kept[i]) {
      script.pruned.push_back(theory.clauses[i]);
      continue;
    }
    script.assertions.push_back(emit_formula(theory.clauses[i].formula, script));
  }
  for (const auto& f : extra) script.assertions.push_back(emit_formula(f, script));
  return script;
}

}  // namespace aspmtqs::smt
