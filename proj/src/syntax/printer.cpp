#include "aspmtqs/syntax/printer.hpp"

#include <sstream>

namespace aspmtqs {

namespace {

// Binding strength; a child printed under a parent of equal or higher
// strength gets parentheses so the reparsed tree has the same shape.
int term_level(const Term& t) {
  if (auto* a = t.as<ArithTerm>()) {
    switch (a->op) {
      case ArithOp::Add:
      case ArithOp::Sub: return 1;
      case ArithOp::Mul: return 2;
      case ArithOp::Neg: return 3;
    }
  }
  if (auto* n = t.as<NumberTerm>(); n && n->value < 0) return 3;
  return 4;
}

void print_term(std::ostream& out, const Term& t);

void print_term_at(std::ostream& out, const Term& t, int min_level) {
  if (term_level(t) < min_level) {
    out << '(';
    print_term(out, t);
    out << ')';
  } else {
    print_term(out, t);
  }
}

void print_args(std::ostream& out, const std::vector<Term>& args) {
  if (args.empty()) return;
  out << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out << ", ";
    print_term(out, args[i]);
  }
  out << ')';
}

void print_term(std::ostream& out, const Term& t) {
  if (auto* o = t.as<ObjectTerm>()) {
    out << o->name;
  } else if (auto* n = t.as<NumberTerm>()) {
    out << to_string(n->value);
  } else if (auto* v = t.as<VariableTerm>()) {
    out << v->name;
  } else if (auto* a = t.as<ApplyTerm>()) {
    out << a->function;
    print_args(out, a->args);
  } else if (auto* e = t.as<ArithTerm>()) {
    switch (e->op) {
      case ArithOp::Add:
        print_term_at(out, e->operands[0], 1);
        out << " + ";
        print_term_at(out, e->operands[1], 2);
        break;
      case ArithOp::Sub:
        print_term_at(out, e->operands[0], 1);
        out << " - ";
        print_term_at(out, e->operands[1], 2);
        break;
      case ArithOp::Mul:
        print_term_at(out, e->operands[0], 2);
        out << " * ";
        print_term_at(out, e->operands[1], 3);
        break;
      case ArithOp::Neg:
        out << '-';
        if (e->operands[0].as<NumberTerm>()) {
          out << '(';
          print_term(out, e->operands[0]);
          out << ')';
        } else {
          print_term_at(out, e->operands[0], 3);
        }
        break;
    }
  }
}

int formula_level(const Formula& f) {
  if (f.is_truth()) return 5;
  if (f.negated()) return 4;
  if (f.as<ImpliesFormula>()) return 1;
  if (f.as<OrFormula>()) return 2;
  if (f.as<AndFormula>()) return 3;
  return 5;
}

void print_formula(std::ostream& out, const Formula& f);

void print_formula_at(std::ostream& out, const Formula& f, int min_level) {
  if (formula_level(f) < min_level) {
    out << '(';
    print_formula(out, f);
    out << ')';
  } else {
    print_formula(out, f);
  }
}

void print_nary(std::ostream& out, const std::vector<Formula>& items, const char* op,
                int level, const char* empty) {
  if (items.empty()) {
    out << empty;
    return;
  }
  if (items.size() == 1) {
    // A one-element connective has no surface form; print the item.
    print_formula(out, items[0]);
    return;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ' ' << op << ' ';
    print_formula_at(out, items[i], level + 1);
  }
}

void print_formula(std::ostream& out, const Formula& f) {
  if (f.is_truth()) {
    out << "true";
  } else if (const Formula* inner = f.negated()) {
    out << "not ";
    print_formula_at(out, *inner, 4);
  } else if (auto* imp = f.as<ImpliesFormula>()) {
    print_formula_at(out, imp->antecedent, 2);
    out << " -> ";
    print_formula_at(out, imp->consequent, 1);
  } else if (auto* a = f.as<AndFormula>()) {
    print_nary(out, a->items, "&", 3, "true");
  } else if (auto* o = f.as<OrFormula>()) {
    print_nary(out, o->items, "|", 2, "false");
  } else if (auto* at = f.as<AtomFormula>()) {
    out << at->predicate;
    print_args(out, at->args);
  } else if (auto* c = f.as<CompareFormula>()) {
    print_term(out, c->lhs);
    out << ' ' << to_string(c->op) << ' ';
    print_term(out, c->rhs);
  } else if (f.is_falsity()) {
    out << "false";
  }
}

std::string sort_text(const SortDecl& s) {
  switch (s.kind) {
    case SortKind::IntegerRange:
      return s.name + " :: " + std::to_string(s.lo) + ".." + std::to_string(s.hi);
    case SortKind::Geometric:
      if (!s.explicit_kind && spatial::shape_name(s.shape) == s.name) return s.name;
      return s.name + " :: " + spatial::shape_name(s.shape);
    default:
      return s.name;
  }
}

template <class T, class F>
void block(std::ostream& out, const char* keyword, const std::vector<T>& items, F&& text) {
  if (items.empty()) return;
  out << ":- " << keyword << ' ';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ";\n   ";
    out << text(items[i]);
  }
  out << ".\n";
}

}  // namespace

std::string to_string(const Term& term) {
  std::ostringstream out;
  print_term(out, term);
  return out.str();
}

std::string to_string(const Formula& formula) {
  std::ostringstream out;
  print_formula(out, formula);
  return out.str();
}

std::string to_string(const Rule& rule) {
  std::ostringstream out;
  bool has_body = !rule.body.is_truth();
  if (rule.head.kind == Head::Kind::Falsity) {
    if (!has_body) return "false.";
    out << "<- ";
  } else {
    if (rule.head.choice) out << "{ ";
    print_formula(out, rule.head.formula);
    if (rule.head.choice) out << " }";
    if (has_body) out << " <- ";
  }
  if (has_body) print_formula(out, rule.body);
  out << '.';
  return out.str();
}

std::string pretty_print(const Program& p) {
  std::ostringstream out;
  if (!p.includes.empty()) {
    out << ":- include ";
    for (std::size_t i = 0; i < p.includes.size(); ++i) out << (i ? ", " : "") << p.includes[i];
    out << ".\n";
  }
  block(out, "sorts", p.sorts, sort_text);
  block(out, "objects", p.objects, [](const ObjectDecl& o) { return o.name + " :: " + o.sort; });
  block(out, "constants", p.constants, [](const ConstantDecl& c) {
    std::string s = c.intensional ? "intensional " + c.name : c.name;
    if (!c.arg_sorts.empty()) {
      s += '(';
      for (std::size_t i = 0; i < c.arg_sorts.size(); ++i) s += (i ? ", " : "") + c.arg_sorts[i];
      s += ')';
    }
    return s + " :: " + c.result_sort;
  });
  block(out, "variables", p.variables,
        [](const VariableDecl& v) { return v.name + " :: " + v.sort; });
  if (!p.inertial.empty()) {
    out << ":- inertial ";
    for (std::size_t i = 0; i < p.inertial.size(); ++i) out << (i ? ", " : "") << p.inertial[i];
    out << ".\n";
  }
  for (const auto& r : p.rules) out << to_string(r) << '\n';
  return out.str();
}

}  // namespace aspmtqs
