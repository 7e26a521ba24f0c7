#include "aspmtqs/ground/ground.hpp"

#include "aspmtqs/syntax/desugar.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace aspmtqs {

namespace {

// ---- traversal helpers -------------------------------------------------------

void term_apps(const Term& t, const std::function<void(const ApplyTerm&)>& fn) {
  if (auto* a = t.as<ApplyTerm>()) {
    fn(*a);
    for (const auto& arg : a->args) term_apps(arg, fn);
  } else if (auto* e = t.as<ArithTerm>()) {
    for (const auto& op : e->operands) term_apps(op, fn);
  }
}

void atomic_formulas(const Formula& f, const std::function<void(const Formula&)>& fn) {
  if (f.as<AtomFormula>() || f.as<CompareFormula>()) {
    fn(f);
  } else if (auto* a = f.as<AndFormula>()) {
    for (const auto& i : a->items) atomic_formulas(i, fn);
  } else if (auto* o = f.as<OrFormula>()) {
    for (const auto& i : o->items) atomic_formulas(i, fn);
  } else if (auto* imp = f.as<ImpliesFormula>()) {
    atomic_formulas(imp->antecedent, fn);
    atomic_formulas(imp->consequent, fn);
  }
}

void term_vars(const Term& t, std::vector<VariableDecl>& out) {
  if (auto* v = t.as<VariableTerm>()) {
    if (std::none_of(out.begin(), out.end(), [&](const VariableDecl& d) { return d.name == v->name; }))
      out.push_back({v->name, v->sort});
  } else if (auto* a = t.as<ApplyTerm>()) {
    for (const auto& arg : a->args) term_vars(arg, out);
  } else if (auto* e = t.as<ArithTerm>()) {
    for (const auto& op : e->operands) term_vars(op, out);
  }
}

void formula_vars(const Formula& f, std::vector<VariableDecl>& out) {
  atomic_formulas(f, [&](const Formula& a) {
    if (auto* at = a.as<AtomFormula>()) {
      for (const auto& arg : at->args) term_vars(arg, out);
    } else if (auto* c = a.as<CompareFormula>()) {
      term_vars(c->lhs, out);
      term_vars(c->rhs, out);
    }
  });
}

bool term_mentions(const Term& t, const std::string& function) {
  bool found = false;
  term_apps(t, [&](const ApplyTerm& a) { found = found || a.function == function; });
  return found;
}

bool term_has_var(const Term& t, const std::string& var) {
  std::vector<VariableDecl> vars;
  term_vars(t, vars);
  return std::any_of(vars.begin(), vars.end(), [&](const VariableDecl& v) { return v.name == var; });
}

// ---- substitution ------------------------------------------------------------------

using Binding = std::map<std::string, Term>;

Term substitute(const Term& t, const Binding& b) {
  if (auto* v = t.as<VariableTerm>()) {
    auto it = b.find(v->name);
    return it == b.end() ? t : it->second;
  }
  if (auto* a = t.as<ApplyTerm>()) {
    std::vector<Term> args;
    for (const auto& arg : a->args) args.push_back(substitute(arg, b));
    return Term::apply(a->function, std::move(args));
  }
  if (auto* e = t.as<ArithTerm>()) {
    switch (e->op) {
      case ArithOp::Add: return Term::add(substitute(e->operands[0], b), substitute(e->operands[1], b));
      case ArithOp::Sub: return Term::sub(substitute(e->operands[0], b), substitute(e->operands[1], b));
      case ArithOp::Mul: return Term::mul(substitute(e->operands[0], b), substitute(e->operands[1], b));
      case ArithOp::Neg: return Term::neg(substitute(e->operands[0], b));
    }
  }
  return t;
}

Formula substitute(const Formula& f, const Binding& b) {
  if (auto* a = f.as<AtomFormula>()) {
    std::vector<Term> args;
    for (const auto& arg : a->args) args.push_back(substitute(arg, b));
    return Formula::atom(a->predicate, std::move(args));
  }
  if (auto* c = f.as<CompareFormula>())
    return Formula::compare(c->op, substitute(c->lhs, b), substitute(c->rhs, b));
  if (auto* a = f.as<AndFormula>()) {
    std::vector<Formula> items;
    for (const auto& i : a->items) items.push_back(substitute(i, b));
    return Formula::conj(std::move(items));
  }
  if (auto* o = f.as<OrFormula>()) {
    std::vector<Formula> items;
    for (const auto& i : o->items) items.push_back(substitute(i, b));
    return Formula::disj(std::move(items));
  }
  if (f.is_truth()) return f;
  if (auto* imp = f.as<ImpliesFormula>())
    return Formula::implies(substitute(imp->antecedent, b), substitute(imp->consequent, b));
  return f;
}

// ---- folding -------------------------------------------------------------------------

struct OutOfRange {};

class Folder {
 public:
  explicit Folder(const Program& p) : program_(p) {}

  Term term(const Term& t) const {
    if (auto* a = t.as<ApplyTerm>()) return Term::apply(a->function, args(a->function, a->args));
    if (auto* e = t.as<ArithTerm>()) {
      std::vector<Term> ops;
      for (const auto& op : e->operands) ops.push_back(term(op));
      auto num = [&](std::size_t i) { return ops[i].as<NumberTerm>(); };
      if (e->op == ArithOp::Neg) {
        if (auto* n = num(0)) return Term::number(Rational(-n->value));
        return Term::neg(ops[0]);
      }
      if (num(0) && num(1)) {
        const Rational& l = num(0)->value;
        const Rational& r = num(1)->value;
        switch (e->op) {
          case ArithOp::Add: return Term::number(Rational(l + r));
          case ArithOp::Sub: return Term::number(Rational(l - r));
          default: return Term::number(Rational(l * r));
        }
      }
      switch (e->op) {
        case ArithOp::Add: return Term::add(ops[0], ops[1]);
        case ArithOp::Sub: return Term::sub(ops[0], ops[1]);
        default: return Term::mul(ops[0], ops[1]);
      }
    }
    return t;
  }

  std::vector<Term> args(const std::string& constant, const std::vector<Term>& raw) const {
    const ConstantDecl* decl = program_.find_constant(constant);
    std::vector<Term> out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      Term a = term(raw[i]);
      if (decl && i < decl->arg_sorts.size()) {
        const SortDecl* s = program_.find_sort(decl->arg_sorts[i]);
        if (auto* n = a.as<NumberTerm>(); n && s && s->kind == SortKind::IntegerRange) {
          if (!is_integer(n->value) || n->value < s->lo || n->value > s->hi) throw OutOfRange{};
        }
      }
      out.push_back(std::move(a));
    }
    return out;
  }

  Formula formula(const Formula& f) const {
    if (f.is_falsity() || f.is_truth()) return f;
    if (auto* a = f.as<AtomFormula>()) return Formula::atom(a->predicate, args(a->predicate, a->args));
    if (auto* c = f.as<CompareFormula>()) {
      Term l = term(c->lhs);
      Term r = term(c->rhs);
      auto* ln = l.as<NumberTerm>();
      auto* rn = r.as<NumberTerm>();
      if (ln && rn) {
        bool v = false;
        switch (c->op) {
          case CompareOp::Lt: v = ln->value < rn->value; break;
          case CompareOp::Le: v = ln->value <= rn->value; break;
          case CompareOp::Eq: v = ln->value == rn->value; break;
          case CompareOp::Ge: v = ln->value >= rn->value; break;
          case CompareOp::Gt: v = ln->value > rn->value; break;
        }
        return v ? Formula::truth() : Formula::falsity();
      }
      auto* lo = l.as<ObjectTerm>();
      auto* ro = r.as<ObjectTerm>();
      if (lo && ro) return lo->name == ro->name ? Formula::truth() : Formula::falsity();
      return Formula::compare(c->op, l, r);
    }
    if (auto* a = f.as<AndFormula>()) {
      std::vector<Formula> items;
      for (const auto& i : a->items) {
        Formula g = formula(i);
        if (g.is_falsity()) return g;
        if (!g.is_truth()) items.push_back(g);
      }
      if (items.empty()) return Formula::truth();
      if (items.size() == 1) return items.front();
      return Formula::conj(std::move(items));
    }
    if (auto* o = f.as<OrFormula>()) {
      std::vector<Formula> items;
      for (const auto& i : o->items) {
        Formula g = formula(i);
        if (g.is_truth()) return g;
        if (!g.is_falsity()) items.push_back(g);
      }
      if (items.empty()) return Formula::falsity();
      if (items.size() == 1) return items.front();
      return Formula::disj(std::move(items));
    }
    if (auto* imp = f.as<ImpliesFormula>()) {
      Formula a = formula(imp->antecedent);
      if (a.is_falsity()) return Formula::truth();
      Formula b = formula(imp->consequent);
      if (a.is_truth()) return b;
      if (b.is_truth()) return b;
      return Formula::implies(a, b);
    }
    return f;
  }

 private:
  const Program& program_;
};

std::vector<Formula> conjuncts(const Formula& body) {
  if (body.is_truth()) return {};
  if (auto* a = body.as<AndFormula>()) return a->items;
  return {body};
}

Formula from_conjuncts(std::vector<Formula> items) {
  if (items.empty()) return Formula::truth();
  if (items.size() == 1) return items.front();
  return Formula::conj(std::move(items));
}

bool is_real_var(const Term& t, const Program& p) {
  auto* v = t.as<VariableTerm>();
  if (!v) return false;
  const SortDecl* s = p.find_sort(v->sort);
  return s && s->kind == SortKind::Real;
}

std::string where_text(SourceLocation w) {
  return std::to_string(w.line) + ":" + std::to_string(w.column);
}

// Substitutes real variables fixed by a top-level body equality V = t.
Rule eliminate_real_vars(const Rule& rule, const Program& p) {
  Rule r = rule;
  for (bool changed = true; changed;) {
    changed = false;
    auto items = conjuncts(r.body);
    for (std::size_t i = 0; i < items.size() && !changed; ++i) {
      auto* c = items[i].as<CompareFormula>();
      if (!c || c->op != CompareOp::Eq) continue;
      for (int side = 0; side < 2 && !changed; ++side) {
        const Term& var = side == 0 ? c->lhs : c->rhs;
        const Term& val = side == 0 ? c->rhs : c->lhs;
        if (!is_real_var(var, p)) continue;
        const std::string& name = var.as<VariableTerm>()->name;
        if (term_has_var(val, name)) continue;
        Binding b{{name, val}};
        std::vector<Formula> rest;
        for (std::size_t j = 0; j < items.size(); ++j)
          if (j != i) rest.push_back(substitute(items[j], b));
        r.body = from_conjuncts(std::move(rest));
        r.head.formula = substitute(r.head.formula, b);
        changed = true;
      }
    }
  }
  return r;
}

bool has_double_negated_head(const Rule& r) {
  for (const auto& item : conjuncts(r.body)) {
    const Formula* once = item.negated();
    const Formula* twice = once ? once->negated() : nullptr;
    if (twice && *twice == r.head.formula) return true;
  }
  return false;
}

std::string key_of(const std::string& name, const std::vector<Term>& args) {
  if (args.empty()) return name;
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + to_string(args[i]);
  return s + ")";
}

}  // namespace

std::string GroundInstance::key() const { return key_of(constant, args); }

Term GroundInstance::term() const { return Term::apply(constant, args); }

Formula GroundInstance::atom() const { return Formula::atom(constant, args); }

std::string instance_key(const Formula& atom) {
  auto* a = atom.as<AtomFormula>();
  return a ? key_of(a->predicate, a->args) : to_string(atom);
}

std::string instance_key(const Term& application) {
  auto* a = application.as<ApplyTerm>();
  return a ? key_of(a->function, a->args) : to_string(application);
}

void collect_instances(const Term& t, std::vector<GroundInstance>& out) {
  term_apps(t, [&](const ApplyTerm& a) {
    GroundInstance g{a.function, a.args, false};
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  });
}

void collect_instances(const Formula& f, std::vector<GroundInstance>& out) {
  atomic_formulas(f, [&](const Formula& a) {
    if (auto* at = a.as<AtomFormula>()) {
      GroundInstance g{at->predicate, at->args, true};
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
      for (const auto& arg : at->args) collect_instances(arg, out);
    } else if (auto* c = a.as<CompareFormula>()) {
      collect_instances(c->lhs, out);
      collect_instances(c->rhs, out);
    }
  });
}

Program GroundProgram::to_program() const {
  Program p = declarations;
  p.inertial.clear();  // the frame axioms are among the ground rules already
  for (const auto& gr : rules) {
    p.rules.push_back(gr.rule);
    if (gr.free_value && !p.find_variable(gr.free_value->name))
      p.variables.push_back(*gr.free_value);
  }
  return p;
}

std::vector<Violation> check_f_plain(const Program& program) {
  std::vector<Violation> out;
  std::vector<std::string> functions;
  for (const auto& c : program.constants)
    if (c.intensional && !c.is_predicate()) functions.push_back(c.name);
  for (const auto& rule : program.rules) {
    auto visit = [&](const Formula& a) {
      for (const auto& f : functions) {
        bool mentions = false;
        bool plain = false;
        if (auto* at = a.as<AtomFormula>()) {
          for (const auto& arg : at->args) mentions = mentions || term_mentions(arg, f);
        } else if (auto* c = a.as<CompareFormula>()) {
          mentions = term_mentions(c->lhs, f) || term_mentions(c->rhs, f);
          if (c->op == CompareOp::Eq) {
            for (int side = 0; side < 2 && !plain; ++side) {
              const Term& app = side == 0 ? c->lhs : c->rhs;
              const Term& other = side == 0 ? c->rhs : c->lhs;
              auto* ap = app.as<ApplyTerm>();
              if (!ap || ap->function != f || term_mentions(other, f)) continue;
              plain = std::none_of(ap->args.begin(), ap->args.end(),
                                   [&](const Term& t) { return term_mentions(t, f); });
            }
          }
        }
        if (mentions && !plain)
          out.push_back({"'" + to_string(a) + "' is not plain in intensional function '" + f + "'",
                         rule.where});
      }
    };
    if (rule.head.kind != Head::Kind::Falsity) atomic_formulas(rule.head.formula, visit);
    atomic_formulas(rule.body, visit);
  }
  return out;
}

std::vector<Violation> check_av_separated(const Program& program) {
  std::vector<Violation> out;
  auto intensional_fn = [&](const std::string& name) {
    const ConstantDecl* c = program.find_constant(name);
    return c && c->intensional && !c->is_predicate();
  };
  for (const auto& rule : program.rules) {
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& v) {
      auto it = parent.find(v);
      if (it == parent.end() || it->second == v) return v;
      return it->second = find(it->second);
    };
    std::vector<std::pair<std::string, std::string>> values;     // (variable, function)
    std::vector<std::pair<std::string, std::string>> arguments;  // (variable, function)
    auto visit = [&](const Formula& a) {
      auto note_args = [&](const Term& t) {
        term_apps(t, [&](const ApplyTerm& ap) {
          if (!intensional_fn(ap.function)) return;
          for (const auto& arg : ap.args) {
            std::vector<VariableDecl> vars;
            term_vars(arg, vars);
            for (const auto& v : vars) arguments.emplace_back(v.name, ap.function);
          }
        });
      };
      if (auto* at = a.as<AtomFormula>()) {
        for (const auto& arg : at->args) note_args(arg);
      } else if (auto* c = a.as<CompareFormula>()) {
        note_args(c->lhs);
        note_args(c->rhs);
        if (c->op != CompareOp::Eq) return;
        auto* lv = c->lhs.as<VariableTerm>();
        auto* rv = c->rhs.as<VariableTerm>();
        if (lv && rv) parent[find(lv->name)] = find(rv->name);
        auto* la = c->lhs.as<ApplyTerm>();
        auto* ra = c->rhs.as<ApplyTerm>();
        if (la && rv && intensional_fn(la->function)) values.emplace_back(rv->name, la->function);
        if (ra && lv && intensional_fn(ra->function)) values.emplace_back(lv->name, ra->function);
      }
    };
    if (rule.head.kind != Head::Kind::Falsity) atomic_formulas(rule.head.formula, visit);
    atomic_formulas(rule.body, visit);
    std::set<std::string> reported;
    for (const auto& [vv, f] : values) {
      for (const auto& [av, g] : arguments) {
        if (f == g || find(vv) != find(av)) continue;
        std::string msg = "value variable " + vv + " of '" + f + "' reaches argument variable " +
                          av + " of '" + g + "'";
        if (reported.insert(msg).second) out.push_back({msg, rule.where});
      }
    }
  }
  return out;
}

Program prepare(const Program& program) {
  Program p = program;
  p.rules.clear();
  for (const auto& name : program.inertial) {
    const ConstantDecl* c = program.find_constant(name);
    if (!c) throw GroundError("undeclared inertial constant '" + name + "'");
    const SortDecl* step = c->arg_sorts.empty() ? nullptr : program.find_sort(c->arg_sorts.back());
    if (!step) throw GroundError("inertial constant '" + name + "' has no step argument");
    for (auto& r : expand_frame_macro(*c, *step)) p.rules.push_back(desugar_choice(r));
  }
  for (const auto& r : program.rules) p.rules.push_back(desugar_choice(r));
  for (const auto& r : p.rules)
    for (const auto& v : [&] {
           std::vector<VariableDecl> vars;
           if (r.head.kind != Head::Kind::Falsity) formula_vars(r.head.formula, vars);
           formula_vars(r.body, vars);
           return vars;
         }())
      if (!p.find_variable(v.name)) p.variables.push_back(v);
  return p;
}

GroundProgram ground(const Program& input) {
  GroundProgram gp;
  gp.declarations = input;
  gp.declarations.rules.clear();
  const Program& p = input;
  Folder folder(p);

  std::map<std::string, GroundRule> unique;
  for (const auto& source : p.rules) {
    if (source.head.choice)
      throw GroundError(where_text(source.where) + ": choice rules must be desugared before grounding");
    Rule rule = eliminate_real_vars(source, p);
    std::vector<VariableDecl> vars;
    if (rule.head.kind != Head::Kind::Falsity) formula_vars(rule.head.formula, vars);
    formula_vars(rule.body, vars);

    std::optional<VariableDecl> free_value;
    std::vector<VariableDecl> finite;
    for (const auto& v : vars) {
      const SortDecl* s = p.find_sort(v.sort);
      if (!s) throw GroundError("variable " + v.name + " has undeclared sort '" + v.sort + "'");
      if (s->kind != SortKind::Real) {
        finite.push_back(v);
        continue;
      }
      bool head_value = false;
      if (rule.head.kind == Head::Kind::FunctionEq) {
        auto* c = rule.head.formula.as<CompareFormula>();
        auto* hv = c ? c->rhs.as<VariableTerm>() : nullptr;
        head_value = hv && hv->name == v.name && has_double_negated_head(rule);
      }
      if (!head_value || free_value)
        throw GroundError(where_text(source.where) + ": unsafe real variable " + v.name +
                          " (no equality determines it)");
      free_value = v;
    }

    std::vector<std::vector<std::string>> domains;
    for (const auto& v : finite) {
      domains.push_back(p.domain(v.sort));
      if (domains.back().empty())
        throw GroundError(where_text(source.where) + ": variable " + v.name + " ranges over empty sort '" +
                          v.sort + "'");
    }

    std::vector<std::size_t> idx(finite.size(), 0);
    while (true) {
      Binding b;
      for (std::size_t i = 0; i < finite.size(); ++i) {
        const std::string& value = domains[i][idx[i]];
        const SortDecl* s = p.find_sort(finite[i].sort);
        b.emplace(finite[i].name, s->kind == SortKind::IntegerRange
                                      ? Term::number(*parse_rational(value))
                                      : Term::object(value));
      }
      try {
        GroundRule gr;
        gr.free_value = free_value;
        gr.rule.where = source.where;
        gr.rule.head.kind = rule.head.kind;
        gr.rule.head.formula =
            rule.head.kind == Head::Kind::Falsity ? rule.head.formula
                                                  : folder.formula(substitute(rule.head.formula, b));
        gr.rule.body = folder.formula(substitute(rule.body, b));
        bool keep = !gr.rule.body.is_falsity();
        if (rule.head.kind == Head::Kind::FunctionEq && !gr.rule.head.formula.as<CompareFormula>())
          keep = false;  // degenerate head after folding cannot arise from a typed program
        if (keep) unique.emplace(to_string(gr.rule), std::move(gr));
      } catch (const OutOfRange&) {
      }
      std::size_t k = 0;
      for (; k < idx.size(); ++k) {
        if (++idx[k] < domains[k].size()) break;
        idx[k] = 0;
      }
      if (k == idx.size()) break;
    }
  }
  for (auto& [text, gr] : unique) gp.rules.push_back(std::move(gr));

  for (const auto& c : p.constants) {
    for (const auto& sort : c.arg_sorts) {
      const SortDecl* s = p.find_sort(sort);
      if (!s || s->kind == SortKind::Real)
        throw GroundError("constant '" + c.name + "' has a real-sorted argument");
    }
    if (!c.intensional) continue;
    std::vector<std::vector<Term>> tuples = {{}};
    for (const auto& sort : c.arg_sorts) {
      const SortDecl* s = p.find_sort(sort);
      std::vector<std::vector<Term>> next;
      for (const auto& t : tuples)
        for (const auto& v : p.domain(sort)) {
          auto ext = t;
          ext.push_back(s->kind == SortKind::IntegerRange ? Term::number(*parse_rational(v))
                                                          : Term::object(v));
          next.push_back(std::move(ext));
        }
      tuples = std::move(next);
    }
    for (auto& t : tuples) gp.intensionals.push_back({c.name, std::move(t), c.is_predicate()});
  }
  return gp;
}

Formula ground_formula(const Formula& formula, const Program& program) {
  std::vector<VariableDecl> vars;
  formula_vars(formula, vars);
  if (!vars.empty()) throw GroundError("formula contains variable " + vars.front().name);
  try {
    return Folder(program).formula(formula);
  } catch (const OutOfRange&) {
    throw GroundError("formula '" + to_string(formula) + "' has an argument outside its sort");
  }
}

}  // namespace aspmtqs
