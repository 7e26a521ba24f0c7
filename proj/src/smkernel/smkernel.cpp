#include "aspmtqs/smkernel/smkernel.hpp"

#include "aspmtqs/error.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace aspmtqs {

namespace {

void term_apps(const Term& t, const std::function<void(const ApplyTerm&)>& fn) {
  if (auto* a = t.as<ApplyTerm>()) {
    fn(*a);
    for (const auto& arg : a->args) term_apps(arg, fn);
  } else if (auto* e = t.as<ArithTerm>()) {
    for (const auto& op : e->operands) term_apps(op, fn);
  }
}

// Instances occurring strictly positively: not inside any antecedent.
void positive_instances(const Formula& f, std::vector<std::string>& out) {
  if (auto* a = f.as<AtomFormula>()) {
    out.push_back(instance_key(f));
    (void)a;
  } else if (auto* c = f.as<CompareFormula>()) {
    for (const Term* t : {&c->lhs, &c->rhs})
      term_apps(*t, [&](const ApplyTerm& ap) {
        out.push_back(instance_key(Term::apply(ap.function, ap.args)));
      });
  } else if (auto* a = f.as<AndFormula>()) {
    for (const auto& i : a->items) positive_instances(i, out);
  } else if (auto* o = f.as<OrFormula>()) {
    for (const auto& i : o->items) positive_instances(i, out);
  } else if (auto* imp = f.as<ImpliesFormula>()) {
    positive_instances(imp->consequent, out);
  }
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const Term* head_application(const Rule& r) {
  auto* c = r.head.formula.as<CompareFormula>();
  return c ? &c->lhs : nullptr;
}

const Term* head_value(const Rule& r) {
  auto* c = r.head.formula.as<CompareFormula>();
  return c ? &c->rhs : nullptr;
}

std::string head_key(const Rule& r) {
  if (r.head.kind == Head::Kind::Atom) return instance_key(r.head.formula);
  return instance_key(*head_application(r));
}

Term replace_var(const Term& t, const std::string& var, const Term& value) {
  if (auto* v = t.as<VariableTerm>()) return v->name == var ? value : t;
  if (auto* a = t.as<ApplyTerm>()) {
    std::vector<Term> args;
    for (const auto& arg : a->args) args.push_back(replace_var(arg, var, value));
    return Term::apply(a->function, std::move(args));
  }
  if (auto* e = t.as<ArithTerm>()) {
    std::vector<Term> ops;
    for (const auto& op : e->operands) ops.push_back(replace_var(op, var, value));
    switch (e->op) {
      case ArithOp::Add: return Term::add(ops[0], ops[1]);
      case ArithOp::Sub: return Term::sub(ops[0], ops[1]);
      case ArithOp::Mul: return Term::mul(ops[0], ops[1]);
      case ArithOp::Neg: return Term::neg(ops[0]);
    }
  }
  return t;
}

Formula replace_var(const Formula& f, const std::string& var, const Term& value) {
  if (auto* a = f.as<AtomFormula>()) {
    std::vector<Term> args;
    for (const auto& arg : a->args) args.push_back(replace_var(arg, var, value));
    return Formula::atom(a->predicate, std::move(args));
  }
  if (auto* c = f.as<CompareFormula>())
    return Formula::compare(c->op, replace_var(c->lhs, var, value), replace_var(c->rhs, var, value));
  if (auto* a = f.as<AndFormula>()) {
    std::vector<Formula> items;
    for (const auto& i : a->items) items.push_back(replace_var(i, var, value));
    return Formula::conj(std::move(items));
  }
  if (auto* o = f.as<OrFormula>()) {
    std::vector<Formula> items;
    for (const auto& i : o->items) items.push_back(replace_var(i, var, value));
    return Formula::disj(std::move(items));
  }
  if (f.is_truth()) return f;
  if (auto* imp = f.as<ImpliesFormula>())
    return Formula::implies(replace_var(imp->antecedent, var, value),
                            replace_var(imp->consequent, var, value));
  return f;
}

// Body of a free-value choice rule without its not-not head conjunct.
Formula strip_choice_guard(const Rule& r) {
  std::vector<Formula> items;
  if (auto* a = r.body.as<AndFormula>()) {
    items = a->items;
  } else if (!r.body.is_truth()) {
    items = {r.body};
  }
  std::vector<Formula> kept;
  bool dropped = false;
  for (const auto& i : items) {
    const Formula* once = i.negated();
    const Formula* twice = once ? once->negated() : nullptr;
    if (!dropped && twice && *twice == r.head.formula) {
      dropped = true;
      continue;
    }
    kept.push_back(i);
  }
  if (kept.empty()) return Formula::truth();
  if (kept.size() == 1) return kept.front();
  return Formula::conj(std::move(kept));
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& hat) {
  if (auto* a = t.as<ApplyTerm>()) {
    std::vector<Term> args;
    for (const auto& arg : a->args) args.push_back(rename_term(arg, hat));
    auto it = hat.find(a->function);
    return Term::apply(it == hat.end() ? a->function : it->second, std::move(args));
  }
  if (auto* e = t.as<ArithTerm>()) {
    std::vector<Term> ops;
    for (const auto& op : e->operands) ops.push_back(rename_term(op, hat));
    switch (e->op) {
      case ArithOp::Add: return Term::add(ops[0], ops[1]);
      case ArithOp::Sub: return Term::sub(ops[0], ops[1]);
      case ArithOp::Mul: return Term::mul(ops[0], ops[1]);
      case ArithOp::Neg: return Term::neg(ops[0]);
    }
  }
  return t;
}

std::vector<Rational> literals(const std::vector<Formula>& fs) {
  std::set<Rational> values = {Rational(0), Rational(1)};
  std::function<void(const Term&)> visit_term = [&](const Term& t) {
    if (auto* n = t.as<NumberTerm>()) values.insert(n->value);
    if (auto* e = t.as<ArithTerm>())
      for (const auto& op : e->operands) visit_term(op);
  };
  std::function<void(const Formula&)> visit = [&](const Formula& f) {
    if (auto* c = f.as<CompareFormula>()) {
      visit_term(c->lhs);
      visit_term(c->rhs);
    } else if (auto* a = f.as<AndFormula>()) {
      for (const auto& i : a->items) visit(i);
    } else if (auto* o = f.as<OrFormula>()) {
      for (const auto& i : o->items) visit(i);
    } else if (auto* imp = f.as<ImpliesFormula>()) {
      visit(imp->antecedent);
      visit(imp->consequent);
    }
  };
  for (const auto& f : fs) visit(f);
  return {values.begin(), values.end()};
}

// Enumerates total assignments over predicate and function instances.
class Space {
 public:
  Space(std::vector<GroundInstance> instances, const OracleOptions& options,
        const std::vector<Rational>& defaults)
      : instances_(std::move(instances)) {
    std::size_t total = 1;
    for (const auto& inst : instances_) {
      std::size_t n = 2;
      if (!inst.predicate) {
        auto it = options.value_domains.find(inst.key());
        domains_.push_back(it != options.value_domains.end() ? it->second : defaults);
        n = domains_.back().size();
      } else {
        domains_.push_back({});
      }
      if (n == 0) throw Error("empty value domain for '" + inst.key() + "'");
      if (total > options.bound / n)
        throw Error("interpretation space exceeds the bound of " + std::to_string(options.bound));
      total *= n;
    }
  }

  const std::vector<GroundInstance>& instances() const { return instances_; }
  const std::vector<Rational>& domain(std::size_t i) const { return domains_[i]; }
  std::size_t size(std::size_t i) const {
    return instances_[i].predicate ? 2 : domains_[i].size();
  }

  // Calls fn with each interpretation; stops when fn returns false.
  void for_each(const std::function<bool(const Interpretation&)>& fn) const {
    std::vector<std::size_t> idx(instances_.size(), 0);
    while (true) {
      if (!fn(build(idx))) return;
      std::size_t k = 0;
      for (; k < idx.size(); ++k) {
        if (++idx[k] < size(k)) break;
        idx[k] = 0;
      }
      if (k == idx.size()) return;
    }
  }

  Interpretation build(const std::vector<std::size_t>& idx) const {
    Interpretation I;
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      if (instances_[i].predicate) {
        I.atoms[instances_[i].key()] = idx[i] == 1;
      } else {
        I.functions[instances_[i].key()] = domains_[i][idx[i]];
      }
    }
    return I;
  }

 private:
  std::vector<GroundInstance> instances_;
  std::vector<std::vector<Rational>> domains_;
};

bool model_less(const Interpretation& a, const Interpretation& b) {
  return to_string(a) < to_string(b);
}

}  // namespace

std::string DependencyGraph::to_dot() const {
  std::ostringstream out;
  out << "digraph dependencies {\n";
  for (const auto& v : vertices) out << "  " << dot_quote(v) << ";\n";
  for (const auto& [a, b] : edges) out << "  " << dot_quote(a) << " -> " << dot_quote(b) << ";\n";
  out << "}\n";
  return out.str();
}

DependencyGraph build_dependency_graph(const GroundProgram& gp) {
  DependencyGraph g;
  std::set<std::string> intensional;
  for (const auto& inst : gp.intensionals) {
    g.vertices.push_back(inst.key());
    intensional.insert(inst.key());
  }
  for (const auto& gr : gp.rules) {
    const Rule& r = gr.rule;
    if (r.head.kind == Head::Kind::Falsity) continue;
    std::string head = head_key(r);
    if (!intensional.count(head)) continue;
    std::vector<std::string> deps;
    positive_instances(r.body, deps);
    if (r.head.kind == Head::Kind::FunctionEq)
      term_apps(*head_value(r), [&](const ApplyTerm& ap) {
        deps.push_back(instance_key(Term::apply(ap.function, ap.args)));
      });
    for (const auto& d : deps)
      if (intensional.count(d)) g.edges.emplace(head, d);
  }
  return g;
}

Tightness is_tight(const DependencyGraph& graph) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [a, b] : graph.edges) adj[a].push_back(b);
  std::map<std::string, int> color;  // 0 white, 1 on stack, 2 done
  std::vector<std::string> stack;
  Tightness result;
  std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
    color[v] = 1;
    stack.push_back(v);
    for (const auto& w : adj[v]) {
      if (color[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        result.cycle.assign(it, stack.end());
        return true;
      }
      if (color[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    color[v] = 2;
    return false;
  };
  std::vector<std::string> roots = graph.vertices;
  for (const auto& [a, b] : graph.edges) roots.push_back(a);
  for (const auto& v : roots) {
    if (color[v] == 0 && dfs(v)) {
      result.tight = false;
      return result;
    }
  }
  return result;
}

CnfTheory to_clark_normal_form(const GroundProgram& gp) {
  CnfTheory cnf;
  std::map<std::string, std::size_t> index;
  for (const auto& inst : gp.intensionals) {
    index.emplace(inst.key(), cnf.definitions.size());
    cnf.definitions.push_back({inst, {}});
  }
  for (const auto& gr : gp.rules) {
    const Rule& r = gr.rule;
    if (r.head.kind == Head::Kind::Falsity) {
      cnf.constraints.push_back(r.body);
      continue;
    }
    std::string key = head_key(r);
    auto it = index.find(key);
    if (it == index.end())
      throw CompletionError("rule head '" + key + "' is not an intensional constant");
    Definition& def = cnf.definitions[it->second];
    if (r.head.kind == Head::Kind::Atom) {
      def.bodies.push_back({r.body, std::nullopt, false});
    } else if (gr.free_value) {
      const Term& app = *head_application(r);
      def.bodies.push_back({replace_var(strip_choice_guard(r), gr.free_value->name, app), app, true});
    } else {
      def.bodies.push_back({r.body, *head_value(r), false});
    }
  }
  cnf.graph = build_dependency_graph(gp);
  return cnf;
}

Formula simplify(const Formula& f) {
  if (f.is_falsity() || f.is_truth()) return f;
  if (auto* a = f.as<AndFormula>()) {
    std::vector<Formula> items;
    for (const auto& i : a->items) {
      Formula g = simplify(i);
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
      Formula g = simplify(i);
      if (g.is_truth()) return g;
      if (!g.is_falsity()) items.push_back(g);
    }
    if (items.empty()) return Formula::falsity();
    if (items.size() == 1) return items.front();
    return Formula::disj(std::move(items));
  }
  if (auto* imp = f.as<ImpliesFormula>()) {
    Formula a = simplify(imp->antecedent);
    Formula b = simplify(imp->consequent);
    if (a.is_falsity() || b.is_truth()) return Formula::truth();
    if (a.is_truth()) return b;
    if (b.is_falsity()) {
      if (const Formula* inner = a.negated()) return *inner;  // not not F
      return Formula::negate(a);
    }
    return Formula::implies(a, b);
  }
  return f;
}

CompletedTheory complete(const CnfTheory& cnf) {
  Tightness t = is_tight(cnf.graph);
  if (!t.tight) {
    std::string cycle;
    for (const auto& v : t.cycle) cycle += v + " -> ";
    cycle += t.cycle.front();
    throw CompletionError("program is not tight; dependency cycle: " + cycle);
  }
  CompletedTheory out;
  std::set<std::string> seen;
  auto emit = [&](Formula f, const std::string& defines) {
    if (f.is_truth()) return;
    std::string text = to_string(f);
    if (!seen.insert(defines + "\n" + text).second) return;
    out.clauses.push_back({std::move(f), defines});
  };
  for (const auto& def : cnf.definitions) {
    out.intensionals.push_back(def.head);
    std::string key = def.head.key();
    if (def.head.predicate) {
      std::vector<Formula> guards;
      for (const auto& b : def.bodies) guards.push_back(b.guard);
      Formula rhs = simplify(Formula::disj(std::move(guards)));
      Formula atom = def.head.atom();
      if (rhs.is_truth()) {
        emit(atom, key);
      } else if (rhs.is_falsity()) {
        emit(Formula::negate(atom), key);
      } else {
        emit(Formula::iff(atom, rhs), key);
      }
      continue;
    }
    Term app = def.head.term();
    if (def.bodies.empty()) {
      out.warnings.push_back("intensional function instance '" + key +
                             "' has no defining rule; its completion is unsatisfiable");
      out.clauses.push_back({Formula::falsity(), key});
      continue;
    }
    std::vector<Formula> some;
    for (const auto& b : def.bodies) {
      some.push_back(b.free_value ? b.guard : Formula::conj({b.guard, Formula::equal(app, *b.value)}));
    }
    emit(simplify(Formula::disj(std::move(some))), key);
    for (const auto& b : def.bodies) {
      if (b.free_value) continue;
      emit(simplify(Formula::implies(b.guard, Formula::equal(app, *b.value))), key);
    }
  }
  for (const auto& c : cnf.constraints) emit(simplify(Formula::negate(c)), "");
  return out;
}

Formula star_transform(const Formula& f, const std::map<std::string, std::string>& hat) {
  if (f.is_falsity()) return f;
  if (auto* a = f.as<AtomFormula>()) {
    std::vector<Term> args;
    for (const auto& arg : a->args) args.push_back(rename_term(arg, hat));
    auto it = hat.find(a->predicate);
    Formula renamed = Formula::atom(it == hat.end() ? a->predicate : it->second, std::move(args));
    return Formula::conj({renamed, f});
  }
  if (auto* c = f.as<CompareFormula>()) {
    Formula renamed = Formula::compare(c->op, rename_term(c->lhs, hat), rename_term(c->rhs, hat));
    return Formula::conj({renamed, f});
  }
  if (auto* a = f.as<AndFormula>()) {
    std::vector<Formula> items;
    for (const auto& i : a->items) items.push_back(star_transform(i, hat));
    return Formula::conj(std::move(items));
  }
  if (auto* o = f.as<OrFormula>()) {
    std::vector<Formula> items;
    for (const auto& i : o->items) items.push_back(star_transform(i, hat));
    return Formula::disj(std::move(items));
  }
  if (auto* imp = f.as<ImpliesFormula>()) {
    return Formula::conj({Formula::implies(star_transform(imp->antecedent, hat),
                                           star_transform(imp->consequent, hat)),
                          f});
  }
  return f;
}

std::string to_string(const Interpretation& model) {
  std::string out = "{";
  bool first = true;
  auto sep = [&]() {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& [k, v] : model.atoms)
    if (v) {
      sep();
      out += k;
    }
  for (const auto& [k, v] : model.functions) {
    sep();
    out += k + "=" + to_string(v);
  }
  return out + "}";
}

std::vector<Interpretation> brute_force_stable_models(const GroundProgram& gp,
                                                      const OracleOptions& options) {
  // F: the conjunction of rules, free value variables expanded over the
  // candidates of their head instance.
  std::vector<Formula> parts;
  std::vector<Formula> plain_rules;
  for (const auto& gr : gp.rules) plain_rules.push_back(Formula::implies(gr.rule.body, gr.rule.head.formula));
  std::vector<Rational> defaults =
      options.default_values.empty() ? literals(plain_rules) : options.default_values;
  auto candidates = [&](const std::string& key) -> const std::vector<Rational>& {
    auto it = options.value_domains.find(key);
    return it != options.value_domains.end() ? it->second : defaults;
  };
  for (const auto& gr : gp.rules) {
    Formula rule = Formula::implies(gr.rule.body, gr.rule.head.formula);
    if (!gr.free_value) {
      parts.push_back(rule);
      continue;
    }
    for (const auto& v : candidates(head_key(gr.rule)))
      parts.push_back(replace_var(rule, gr.free_value->name, Term::number(v)));
  }
  Formula F = Formula::conj(parts);

  std::vector<GroundInstance> instances;
  collect_instances(F, instances);
  std::set<std::string> mentioned;
  for (const auto& i : instances) mentioned.insert(i.key());
  std::set<std::string> intensional_names;
  std::set<std::string> intensional_keys;
  std::vector<std::string> silent_predicates;
  for (const auto& inst : gp.intensionals) {
    intensional_names.insert(inst.constant);
    intensional_keys.insert(inst.key());
    if (mentioned.count(inst.key())) continue;
    if (!inst.predicate) return {};  // no rule can give it a stable value
    silent_predicates.push_back(inst.key());
  }

  std::map<std::string, std::string> hat;
  for (const auto& n : intensional_names) hat[n] = n + "^";
  Formula Fstar = star_transform(F, hat);

  Space space(instances, options, defaults);
  std::vector<std::size_t> intensional_idx;
  for (std::size_t i = 0; i < instances.size(); ++i)
    if (intensional_keys.count(instances[i].key())) intensional_idx.push_back(i);

  std::vector<Interpretation> models;
  space.for_each([&](const Interpretation& I) {
    if (!evaluate(F, I)) return true;
    // Search for c^ < c satisfying F*(c^).
    std::vector<std::size_t> choice(intensional_idx.size(), 0);
    auto option_count = [&](std::size_t j) -> std::size_t {
      const auto& inst = instances[intensional_idx[j]];
      if (inst.predicate) return I.atoms.at(inst.key()) ? 2 : 1;
      return options.fixed_functions ? 1 : space.domain(intensional_idx[j]).size();
    };
    bool smaller_found = false;
    while (!smaller_found) {
      Interpretation J = I;
      bool differs = false;
      for (std::size_t j = 0; j < choice.size(); ++j) {
        const auto& inst = instances[intensional_idx[j]];
        std::string hatted = GroundInstance{hat[inst.constant], inst.args, inst.predicate}.key();
        if (inst.predicate) {
          bool value = I.atoms.at(inst.key()) && choice[j] == 0;
          differs = differs || value != I.atoms.at(inst.key());
          J.atoms[hatted] = value;
        } else {
          Rational value = options.fixed_functions ? I.functions.at(inst.key())
                                                   : space.domain(intensional_idx[j])[choice[j]];
          differs = differs || value != I.functions.at(inst.key());
          J.functions[hatted] = value;
        }
      }
      if (differs && evaluate(Fstar, J)) smaller_found = true;
      std::size_t k = 0;
      for (; k < choice.size(); ++k) {
        if (++choice[k] < option_count(k)) break;
        choice[k] = 0;
      }
      if (k == choice.size()) break;
    }
    if (!smaller_found) {
      Interpretation M = I;
      for (const auto& key : silent_predicates) M.atoms[key] = false;
      models.push_back(std::move(M));
    }
    return true;
  });
  std::sort(models.begin(), models.end(), model_less);
  return models;
}

std::vector<Interpretation> enumerate_models(const CompletedTheory& theory,
                                             const OracleOptions& options) {
  std::vector<Formula> clauses;
  for (const auto& c : theory.clauses) clauses.push_back(c.formula);
  std::vector<GroundInstance> instances;
  for (const auto& c : clauses) collect_instances(c, instances);
  for (const auto& inst : theory.intensionals)
    if (std::find(instances.begin(), instances.end(), inst) == instances.end())
      instances.push_back(inst);
  std::vector<Rational> defaults =
      options.default_values.empty() ? literals(clauses) : options.default_values;
  Formula all = Formula::conj(clauses);
  Space space(instances, options, defaults);
  std::vector<Interpretation> models;
  space.for_each([&](const Interpretation& I) {
    if (evaluate(all, I)) models.push_back(I);
    return true;
  });
  std::sort(models.begin(), models.end(), model_less);
  return models;
}

}  // namespace aspmtqs
