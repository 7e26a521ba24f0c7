#include "aspmtqs/spatial/semantics.hpp"

#include "aspmtqs/error.hpp"
#include "aspmtqs/spatial/catalog.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include <map>
#include <set>

namespace aspmtqs::spatial {

namespace {

bool is_geometric(const Program& p, const std::string& sort) {
  const SortDecl* s = p.find_sort(sort);
  return s && (s->kind == SortKind::Geometric || s->kind == SortKind::AnyGeometric);
}

std::vector<std::vector<Term>> tuples_over(const Program& p, std::span<const std::string> sorts) {
  std::vector<std::vector<Term>> tuples = {{}};
  for (const auto& sort : sorts) {
    const SortDecl* s = p.find_sort(sort);
    if (!s) throw SpatialError("undeclared sort '" + sort + "'");
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
  return tuples;
}

Rule make_rule(Head::Kind kind, Formula head, Formula body) {
  Rule r;
  r.head.kind = kind;
  r.head.formula = std::move(head);
  r.body = std::move(body);
  return r;
}

}  // namespace

ParamTerms object_terms(const Program& program, const std::string& object,
                        const std::vector<Term>& extras) {
  auto shape = program.shape_of(object);
  if (!shape) throw SpatialError("object '" + object + "' is not geometric");
  ParamTerms out;
  for (const auto& name : parameter_names(*shape)) {
    const ConstantDecl* c = program.find_constant(name);
    if (!c || c->is_predicate() || c->arg_sorts.size() != extras.size() + 1)
      throw SpatialError("parametric function '" + name + "' is not declared for '" + object + "'");
    std::vector<Term> args = {Term::object(object)};
    args.insert(args.end(), extras.begin(), extras.end());
    out.push_back(Term::apply(name, std::move(args)));
  }
  return out;
}

void add_spatial_semantics(GroundProgram& gp, std::span<const Formula> queries) {
  const Program& p = gp.declarations;
  const std::vector<std::string> scope = p.theories_in_scope();

  std::set<std::string> mentioned;
  std::set<std::string> derived;  // heads of user rules
  {
    std::vector<GroundInstance> found;
    for (const auto& gr : gp.rules) {
      if (gr.rule.head.kind != Head::Kind::Falsity) {
        collect_instances(gr.rule.head.formula, found);
        if (gr.rule.head.kind == Head::Kind::Atom) derived.insert(instance_key(gr.rule.head.formula));
      }
      collect_instances(gr.rule.body, found);
    }
    for (const auto& q : queries) collect_instances(q, found);
    for (const auto& g : found) mentioned.insert(g.key());
  }

  std::vector<GroundRule> added;
  for (const auto& inst : gp.intensionals) {
    if (!inst.predicate || relations_named(inst.constant, scope).empty()) continue;
    const ConstantDecl* c = p.find_constant(inst.constant);
    std::size_t n = 0;
    while (n < c->arg_sorts.size() && is_geometric(p, c->arg_sorts[n])) ++n;
    std::vector<Shape> shapes;
    for (std::size_t i = 0; i < n; ++i) {
      auto* obj = inst.args[i].as<ObjectTerm>();
      auto shape = obj ? p.shape_of(obj->name) : std::nullopt;
      if (!shape) throw SpatialError("argument " + std::to_string(i + 1) + " of '" + inst.key() +
                                     "' is not a geometric object");
      shapes.push_back(*shape);
    }
    const RelationDef* rel = find_relation(inst.constant, shapes, scope);
    if (!rel) {
      if (mentioned.count(inst.key())) {
        std::string kinds;
        for (const auto& s : shapes) kinds += (kinds.empty() ? "" : ", ") + shape_name(s);
        throw SpatialError("no relation '" + inst.constant + "' over (" + kinds + ") in '" +
                           inst.key() + "'");
      }
      continue;
    }
    std::vector<Term> extras(inst.args.begin() + static_cast<long>(n), inst.args.end());
    std::vector<ParamTerms> args;
    for (std::size_t i = 0; i < n; ++i)
      args.push_back(object_terms(p, inst.args[i].as<ObjectTerm>()->name, extras));
    Formula body = expand_relation(*rel, args);
    Formula atom = inst.atom();
    added.push_back({make_rule(Head::Kind::Atom, atom, body), std::nullopt});
    if (derived.count(inst.key()))
      added.push_back({make_rule(Head::Kind::Falsity, Formula::falsity(),
                                 Formula::conj({atom, Formula::negate(body)})),
                       std::nullopt});
  }

  for (const auto& obj : p.objects) {
    auto shape = p.shape_of(obj.name);
    if (!shape) continue;
    auto names = parameter_names(*shape);
    const ConstantDecl* first = p.find_constant(names.front());
    if (!first || first->is_predicate() || first->arg_sorts.empty() ||
        !p.in_sort(obj.name, first->arg_sorts.front()))
      continue;
    bool complete = true;
    for (const auto& name : names) {
      const ConstantDecl* c = p.find_constant(name);
      complete = complete && c && !c->is_predicate() && c->arg_sorts == first->arg_sorts;
    }
    if (!complete) continue;
    std::vector<std::string> extra_sorts(first->arg_sorts.begin() + 1, first->arg_sorts.end());
    for (const auto& extras : tuples_over(p, extra_sorts)) {
      Formula inv = shape_invariant(*shape, object_terms(p, obj.name, extras));
      if (inv.is_truth()) continue;
      added.push_back({make_rule(Head::Kind::Falsity, Formula::falsity(), Formula::negate(inv)),
                       std::nullopt});
    }
  }

  std::map<std::string, GroundRule> unique;
  for (auto& gr : gp.rules) unique.emplace(to_string(gr.rule), std::move(gr));
  for (auto& gr : added) unique.emplace(to_string(gr.rule), std::move(gr));
  gp.rules.clear();
  for (auto& [text, gr] : unique) gp.rules.push_back(std::move(gr));
}

}  // namespace aspmtqs::spatial
