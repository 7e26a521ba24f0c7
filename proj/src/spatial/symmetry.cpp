#include "aspmtqs/spatial/symmetry.hpp"

#include "aspmtqs/spatial/shape.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include <algorithm>

#include <functional>
#include <map>
#include <set>

namespace aspmtqs::spatial {

namespace {

using Monomial = std::vector<std::pair<int, int>>;  // (variable, exponent), sorted
using Poly = std::map<Monomial, Rational>;

Monomial times(const Monomial& a, const Monomial& b) {
  std::map<int, int> e;
  for (auto [v, k] : a) e[v] += k;
  for (auto [v, k] : b) e[v] += k;
  return {e.begin(), e.end()};
}

void add_to(Poly& p, const Monomial& m, const Rational& c) {
  Rational& slot = p[m];
  slot += c;
  if (slot == 0) p.erase(m);
}

Poly plus(const Poly& a, const Poly& b, int sign = 1) {
  Poly r = a;
  for (const auto& [m, c] : b) add_to(r, m, sign * c);
  return r;
}

Poly times(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_to(r, times(ma, mb), ca * cb);
  return r;
}

Poly constant(const Rational& q) {
  Poly p;
  if (q != 0) p[{}] = q;
  return p;
}

Poly variable(int v) { return Poly{{Monomial{{v, 1}}, Rational(1)}}; }

enum class Role { X, Y, Line, Length, Other };

struct Variables {
  std::map<std::string, int> index;
  std::vector<Role> roles;
  std::vector<std::string> keys;
  // Rotating (x, y) pairs in order of first appearance.
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> radii;
  std::vector<int> line_points;
  bool axis_aligned = false;  // rectangles present
};

using Substitution = std::function<Poly(int)>;

Poly to_poly(const Term& t, const Variables& vars, const Substitution& sub) {
  if (auto* n = t.as<NumberTerm>()) return constant(n->value);
  if (t.as<ApplyTerm>()) return sub(vars.index.at(instance_key(t)));
  if (auto* e = t.as<ArithTerm>()) {
    std::vector<Poly> ops;
    for (const auto& op : e->operands) ops.push_back(to_poly(op, vars, sub));
    switch (e->op) {
      case ArithOp::Add: return plus(ops[0], ops[1]);
      case ArithOp::Sub: return plus(ops[0], ops[1], -1);
      case ArithOp::Mul: return times(ops[0], ops[1]);
      case ArithOp::Neg: return plus(Poly{}, ops[0], -1);
    }
  }
  throw Error("term '" + instance_key(t) + "' is not arithmetic");
}

// A comparison, or a pair of coordinate equalities dx = 0 & dy = 0 read as
// dx^2 + dy^2 = 0 so that point coincidence counts as rotation invariant.
struct Atom {
  const CompareFormula* first;
  const CompareFormula* second = nullptr;
};

using Fusable = std::function<bool(const CompareFormula*, const CompareFormula*)>;

void comparisons(const Formula& f, std::vector<Atom>& out, const Fusable& fusable) {
  if (auto* c = f.as<CompareFormula>()) {
    out.push_back({c});
  } else if (auto* a = f.as<AndFormula>()) {
    std::vector<const CompareFormula*> eqs;
    for (const auto& i : a->items)
      if (auto* c = i.as<CompareFormula>(); c && c->op == CompareOp::Eq) eqs.push_back(c);
    std::set<const CompareFormula*> used;
    for (auto* x : eqs)
      for (auto* y : eqs)
        if (x != y && !used.count(x) && !used.count(y) && fusable(x, y)) {
          out.push_back({x, y});
          used.insert(x);
          used.insert(y);
        }
    for (const auto& i : a->items)
      if (auto* c = i.as<CompareFormula>(); !c || !used.count(c)) comparisons(i, out, fusable);
  } else if (auto* o = f.as<OrFormula>()) {
    for (const auto& i : o->items) comparisons(i, out, fusable);
  } else if (auto* imp = f.as<ImpliesFormula>()) {
    comparisons(imp->antecedent, out, fusable);
    comparisons(imp->consequent, out, fusable);
  }
}

Role role_of(const Program& p, const GroundInstance& g, int* pair_slot) {
  *pair_slot = -1;
  if (g.args.empty()) return Role::Other;
  auto* obj = g.args.front().as<ObjectTerm>();
  auto shape = obj ? p.shape_of(obj->name) : std::nullopt;
  if (!shape) return Role::Other;
  auto names = parameter_names(*shape);
  int i = 0;
  while (i < static_cast<int>(names.size()) && names[i] != g.constant) ++i;
  if (i == static_cast<int>(names.size())) return Role::Other;
  const ConstantDecl* c = p.find_constant(g.constant);
  if (!c || c->is_predicate()) return Role::Other;
  switch (shape->kind) {
    case GeomKind::Interval: return Role::Line;
    case GeomKind::Rectangle: return i < 2 ? Role::X : Role::Y;
    case GeomKind::Circle:
      if (i == 2) return Role::Length;
      [[fallthrough]];
    default:
      *pair_slot = i / 2;
      return i % 2 == 0 ? Role::X : Role::Y;
  }
}

// Reduces s^2 to 1 - c^2 until no monomial holds s with exponent >= 2.
Poly reduce_circle(const Poly& p, int c, int s) {
  Poly out;
  std::vector<std::pair<Monomial, Rational>> work(p.begin(), p.end());
  while (!work.empty()) {
    auto [m, k] = work.back();
    work.pop_back();
    auto it = std::find_if(m.begin(), m.end(), [&](const auto& ve) { return ve.first == s; });
    if (it == m.end() || it->second < 2) {
      add_to(out, m, k);
      continue;
    }
    Monomial rest = m;
    auto rit = rest.begin() + (it - m.begin());
    if (rit->second == 2) {
      rest.erase(rit);
    } else {
      rit->second -= 2;
    }
    work.emplace_back(rest, k);
    work.emplace_back(times(rest, Monomial{{c, 2}}), -k);
  }
  return out;
}

}  // namespace

SymmetryBreaking break_symmetries(const Program& program, const CompletedTheory& theory,
                                  std::span<const Formula> extra) {
  SymmetryBreaking out;
  std::vector<Formula> formulas;
  for (const auto& c : theory.clauses) formulas.push_back(c.formula);
  formulas.insert(formulas.end(), extra.begin(), extra.end());

  Variables vars;
  std::map<std::pair<std::string, int>, std::pair<int, int>> pending_pairs;  // (object+extras, slot) -> (x, y)
  std::vector<std::pair<std::string, int>> pair_order;
  for (const auto& f : formulas) {
    std::vector<GroundInstance> found;
    collect_instances(f, found);
    for (const auto& g : found) {
      if (g.predicate || vars.index.count(g.key())) continue;
      int slot = -1;
      Role role = role_of(program, g, &slot);
      int v = static_cast<int>(vars.keys.size());
      vars.index.emplace(g.key(), v);
      vars.keys.push_back(g.key());
      vars.roles.push_back(role);
      if (role == Role::Length) vars.radii.push_back(v);
      if (role == Role::Line) vars.line_points.push_back(v);
      if ((role == Role::X || role == Role::Y) && slot < 0) vars.axis_aligned = true;
      if (slot >= 0) {
        std::string owner;
        for (std::size_t i = 0; i < g.args.size(); ++i) owner += to_string(g.args[i]) + ",";
        auto id = std::make_pair(owner, slot);
        auto [it, fresh] = pending_pairs.emplace(id, std::make_pair(-1, -1));
        if (fresh) pair_order.push_back(id);
        (role == Role::X ? it->second.first : it->second.second) = v;
      }
    }
  }
  for (const auto& id : pair_order) {
    auto [x, y] = pending_pairs[id];
    if (x >= 0 && y >= 0) vars.pairs.emplace_back(x, y);
  }

  auto diff = [&](const CompareFormula* c, const Substitution& sub) {
    return plus(to_poly(c->lhs, vars, sub), to_poly(c->rhs, vars, sub), -1);
  };
  auto atom_poly = [&](const Atom& a, const Substitution& sub) {
    Poly d = diff(a.first, sub);
    if (!a.second) return d;
    Poly e = diff(a.second, sub);
    return plus(times(d, d), times(e, e));
  };
  Substitution identity = [](int v) { return variable(v); };
  std::map<int, int> y_of;
  for (auto [x, y] : vars.pairs) y_of[x] = y;
  // dy must be dx with every x coordinate replaced by its partner y.
  Fusable fusable = [&](const CompareFormula* a, const CompareFormula* b) {
    Poly dx = diff(a, identity), dy = diff(b, identity), mapped;
    for (const auto& [m, c] : dx) {
      Monomial moved;
      for (auto [v, k] : m) {
        auto it = y_of.find(v);
        if (it == y_of.end()) return false;
        moved.emplace_back(it->second, k);
      }
      std::sort(moved.begin(), moved.end());
      add_to(mapped, moved, c);
    }
    return !dx.empty() && (mapped == dy || plus(Poly{}, mapped, -1) == dy);
  };
  std::vector<Atom> atoms;
  for (const auto& f : formulas) comparisons(f, atoms, fusable);
  std::vector<Poly> diffs;
  for (const auto& a : atoms) diffs.push_back(atom_poly(a, identity));

  const int n = static_cast<int>(vars.keys.size());
  const int t = n, cs = n + 1, sn = n + 2;
  auto invariant_under = [&](const Substitution& sub, bool rotation) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      Poly moved = atom_poly(atoms[i], sub);
      if (rotation) moved = reduce_circle(moved, cs, sn);
      if (moved != diffs[i]) return false;
    }
    return true;
  };
  auto shift = [&](Role axis) -> Substitution {
    return [&, axis](int v) { return vars.roles[v] == axis ? plus(variable(v), variable(t)) : variable(v); };
  };
  auto first_of = [&](Role axis) {
    for (int v = 0; v < n; ++v)
      if (vars.roles[v] == axis) return v;
    return -1;
  };
  // Terms for the chosen instances, rebuilt from the formulas' own application nodes.
  std::map<int, Term> terms;
  std::function<void(const Term&)> grab = [&](const Term& term) {
    if (term.as<ApplyTerm>()) {
      if (auto it = vars.index.find(instance_key(term)); it != vars.index.end()) terms.emplace(it->second, term);
    } else if (auto* e = term.as<ArithTerm>()) {
      for (const auto& op : e->operands) grab(op);
    }
  };
  for (const auto& a : atoms)
    for (const auto* c : {a.first, a.second})
      if (c) {
        grab(c->lhs);
        grab(c->rhs);
      }
  auto term = [&](int v) { return terms.at(v); };
  auto fix = [&](int v, const Rational& q) {
    out.constraints.push_back(Formula::equal(term(v), Term::number(q)));
  };

  int origin_x = vars.pairs.empty() ? first_of(Role::X) : vars.pairs.front().first;
  int origin_y = vars.pairs.empty() ? first_of(Role::Y) : vars.pairs.front().second;
  if (origin_x >= 0 && terms.count(origin_x) && invariant_under(shift(Role::X), false)) {
    out.translation_x = true;
    fix(origin_x, 0);
  }
  if (origin_y >= 0 && terms.count(origin_y) && invariant_under(shift(Role::Y), false)) {
    out.translation_y = true;
    fix(origin_y, 0);
  }
  int line_origin = first_of(Role::Line);
  if (line_origin >= 0 && terms.count(line_origin) && invariant_under(shift(Role::Line), false)) {
    out.translation_line = true;
    fix(line_origin, 0);
  }

  if (vars.pairs.size() >= 2 && !vars.axis_aligned) {
    std::map<int, std::pair<int, bool>> partner;  // var -> (other coordinate, is x)
    for (auto [x, y] : vars.pairs) {
      partner[x] = {y, true};
      partner[y] = {x, false};
    }
    Substitution rotate = [&](int v) {
      auto it = partner.find(v);
      if (it == partner.end()) return variable(v);
      auto [other, is_x] = it->second;
      // x' = c x - s y, y' = s x + c y
      if (is_x) return plus(times(variable(cs), variable(v)), times(variable(sn), variable(other)), -1);
      return plus(times(variable(sn), variable(other)), times(variable(cs), variable(v)));
    };
    if (invariant_under(rotate, true)) {
      auto [x0, y0] = vars.pairs[0];
      auto [x1, y1] = vars.pairs[1];
      out.rotation = true;
      out.constraints.push_back(Formula::equal(term(y1), term(y0)));
      out.constraints.push_back(Formula::compare(CompareOp::Ge, term(x1), term(x0)));
    }
  }

  // Scaling about the origin: every comparison homogeneous in the length-like instances.
  bool homogeneous = !vars.radii.empty();
  for (std::size_t i = 0; i < diffs.size() && homogeneous; ++i) {
    std::optional<int> degree;
    for (const auto& [m, c] : diffs[i]) {
      int d = 0;
      for (auto [v, k] : m)
        if (vars.roles[v] != Role::Other) d += k;
      if (!degree) degree = d;
      if (*degree != d) homogeneous = false;
    }
  }
  // The fixed radius must be positive in every model: its invariant is a clause.
  if (homogeneous) {
    for (int r : vars.radii) {
      bool positive = std::any_of(theory.clauses.begin(), theory.clauses.end(), [&](const Clause& c) {
        auto* cmp = c.formula.as<CompareFormula>();
        auto* zero = cmp ? cmp->rhs.as<NumberTerm>() : nullptr;
        return cmp && cmp->op == CompareOp::Gt && zero && zero->value == 0 && terms.count(r) &&
               cmp->lhs == terms.at(r);
      });
      if (!positive) continue;
      out.scaling = true;
      fix(r, 1);
      break;
    }
  }
  return out;
}

}  // namespace aspmtqs::spatial
