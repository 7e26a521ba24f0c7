#include "aspmtqs/error.hpp"
#include "aspmtqs/smt/smt.hpp"

#include <algorithm>

namespace aspmtqs::smt {

namespace {

using Poly = std::vector<Rational>;  // ascending degree

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Poly poly_scale(const Poly& a, const Rational& k) {
  Poly r = a;
  for (auto& c : r) c *= k;
  trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Remainder of a divided by b (b nonzero).
Poly poly_rem(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational k = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= k * b[i];
    trim(a);
  }
  return a;
}

Poly poly_div(Poly a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  Poly q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    Rational k = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = k;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= k * b[i];
    trim(a);
  }
  trim(q);
  return q;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

int sign(const Rational& q) { return sgn(q); }

int sign_changes(const std::vector<Poly>& sturm, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : sturm) {
    int s = sign(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Roots in (lo, hi].
int count_roots(const std::vector<Poly>& sturm, const Rational& lo, const Rational& hi) {
  return sign_changes(sturm, lo) - sign_changes(sturm, hi);
}

void isolate(const std::vector<Poly>& sturm, Rational lo, Rational hi, const Rational& width,
             std::vector<Rational>& out) {
  int n = count_roots(sturm, lo, hi);
  if (n == 0) return;
  const Poly& p = sturm.front();
  if (n == 1) {
    if (eval(p, hi) == 0) {
      out.push_back(hi);
      return;
    }
    // Single simple root in (lo, hi): bisect on the sign of p.
    int s_lo = sign(eval(p, lo));
    while (hi - lo > width) {
      Rational mid = (lo + hi) / 2;
      int s = sign(eval(p, mid));
      if (s == 0) {
        out.push_back(mid);
        return;
      }
      if (s == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.push_back((lo + hi) / 2);
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate(sturm, lo, mid, width, out);
  isolate(sturm, mid, hi, width, out);
}

struct Value {
  bool is_bool = false;
  bool truth = false;
  Rational number;
  bool approximate = false;
};

Poly to_poly(const SExpr& e) {
  if (!e.is_list) {
    if (auto q = parse_rational(e.atom)) return q == 0 ? Poly{} : Poly{*q};
    return {Rational(0), Rational(1)};  // the root-obj variable
  }
  if (e.items.empty() || e.items[0].is_list) throw SolverError("bad polynomial '" + e.to_string() + "'");
  const std::string& op = e.items[0].atom;
  std::vector<Poly> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(to_poly(e.items[i]));
  if (op == "+") {
    Poly r;
    for (const auto& a : args) r = poly_add(r, a);
    return r;
  }
  if (op == "-" && args.size() == 1) return poly_scale(args[0], -1);
  if (op == "-") {
    Poly r = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) r = poly_add(r, poly_scale(args[i], -1));
    return r;
  }
  if (op == "*") {
    Poly r = {Rational(1)};
    for (const auto& a : args) r = poly_mul(r, a);
    return r;
  }
  if (op == "^" && args.size() == 2 && args[1].size() <= 1) {
    Rational k = args[1].empty() ? Rational(0) : args[1][0];
    if (!is_integer(k) || k < 0) throw SolverError("bad exponent in '" + e.to_string() + "'");
    Poly r = {Rational(1)};
    for (long i = 0; i < k.get_num().get_si(); ++i) r = poly_mul(r, args[0]);
    return r;
  }
  if (op == "/" && args.size() == 2 && args[1].size() == 1) return poly_scale(args[0], 1 / args[1][0]);
  throw SolverError("bad polynomial '" + e.to_string() + "'");
}

Value value_of(const SExpr& e, int precision) {
  Value v;
  if (!e.is_list) {
    if (e.atom == "true" || e.atom == "false") {
      v.is_bool = true;
      v.truth = e.atom == "true";
      return v;
    }
    auto q = parse_rational(e.atom);
    if (!q) throw SolverError("unparseable model value '" + e.atom + "'");
    v.number = *q;
    return v;
  }
  if (e.items.empty() || e.items[0].is_list) throw SolverError("unparseable model value '" + e.to_string() + "'");
  const std::string& op = e.items[0].atom;
  if (op == "root-obj") {
    if (e.items.size() != 3) throw SolverError("unparseable model value '" + e.to_string() + "'");
    Poly p = to_poly(e.items[1]);
    auto k = parse_rational(e.items[2].atom);
    std::vector<Rational> roots = real_roots(p, precision + 2);
    if (!k || !is_integer(*k) || *k < 1 || *k > static_cast<long>(roots.size()))
      throw SolverError("root index out of range in '" + e.to_string() + "'");
    v.number = roots[k->get_num().get_si() - 1];
    v.approximate = eval(p, v.number) != 0;
    return v;
  }
  std::vector<Value> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(value_of(e.items[i], precision));
  bool approx = std::any_of(args.begin(), args.end(), [](const Value& a) { return a.approximate; });
  if (args.empty()) throw SolverError("unparseable model value '" + e.to_string() + "'");
  if (op == "-" && args.size() == 1) {
    v.number = -args[0].number;
  } else if (op == "-") {
    v.number = args[0].number;
    for (std::size_t i = 1; i < args.size(); ++i) v.number -= args[i].number;
  } else if (op == "+") {
    for (const auto& a : args) v.number += a.number;
  } else if (op == "*") {
    v.number = 1;
    for (const auto& a : args) v.number *= a.number;
  } else if (op == "/" && args.size() == 2 && args[1].number != 0) {
    v.number = args[0].number / args[1].number;
  } else if (op == "to_real" && args.size() == 1) {
    v.number = args[0].number;
  } else {
    throw SolverError("unparseable model value '" + e.to_string() + "'");
  }
  v.approximate = approx;
  return v;
}

void bind(Model& m, const std::string& symbol, const SExpr& value, const SmtScript* names, int precision) {
  std::string key = symbol;
  if (names)
    if (auto it = names->sources.find(symbol); it != names->sources.end()) key = it->second;
  Value v = value_of(value, precision);
  if (v.is_bool) {
    m.booleans[key] = v.truth;
  } else {
    m.reals[key] = RealValue{v.number, v.approximate, to_decimal(v.number, precision)};
  }
}

void read_entries(Model& m, const SExpr& list, const SmtScript* names, int precision) {
  for (const auto& item : list.items) {
    if (!item.is_list || item.items.empty()) {
      if (!item.is_list && item.atom == "model") continue;
      throw SolverError("unexpected model entry '" + item.to_string() + "'");
    }
    const SExpr& head = item.items[0];
    if (!head.is_list && head.atom == "define-fun") {
      if (item.items.size() != 5 || !item.items[2].is_list || !item.items[2].items.empty())
        throw SolverError("unexpected model entry '" + item.to_string() + "'");
      bind(m, item.items[1].atom, item.items[4], names, precision);
    } else if (!head.is_list && item.items.size() == 2) {
      bind(m, head.atom, item.items[1], names, precision);
    } else if (head.is_list) {
      read_entries(m, item, names, precision);
    } else {
      throw SolverError("unexpected model entry '" + item.to_string() + "'");
    }
  }
}

}  // namespace

std::vector<Rational> real_roots(std::vector<Rational> p, int digits) {
  trim(p);
  if (p.size() < 2) return {};
  Poly sq = poly_div(p, poly_gcd(p, derivative(p)));
  std::vector<Poly> sturm = {sq, derivative(sq)};
  while (true) {
    Poly r = poly_scale(poly_rem(sturm[sturm.size() - 2], sturm.back()), -1);
    if (r.empty()) break;
    sturm.push_back(std::move(r));
  }
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < sq.size(); ++i) {
    Rational ratio = abs(sq[i] / sq.back());
    if (ratio > bound) bound = ratio;
  }
  bound += 1;
  Rational width = 1;
  for (int i = 0; i < digits; ++i) width /= 10;
  std::vector<Rational> out;
  isolate(sturm, -bound - 1, bound + 1, width, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool Model::has_approximations() const {
  return std::any_of(reals.begin(), reals.end(), [](const auto& kv) { return kv.second.approximate; });
}

Interpretation Model::interpretation() const {
  Interpretation I;
  I.atoms = booleans;
  for (const auto& [k, v] : reals) I.functions[k] = v.value;
  return I;
}

Model parse_model(std::string_view text, const SmtScript* names, int precision) {
  Model m;
  for (const auto& e : parse_sexprs(text)) {
    if (!e.is_list) throw SolverError("unexpected model text '" + e.atom + "'");
    read_entries(m, e, names, precision);
  }
  return m;
}

}  // namespace aspmtqs::smt
