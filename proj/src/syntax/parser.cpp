#include "aspmtqs/syntax/parser.hpp"

#include "aspmtqs/spatial/catalog.hpp"
#include "lexer.hpp"

#include <algorithm>
#include <set>

namespace aspmtqs {

namespace {

using detail::Token;
using Kind = ParseError::Kind;

// Untyped expression tree; names are resolved in a second pass so that
// malformed input is reported as a syntax error before any name lookup.
struct Raw {
  enum class Type { Number, Variable, Ident, Unary, Binary };

  Type type = Type::Number;
  std::string text;
  std::vector<Raw> kids;
  bool call = false;
  SourceLocation where;
};

struct TermType {
  bool numeric = false;
  bool integral = false;
  std::string sort;  // object sort, or integer-range sort of a variable
};

struct Typed {
  Term term;
  TermType type;
};

const std::set<std::string, std::less<>> kCompareOps = {"<", "<=", "=", "!=", ">=", ">"};

class Parser {
 public:
  Parser(std::string_view text, Program& program)
      : tokens_(detail::tokenize(text)), program_(program) {}

  void parse_statements() {
    while (!at_end()) statement();
    finalize();
  }

  Formula parse_query() {
    Raw raw = implication();
    if (!at_end()) fail_syntax(cur(), "expected end of formula");
    Formula f = formula(raw);
    finalize();
    return f;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Program& program_;
  std::vector<std::pair<std::string, SourceLocation>> inertial_where_;
  std::vector<std::pair<std::string, SourceLocation>> sort_where_;

  const Token& cur() const { return tokens_[pos_]; }
  const Token& next_token() const {
    return tokens_[std::min(pos_ + 1, tokens_.size() - 1)];
  }
  bool at_end() const { return cur().kind == Token::Kind::End; }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(std::string_view punct) {
    if (!cur().is(punct)) return false;
    take();
    return true;
  }

  [[noreturn]] static void fail_syntax(const Token& at, const std::string& msg) {
    std::string found = at.kind == Token::Kind::End ? "end of input" : "'" + at.text + "'";
    throw ParseError(Kind::Syntax, at.where, msg + ", found " + found);
  }
  [[noreturn]] static void fail(Kind kind, SourceLocation where, const std::string& msg) {
    throw ParseError(kind, where, msg);
  }

  void expect(std::string_view punct) {
    if (!accept(punct)) fail_syntax(cur(), "expected '" + std::string(punct) + "'");
  }
  // Takes the '(' at the cursor; returns its location for expect_close.
  SourceLocation open_paren() {
    SourceLocation at = cur().where;
    take();
    return at;
  }
  void expect_close(SourceLocation open) {
    if (accept(")")) return;
    const Token& t = cur();
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    fail(Kind::Syntax, open, "unclosed '(': expected ')', found " + found + " at " +
                                 std::to_string(t.where.line) + ":" + std::to_string(t.where.column));
  }

  std::string expect_identifier(const char* what) {
    if (cur().kind != Token::Kind::Identifier) fail_syntax(cur(), std::string("expected ") + what);
    return take().text;
  }

  // ---- statements -------------------------------------------------------

  void statement() {
    if (cur().is(":-") && next_token().kind == Token::Kind::Identifier) {
      const std::string& word = next_token().text;
      if (word == "sorts" || word == "objects" || word == "constants" || word == "variables" ||
          word == "include" || word == "inertial") {
        take();
        take();
        if (word == "sorts") sorts_block();
        if (word == "objects") objects_block();
        if (word == "constants") constants_block();
        if (word == "variables") variables_block();
        if (word == "include") include_block();
        if (word == "inertial") inertial_block();
        return;
      }
    }
    rule();
  }

  template <class F>
  void entries(F&& entry) {
    do {
      entry();
    } while (accept(";"));
    expect(".");
  }

  void check_fresh_sort(const std::string& name, SourceLocation where) {
    if (name == kRealSort || name == kGeometricSort || program_.find_sort(name))
      fail(Kind::Declaration, where, "sort '" + name + "' declared twice");
  }

  void sorts_block() {
    entries([&] {
      SourceLocation where = cur().where;
      SortDecl decl;
      decl.name = expect_identifier("sort name");
      check_fresh_sort(decl.name, where);
      if (accept("::")) {
        decl.explicit_kind = true;
        if (cur().kind == Token::Kind::Number || cur().is("-")) {
          decl.kind = SortKind::IntegerRange;
          decl.lo = integer_literal();
          expect("..");
          decl.hi = integer_literal();
          if (decl.lo > decl.hi) fail(Kind::Declaration, where, "empty range for sort '" + decl.name + "'");
        } else {
          SourceLocation at = cur().where;
          std::string kind = shape_text();
          auto shape = spatial::parse_shape(kind, program_.max_vertices);
          if (!shape) fail(Kind::Declaration, at, "unknown sort kind '" + kind + "'");
          decl.kind = SortKind::Geometric;
          decl.shape = *shape;
        }
      } else if (auto shape = spatial::parse_shape(decl.name, program_.max_vertices)) {
        decl.kind = SortKind::Geometric;
        decl.shape = *shape;
      } else {
        decl.kind = SortKind::Enumerated;
      }
      sort_where_.emplace_back(decl.name, where);
      program_.sorts.push_back(std::move(decl));
    });
  }

  std::string shape_text() {
    std::string kind = expect_identifier("sort kind");
    if (kind == "polygon" && accept("(")) {
      if (cur().kind != Token::Kind::Number) fail_syntax(cur(), "expected vertex count");
      kind += "(" + take().text + ")";
      expect(")");
    }
    return kind;
  }

  long integer_literal() {
    bool negative = accept("-");
    const Token& t = cur();
    if (t.kind != Token::Kind::Number) fail_syntax(t, "expected integer");
    auto q = parse_rational(t.text);
    if (!q || !is_integer(*q) || !q->get_num().fits_slong_p())
      fail(Kind::Syntax, t.where, "expected integer, found '" + t.text + "'");
    take();
    long v = q->get_num().get_si();
    return negative ? -v : v;
  }

  const SortDecl& sort_ref(SourceLocation where, const std::string& name) {
    const SortDecl* s = program_.find_sort(name);
    if (!s) fail(Kind::Undeclared, where, "undeclared sort '" + name + "'");
    return *s;
  }

  void objects_block() {
    entries([&] {
      std::vector<std::pair<std::string, SourceLocation>> names;
      do {
        SourceLocation where = cur().where;
        names.emplace_back(expect_identifier("object name"), where);
      } while (accept(","));
      expect("::");
      SourceLocation where = cur().where;
      std::string sort = expect_identifier("sort name");
      const SortDecl& decl = sort_ref(where, sort);
      if (decl.kind != SortKind::Enumerated && decl.kind != SortKind::Geometric)
        fail(Kind::Sort, where, "objects cannot belong to sort '" + sort + "'");
      for (auto& [name, at] : names) {
        if (program_.find_object(name) || program_.find_constant(name))
          fail(Kind::Declaration, at, "name '" + name + "' declared twice");
        program_.objects.push_back({name, sort});
      }
    });
  }

  void constants_block() {
    entries([&] {
      bool intensional = false;
      if (cur().is_word("intensional") && next_token().kind == Token::Kind::Identifier) {
        take();
        intensional = true;
      }
      std::vector<std::pair<ConstantDecl, SourceLocation>> decls;
      do {
        SourceLocation where = cur().where;
        ConstantDecl decl;
        decl.name = expect_identifier("constant name");
        decl.intensional = intensional;
        if (cur().is("(")) {
          SourceLocation open = open_paren();
          do {
            SourceLocation at = cur().where;
            std::string sort = expect_identifier("sort name");
            sort_ref(at, sort);
            decl.arg_sorts.push_back(sort);
          } while (accept(","));
          expect_close(open);
        }
        decls.emplace_back(std::move(decl), where);
      } while (accept(","));
      expect("::");
      SourceLocation where = cur().where;
      std::string result = expect_identifier("result sort");
      if (result != kBooleanResult && result != kRealSort)
        fail(Kind::Sort, where, "constants must be boolean or real, not '" + result + "'");
      for (auto& [decl, at] : decls) {
        if (program_.find_constant(decl.name) || program_.find_object(decl.name))
          fail(Kind::Declaration, at, "name '" + decl.name + "' declared twice");
        decl.result_sort = result;
        program_.constants.push_back(std::move(decl));
      }
    });
  }

  void variables_block() {
    entries([&] {
      std::vector<std::pair<std::string, SourceLocation>> names;
      do {
        SourceLocation where = cur().where;
        if (cur().kind != Token::Kind::Variable) fail_syntax(cur(), "expected variable name");
        names.emplace_back(take().text, where);
      } while (accept(","));
      expect("::");
      SourceLocation where = cur().where;
      std::string sort = expect_identifier("sort name");
      sort_ref(where, sort);
      for (auto& [name, at] : names) {
        if (program_.find_variable(name))
          fail(Kind::Declaration, at, "variable '" + name + "' declared twice");
        program_.variables.push_back({name, sort});
      }
    });
  }

  void include_block() {
    do {
      SourceLocation where = cur().where;
      std::string name = expect_identifier("theory name");
      if (!spatial::is_theory(name))
        fail(Kind::Undeclared, where, "unknown theory '" + name + "'");
      if (std::find(program_.includes.begin(), program_.includes.end(), name) ==
          program_.includes.end())
        program_.includes.push_back(name);
    } while (accept(","));
    expect(".");
  }

  void inertial_block() {
    do {
      SourceLocation where = cur().where;
      std::string name = expect_identifier("constant name");
      if (std::find(program_.inertial.begin(), program_.inertial.end(), name) !=
          program_.inertial.end())
        fail(Kind::Declaration, where, "constant '" + name + "' declared inertial twice");
      program_.inertial.push_back(name);
      inertial_where_.emplace_back(name, where);
    } while (accept(","));
    expect(".");
  }

  void rule() {
    Rule r;
    r.where = cur().where;
    bool headless = false;
    if (accept("<-") || accept(":-")) {
      headless = true;
    } else if (cur().is_word("false") && (next_token().is(".") || next_token().is("<-") ||
                                         next_token().is(":-"))) {
      take();
      headless = true;
      if (accept(".")) return program_.rules.push_back(std::move(r));
      take();
    }
    if (headless) {
      Raw body = implication();
      expect(".");
      r.body = formula(body);
      program_.rules.push_back(std::move(r));
      return;
    }
    bool choice = accept("{");
    Raw head = comparison_level();
    if (choice) expect("}");
    std::optional<Raw> body;
    if (accept("<-") || accept(":-")) body = implication();
    expect(".");
    r.head = resolve_head(head, choice);
    if (body) r.body = formula(*body);
    program_.rules.push_back(std::move(r));
  }

  // ---- expressions --------------------------------------------------------

  static Raw binary(std::string op, Raw lhs, Raw rhs, SourceLocation where) {
    Raw r;
    r.type = Raw::Type::Binary;
    r.text = std::move(op);
    r.where = where;
    r.kids.push_back(std::move(lhs));
    r.kids.push_back(std::move(rhs));
    return r;
  }

  Raw implication() {
    Raw lhs = disjunction();
    if (cur().is("->")) {
      SourceLocation where = take().where;
      Raw rhs = implication();
      return binary("->", std::move(lhs), std::move(rhs), where);
    }
    return lhs;
  }

  Raw nary(const char* op, Raw (Parser::*sub)()) {
    Raw first = (this->*sub)();
    if (!cur().is(op)) return first;
    Raw r;
    r.type = Raw::Type::Binary;
    r.text = op;
    r.where = cur().where;
    r.kids.push_back(std::move(first));
    while (accept(op)) r.kids.push_back((this->*sub)());
    return r;
  }

  Raw disjunction() { return nary("|", &Parser::conjunction); }
  Raw conjunction() { return nary("&", &Parser::negation); }

  Raw negation() {
    if (cur().is_word("not")) {
      Raw r;
      r.type = Raw::Type::Unary;
      r.text = "not";
      r.where = take().where;
      r.kids.push_back(negation());
      return r;
    }
    return comparison_level();
  }

  Raw comparison_level() {
    Raw lhs = additive();
    if (cur().kind == Token::Kind::Punct && kCompareOps.count(cur().text)) {
      const Token& op = take();
      Raw rhs = additive();
      return binary(op.text, std::move(lhs), std::move(rhs), op.where);
    }
    return lhs;
  }

  Raw additive() {
    Raw lhs = multiplicative();
    while (cur().is("+") || cur().is("-")) {
      const Token& op = take();
      Raw rhs = multiplicative();
      lhs = binary(op.text, std::move(lhs), std::move(rhs), op.where);
    }
    return lhs;
  }

  Raw multiplicative() {
    Raw lhs = unary_minus();
    while (cur().is("*")) {
      const Token& op = take();
      Raw rhs = unary_minus();
      lhs = binary("*", std::move(lhs), std::move(rhs), op.where);
    }
    return lhs;
  }

  Raw unary_minus() {
    if (cur().is("-")) {
      SourceLocation where = take().where;
      Raw operand = unary_minus();
      if (operand.type == Raw::Type::Number && operand.text.front() != '-') {
        operand.text.insert(0, "-");
        operand.where = where;
        return operand;
      }
      Raw r;
      r.type = Raw::Type::Unary;
      r.text = "-";
      r.where = where;
      r.kids.push_back(std::move(operand));
      return r;
    }
    return primary();
  }

  Raw primary() {
    const Token& t = cur();
    Raw r;
    r.where = t.where;
    switch (t.kind) {
      case Token::Kind::Number:
        r.type = Raw::Type::Number;
        r.text = take().text;
        return r;
      case Token::Kind::Variable:
        r.type = Raw::Type::Variable;
        r.text = take().text;
        return r;
      case Token::Kind::Identifier:
        r.type = Raw::Type::Ident;
        r.text = take().text;
        if (cur().is("(")) {
          SourceLocation open = open_paren();
          r.call = true;
          do {
            r.kids.push_back(additive());
          } while (accept(","));
          expect_close(open);
        }
        return r;
      case Token::Kind::Punct:
        if (t.is("(")) {
          SourceLocation open = open_paren();
          Raw inner = implication();
          expect_close(open);
          return inner;
        }
        break;
      case Token::Kind::End:
        break;
    }
    fail_syntax(t, "expected expression");
  }

  // ---- resolution -----------------------------------------------------------

  const ConstantDecl* constant_or_auto(const Raw& raw, bool predicate_context) {
    if (const ConstantDecl* c = program_.find_constant(raw.text)) return c;
    if (predicate_context && raw.call) {
      auto rels = spatial::relations_named(raw.text, program_.theories_in_scope());
      if (!rels.empty()) {
        bool arity_ok = std::any_of(rels.begin(), rels.end(), [&](const spatial::RelationDef* d) {
          return d->arity() == raw.kids.size();
        });
        if (!arity_ok)
          fail(Kind::Arity, raw.where,
               "relation '" + raw.text + "' does not take " + std::to_string(raw.kids.size()) +
                   " arguments; declare it explicitly to add extra arguments");
        ConstantDecl decl;
        decl.name = raw.text;
        decl.arg_sorts.assign(raw.kids.size(), kGeometricSort);
        decl.result_sort = kBooleanResult;
        decl.intensional = true;
        program_.constants.push_back(std::move(decl));
        return &program_.constants.back();
      }
    }
    if (!predicate_context && raw.call && spatial::is_parameter_name(raw.text) &&
        !program_.find_object(raw.text)) {
      declare_parametrics();
      if (const ConstantDecl* c = program_.find_constant(raw.text)) return c;
    }
    if (!predicate_context && raw.call && raw.kids.size() == 1 &&
        spatial::is_parameter_name(raw.text) && !program_.find_object(raw.text)) {
      program_.constants.push_back({raw.text, {kGeometricSort}, kRealSort, false});
      return &program_.constants.back();
    }
    return nullptr;
  }

  Formula formula(const Raw& raw) {
    switch (raw.type) {
      case Raw::Type::Binary: {
        if (raw.text == "&" || raw.text == "|") {
          std::vector<Formula> items;
          for (const Raw& k : raw.kids) items.push_back(formula(k));
          return raw.text == "&" ? Formula::conj(std::move(items))
                                 : Formula::disj(std::move(items));
        }
        if (raw.text == "->") return Formula::implies(formula(raw.kids[0]), formula(raw.kids[1]));
        if (kCompareOps.count(raw.text)) return comparison(raw);
        fail(Kind::Sort, raw.where, "arithmetic expression used as a formula");
      }
      case Raw::Type::Unary:
        if (raw.text == "not") return Formula::negate(formula(raw.kids[0]));
        fail(Kind::Sort, raw.where, "arithmetic expression used as a formula");
      case Raw::Type::Ident: {
        if (!raw.call && raw.text == "true") return Formula::truth();
        if (!raw.call && raw.text == "false") return Formula::falsity();
        const ConstantDecl* c = constant_or_auto(raw, true);
        if (!c) {
          if (program_.find_object(raw.text))
            fail(Kind::Sort, raw.where, "object '" + raw.text + "' used as a formula");
          fail(Kind::Undeclared, raw.where, "undeclared predicate '" + raw.text + "'");
        }
        if (!c->is_predicate())
          fail(Kind::Sort, raw.where, "function '" + raw.text + "' used as a formula");
        return Formula::atom(c->name, arguments(raw, *c));
      }
      case Raw::Type::Number:
      case Raw::Type::Variable:
        break;
    }
    fail(Kind::Sort, raw.where, "term used as a formula");
  }

  Formula comparison(const Raw& raw) {
    Typed lhs = term(raw.kids[0]);
    Typed rhs = term(raw.kids[1]);
    const std::string& op = raw.text;
    if (lhs.type.numeric != rhs.type.numeric)
      fail(Kind::Sort, raw.where, "comparison between a number and an object");
    if (!lhs.type.numeric) {
      if (op != "=" && op != "!=")
        fail(Kind::Sort, raw.where, "objects can only be compared with = and !=");
      if (lhs.type.sort != rhs.type.sort && !geometric_pair(lhs.type.sort, rhs.type.sort))
        fail(Kind::Sort, raw.where,
             "comparison between sorts '" + lhs.type.sort + "' and '" + rhs.type.sort + "'");
    }
    if (op == "!=") return Formula::negate(Formula::equal(lhs.term, rhs.term));
    CompareOp cmp = op == "<"    ? CompareOp::Lt
                    : op == "<=" ? CompareOp::Le
                    : op == "="  ? CompareOp::Eq
                    : op == ">=" ? CompareOp::Ge
                                 : CompareOp::Gt;
    return Formula::compare(cmp, lhs.term, rhs.term);
  }

  bool is_geometric_sort(const std::string& sort) const {
    const SortDecl* s = program_.find_sort(sort);
    return s && (s->kind == SortKind::Geometric || s->kind == SortKind::AnyGeometric);
  }

  bool geometric_pair(const std::string& a, const std::string& b) const {
    return is_geometric_sort(a) && is_geometric_sort(b);
  }

  std::vector<Term> arguments(const Raw& raw, const ConstantDecl& c) {
    if (raw.kids.size() != c.arg_sorts.size())
      fail(Kind::Arity, raw.where,
           "'" + c.name + "' expects " + std::to_string(c.arg_sorts.size()) +
               " arguments, got " + std::to_string(raw.kids.size()));
    std::vector<Term> args;
    for (std::size_t i = 0; i < raw.kids.size(); ++i) {
      Typed t = term(raw.kids[i]);
      check_sort(raw.kids[i], t, c.arg_sorts[i], c.name);
      args.push_back(std::move(t.term));
    }
    return args;
  }

  void check_sort(const Raw& at, const Typed& t, const std::string& expected,
                  const std::string& owner) {
    const SortDecl& s = *program_.find_sort(expected);
    auto mismatch = [&]() {
      fail(Kind::Sort, at.where,
           "argument of '" + owner + "' must have sort '" + expected + "'");
    };
    switch (s.kind) {
      case SortKind::IntegerRange:
        if (!t.type.numeric || !t.type.integral) mismatch();
        if (auto* n = t.term.as<NumberTerm>()) {
          if (n->value < s.lo || n->value > s.hi)
            fail(Kind::Sort, at.where,
                 to_string(n->value) + " is outside sort '" + expected + "'");
        }
        return;
      case SortKind::Real:
        if (!t.type.numeric) mismatch();
        return;
      case SortKind::AnyGeometric:
        if (t.type.numeric || !is_geometric_sort(t.type.sort)) mismatch();
        return;
      case SortKind::Enumerated:
      case SortKind::Geometric:
        if (t.type.numeric || t.type.sort != expected) mismatch();
        return;
    }
  }

  Typed term(const Raw& raw) {
    switch (raw.type) {
      case Raw::Type::Number: {
        auto q = parse_rational(raw.text);
        if (!q) fail(Kind::Lexical, raw.where, "malformed number '" + raw.text + "'");
        return {Term::number(*q), {true, is_integer(*q), ""}};
      }
      case Raw::Type::Variable: {
        const VariableDecl* v = program_.find_variable(raw.text);
        if (!v) fail(Kind::Undeclared, raw.where, "undeclared variable '" + raw.text + "'");
        const SortDecl& s = *program_.find_sort(v->sort);
        TermType type;
        if (s.kind == SortKind::Real) {
          type = {true, false, ""};
        } else if (s.kind == SortKind::IntegerRange) {
          type = {true, true, v->sort};
        } else {
          type = {false, false, v->sort};
        }
        return {Term::variable(v->name, v->sort), type};
      }
      case Raw::Type::Ident: {
        if (!raw.call) {
          if (const ObjectDecl* o = program_.find_object(raw.text))
            return {Term::object(o->name), {false, false, o->sort}};
        }
        const ConstantDecl* c = constant_or_auto(raw, false);
        if (!c) fail(Kind::Undeclared, raw.where, "undeclared name '" + raw.text + "'");
        if (c->is_predicate())
          fail(Kind::Sort, raw.where, "predicate '" + raw.text + "' used as a term");
        return {Term::apply(c->name, arguments(raw, *c)), {true, false, ""}};
      }
      case Raw::Type::Unary: {
        if (raw.text != "-") fail(Kind::Sort, raw.where, "formula used as a term");
        Typed operand = numeric(raw.kids[0]);
        return {Term::neg(operand.term), {true, operand.type.integral, ""}};
      }
      case Raw::Type::Binary: {
        if (raw.text != "+" && raw.text != "-" && raw.text != "*")
          fail(Kind::Sort, raw.where, "formula used as a term");
        Typed lhs = numeric(raw.kids[0]);
        Typed rhs = numeric(raw.kids[1]);
        bool integral = lhs.type.integral && rhs.type.integral;
        Term t = raw.text == "+"   ? Term::add(lhs.term, rhs.term)
                 : raw.text == "-" ? Term::sub(lhs.term, rhs.term)
                                   : Term::mul(lhs.term, rhs.term);
        return {t, {true, integral, ""}};
      }
    }
    fail(Kind::Syntax, raw.where, "unexpected expression");
  }

  Typed numeric(const Raw& raw) {
    Typed t = term(raw);
    if (!t.type.numeric) fail(Kind::Sort, raw.where, "arithmetic on a non-numeric term");
    return t;
  }

  Head resolve_head(const Raw& raw, bool choice) {
    Head h;
    h.choice = choice;
    if (raw.type == Raw::Type::Ident && !raw.call && raw.text == "false") {
      if (choice) fail(Kind::Syntax, raw.where, "choice braces cannot wrap 'false'");
      return h;
    }
    if (raw.type == Raw::Type::Binary && raw.text == "=") {
      const Raw& lhs = raw.kids[0];
      if (lhs.type != Raw::Type::Ident)
        fail(Kind::Syntax, raw.where, "head equality must have a function application on the left");
      Typed f = term(lhs);
      if (!f.term.as<ApplyTerm>())
        fail(Kind::Sort, raw.where, "head equality must have a function application on the left");
      Typed value = term(raw.kids[1]);
      if (!value.type.numeric) fail(Kind::Sort, raw.kids[1].where, "function value must be numeric");
      h.kind = Head::Kind::FunctionEq;
      h.formula = Formula::equal(f.term, value.term);
      return h;
    }
    if (raw.type == Raw::Type::Ident) {
      Formula f = formula(raw);
      if (!f.as<AtomFormula>()) fail(Kind::Syntax, raw.where, "rule head must be an atom");
      h.kind = Head::Kind::Atom;
      h.formula = f;
      return h;
    }
    fail(Kind::Syntax, raw.where,
         "rule head must be an atom, a function equality f(...) = t, or false");
  }

  // ---- end-of-input checks ----------------------------------------------------

  void finalize() {
    for (const auto& [name, where] : sort_where_) {
      const SortDecl* sort = program_.find_sort(name);
      if (sort->kind == SortKind::Enumerated && program_.domain(name).empty())
        fail(Kind::Declaration, where, "enumerated sort '" + name + "' has no objects");
    }
    for (const auto& [name, where] : inertial_where_) {
      const ConstantDecl* c = program_.find_constant(name);
      if (!c) fail(Kind::Undeclared, where, "undeclared inertial constant '" + name + "'");
      const SortDecl* step = c->arg_sorts.empty() ? nullptr : program_.find_sort(c->arg_sorts.back());
      if (!step || step->kind != SortKind::IntegerRange)
        fail(Kind::Declaration, where,
             "inertial constant '" + name + "' needs an integer-range step as its last argument");
    }
    declare_parametrics();
  }

  // Relation constants are intensional, and the parametric functions their
  // bodies mention must exist with the relation's extra (non-geometric) arguments.
  void declare_parametrics() {
    std::vector<ConstantDecl> pending;
    for (auto& c : program_.constants) {
      if (!c.is_predicate() || spatial::relations_named(c.name, program_.theories_in_scope()).empty())
        continue;
      c.intensional = true;
      std::size_t n = 0;
      while (n < c.arg_sorts.size() && is_geometric_sort(c.arg_sorts[n])) ++n;
      std::vector<std::string> extras(c.arg_sorts.begin() + static_cast<long>(n), c.arg_sorts.end());
      std::set<std::string> names;
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& obj : program_.domain(c.arg_sorts[i]))
          if (auto shape = program_.shape_of(obj))
            for (auto& p : spatial::parameter_names(*shape)) names.insert(p);
      for (const auto& p : names) {
        auto same = [&](const ConstantDecl& d) { return d.name == p; };
        const ConstantDecl* existing = program_.find_constant(p);
        if (!existing) {
          auto it = std::find_if(pending.begin(), pending.end(), same);
          existing = it == pending.end() ? nullptr : &*it;
        }
        if (existing) {
          if (existing->arg_sorts.size() != extras.size() + 1 || existing->is_predicate())
            throw ParseError(Kind::Declaration, {0, 0},
                             "parametric function '" + p + "' must take an object plus " +
                                 std::to_string(extras.size()) + " extra argument(s) to serve '" +
                                 c.name + "'");
          continue;
        }
        ConstantDecl decl{p, {kGeometricSort}, kRealSort, false};
        decl.arg_sorts.insert(decl.arg_sorts.end(), extras.begin(), extras.end());
        pending.push_back(std::move(decl));
      }
    }
    for (auto& d : pending) program_.constants.push_back(std::move(d));
  }
};

}  // namespace

Program parse_program(std::string_view text) {
  Program program;
  Parser(text, program).parse_statements();
  return program;
}

Formula parse_formula(std::string_view text, Program& program) {
  return Parser(text, program).parse_query();
}

}  // namespace aspmtqs
