#pragma once

#include "aspmtqs/error.hpp"
#include "aspmtqs/spatial/shape.hpp"
#include "aspmtqs/syntax/formula.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aspmtqs {

inline constexpr const char* kRealSort = "real";
/// Built-in sort ranging over every declared geometric object.
inline constexpr const char* kGeometricSort = "geometric";
inline constexpr const char* kBooleanResult = "boolean";

enum class SortKind { Enumerated, IntegerRange, Real, Geometric, AnyGeometric };

struct SortDecl {
  std::string name;
  SortKind kind = SortKind::Enumerated;
  long lo = 0;  // integer ranges
  long hi = 0;
  spatial::Shape shape;  // geometric sorts
  /// Whether the declaration spelled the kind out with `::`. Printing only.
  bool explicit_kind = false;

  bool finite() const { return kind != SortKind::Real; }
  bool operator==(const SortDecl&) const = default;
};

struct ObjectDecl {
  std::string name;
  std::string sort;

  bool operator==(const ObjectDecl&) const = default;
};

struct ConstantDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;  // "boolean" or "real"
  bool intensional = false;

  bool is_predicate() const { return result_sort == kBooleanResult; }
  bool operator==(const ConstantDecl&) const = default;
};

struct VariableDecl {
  std::string name;
  std::string sort;

  bool operator==(const VariableDecl&) const = default;
};

struct Head {
  enum class Kind { Atom, FunctionEq, Falsity };

  Kind kind = Kind::Falsity;
  /// Atom: the atom; FunctionEq: f(t) = u with the application on the left; Falsity: false.
  Formula formula = Formula::falsity();
  bool choice = false;

  bool operator==(const Head& other) const {
    return kind == other.kind && choice == other.choice && formula == other.formula;
  }
};

struct Rule {
  Head head;
  Formula body = Formula::truth();
  SourceLocation where;

  bool operator==(const Rule& other) const {
    return head == other.head && body == other.body;
  }
};

/// A parsed program: declarations followed by rules.
struct Program {
  std::vector<std::string> includes;
  std::vector<SortDecl> sorts;
  std::vector<ObjectDecl> objects;
  std::vector<ConstantDecl> constants;
  std::vector<VariableDecl> variables;
  /// Constants named in `:- inertial` declarations.
  std::vector<std::string> inertial;
  std::vector<Rule> rules;
  int max_vertices = spatial::kDefaultMaxVertices;

  /// Theories whose relations the program may use: the includes, or every
  /// built-in theory when there are none.
  std::vector<std::string> theories_in_scope() const;

  const SortDecl* find_sort(std::string_view name) const;
  const ObjectDecl* find_object(std::string_view name) const;
  const ConstantDecl* find_constant(std::string_view name) const;
  const VariableDecl* find_variable(std::string_view name) const;

  /// Members of a finite sort: object names, or decimal integers for ranges.
  std::vector<std::string> domain(std::string_view sort) const;
  /// Shape of a geometric object, if it is one.
  std::optional<spatial::Shape> shape_of(std::string_view object) const;
  /// Whether `object` (an object name or integer text) belongs to `sort`.
  bool in_sort(std::string_view object, std::string_view sort) const;

  bool operator==(const Program& other) const {
    return includes == other.includes && sorts == other.sorts && objects == other.objects &&
           constants == other.constants && variables == other.variables &&
           inertial == other.inertial && rules == other.rules;
  }
};

/// Built-in sort declarations (real, geometric) resolved by find_sort.
const SortDecl& builtin_real_sort();
const SortDecl& builtin_geometric_sort();

}  // namespace aspmtqs
