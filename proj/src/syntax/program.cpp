#include "aspmtqs/syntax/program.hpp"

#include "aspmtqs/spatial/catalog.hpp"

#include <algorithm>
#include <charconv>

namespace aspmtqs {

namespace {

template <class T>
const T* find_named(const std::vector<T>& items, std::string_view name) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& t) { return t.name == name; });
  return it == items.end() ? nullptr : &*it;
}

std::optional<long> parse_long(std::string_view text) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

const SortDecl& builtin_real_sort() {
  static const SortDecl real = [] { SortDecl s; s.name = kRealSort; s.kind = SortKind::Real; return s; }();
  return real;
}

const SortDecl& builtin_geometric_sort() {
  static const SortDecl geometric = [] { SortDecl s; s.name = kGeometricSort; s.kind = SortKind::AnyGeometric; return s; }();
  return geometric;
}

std::vector<std::string> Program::theories_in_scope() const {
  return includes.empty() ? spatial::theory_names() : includes;
}

const SortDecl* Program::find_sort(std::string_view name) const {
  if (name == kRealSort) return &builtin_real_sort();
  if (name == kGeometricSort) return &builtin_geometric_sort();
  return find_named(sorts, name);
}

const ObjectDecl* Program::find_object(std::string_view name) const {
  return find_named(objects, name);
}

const ConstantDecl* Program::find_constant(std::string_view name) const {
  return find_named(constants, name);
}

const VariableDecl* Program::find_variable(std::string_view name) const {
  return find_named(variables, name);
}

std::vector<std::string> Program::domain(std::string_view sort) const {
  std::vector<std::string> out;
  const SortDecl* decl = find_sort(sort);
  if (!decl) return out;
  switch (decl->kind) {
    case SortKind::IntegerRange:
      for (long v = decl->lo; v <= decl->hi; ++v) out.push_back(std::to_string(v));
      break;
    case SortKind::AnyGeometric:
      for (const auto& o : objects)
        if (shape_of(o.name)) out.push_back(o.name);
      break;
    case SortKind::Enumerated:
    case SortKind::Geometric:
      for (const auto& o : objects)
        if (o.sort == sort) out.push_back(o.name);
      break;
    case SortKind::Real:
      break;
  }
  return out;
}

std::optional<spatial::Shape> Program::shape_of(std::string_view object) const {
  const ObjectDecl* o = find_object(object);
  if (!o) return std::nullopt;
  const SortDecl* s = find_sort(o->sort);
  if (!s || s->kind != SortKind::Geometric) return std::nullopt;
  return s->shape;
}

bool Program::in_sort(std::string_view object, std::string_view sort) const {
  const SortDecl* decl = find_sort(sort);
  if (!decl) return false;
  switch (decl->kind) {
    case SortKind::IntegerRange: {
      auto v = parse_long(object);
      return v && *v >= decl->lo && *v <= decl->hi;
    }
    case SortKind::AnyGeometric:
      return shape_of(object).has_value();
    case SortKind::Enumerated:
    case SortKind::Geometric: {
      const ObjectDecl* o = find_object(object);
      return o && o->sort == sort;
    }
    case SortKind::Real:
      return false;
  }
  return false;
}

}  // namespace aspmtqs
