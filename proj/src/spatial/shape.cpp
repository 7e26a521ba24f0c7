#include "aspmtqs/spatial/shape.hpp"

#include <algorithm>
#include <cctype>

namespace aspmtqs::spatial {

std::string shape_name(Shape shape) {
  switch (shape.kind) {
    case GeomKind::Point: return "point";
    case GeomKind::Segment: return "segment";
    case GeomKind::Circle: return "circle";
    case GeomKind::Rectangle: return "rectangle";
    case GeomKind::Interval: return "interval";
    case GeomKind::Polygon:
      return shape.vertices == 3 ? "triangle" : "polygon(" + std::to_string(shape.vertices) + ")";
  }
  return "?";
}

std::optional<Shape> parse_shape(std::string_view text, int max_vertices) {
  if (text == "point") return Shape::point();
  if (text == "segment") return Shape::segment();
  if (text == "circle") return Shape::circle();
  if (text == "rectangle") return Shape::rectangle();
  if (text == "interval") return Shape::interval();
  if (text == "triangle") return Shape::triangle();
  constexpr std::string_view prefix = "polygon(";
  if (text.starts_with(prefix) && text.ends_with(")")) {
    auto digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    if (digits.empty() || digits.size() > 3 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return std::nullopt;
    int n = std::stoi(std::string(digits));
    if (n < 3 || n > max_vertices) return std::nullopt;
    return Shape::polygon(n);
  }
  return std::nullopt;
}

std::vector<std::string> parameter_names(Shape shape) {
  switch (shape.kind) {
    case GeomKind::Point: return {"x", "y"};
    case GeomKind::Segment: return {"x1", "y1", "x2", "y2"};
    case GeomKind::Circle: return {"x", "y", "r"};
    case GeomKind::Rectangle: return {"xlo", "xhi", "ylo", "yhi"};
    case GeomKind::Interval: return {"lo", "hi"};
    case GeomKind::Polygon: {
      std::vector<std::string> names;
      for (int i = 1; i <= shape.vertices; ++i) {
        names.push_back("x" + std::to_string(i));
        names.push_back("y" + std::to_string(i));
      }
      return names;
    }
  }
  return {};
}

bool has_parameter(Shape shape, std::string_view name) {
  auto names = parameter_names(shape);
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_parameter_name(std::string_view name) {
  static const std::vector<std::string_view> fixed = {"x", "y", "r", "xlo", "xhi", "ylo", "yhi",
                                                      "lo", "hi"};
  if (std::find(fixed.begin(), fixed.end(), name) != fixed.end()) return true;
  if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'y')) {
    auto digits = name.substr(1);
    if (digits.front() == '0') return false;
    return std::all_of(digits.begin(), digits.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
           std::stoi(std::string(digits)) <= 64;
  }
  return false;
}

}  // namespace aspmtqs::spatial
