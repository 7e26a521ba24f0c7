#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aspmtqs::spatial {

enum class GeomKind { Point, Segment, Circle, Rectangle, Interval, Polygon };

/// A geometric object type. Triangles are 3-vertex convex polygons.
struct Shape {
  GeomKind kind = GeomKind::Point;
  int vertices = 0;  // polygons only

  bool operator==(const Shape&) const = default;

  static Shape point() { return {GeomKind::Point, 0}; }
  static Shape segment() { return {GeomKind::Segment, 0}; }
  static Shape circle() { return {GeomKind::Circle, 0}; }
  static Shape rectangle() { return {GeomKind::Rectangle, 0}; }
  static Shape interval() { return {GeomKind::Interval, 0}; }
  static Shape polygon(int n) { return {GeomKind::Polygon, n}; }
  static Shape triangle() { return polygon(3); }
};

inline constexpr int kDefaultMaxVertices = 8;

/// "circle", "triangle", "polygon(5)", ...
std::string shape_name(Shape shape);

/// Inverse of shape_name; also accepts "polygon(3)".
std::optional<Shape> parse_shape(std::string_view text, int max_vertices = kDefaultMaxVertices);

/// Parametric functions of a shape, in canonical order.
///   point: x y; circle: x y r; segment: x1 y1 x2 y2; rectangle: xlo xhi ylo yhi;
///   interval: lo hi; polygon(n): x1 y1 ... xn yn.
std::vector<std::string> parameter_names(Shape shape);

bool has_parameter(Shape shape, std::string_view name);

/// True for any name that is a parametric function of some shape.
bool is_parameter_name(std::string_view name);

}  // namespace aspmtqs::spatial
