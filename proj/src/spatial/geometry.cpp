#include "aspmtqs/spatial/geometry.hpp"

#include "aspmtqs/error.hpp"

namespace aspmtqs::spatial {

Geometry Geometry::of(const PointParams& p) { return {Shape::point(), {p.x, p.y}}; }

Geometry Geometry::of(const SegmentParams& s) {
  return {Shape::segment(), {s.p1.x, s.p1.y, s.p2.x, s.p2.y}};
}

Geometry Geometry::of(const CircleParams& c) {
  return {Shape::circle(), {c.center.x, c.center.y, c.r}};
}

Geometry Geometry::of(const TriangleParams& t) {
  return {Shape::triangle(), {t.p1.x, t.p1.y, t.p2.x, t.p2.y, t.p3.x, t.p3.y}};
}

Geometry Geometry::of(const RectangleParams& r) {
  return {Shape::rectangle(), {r.x_lo, r.x_hi, r.y_lo, r.y_hi}};
}

Geometry Geometry::of(const IntervalParams& i) { return {Shape::interval(), {i.lo, i.hi}}; }

Geometry Geometry::of(const ConvexPolygonParams& p) {
  Geometry g{Shape::polygon(static_cast<int>(p.vertices.size())), {}};
  for (const auto& v : p.vertices) {
    g.values.push_back(v.x);
    g.values.push_back(v.y);
  }
  return g;
}

PointParams Geometry::vertex(int i) const {
  return {values[static_cast<std::size_t>(2 * i)], values[static_cast<std::size_t>(2 * i + 1)]};
}

Rational orientation(const PointParams& a, const PointParams& b, const PointParams& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

void validate(const Geometry& g) {
  std::size_t expected = parameter_names(g.shape).size();
  if (g.values.size() != expected)
    throw SpatialError(shape_name(g.shape) + " needs " + std::to_string(expected) +
                       " parameters, got " + std::to_string(g.values.size()));
  const auto& v = g.values;
  switch (g.shape.kind) {
    case GeomKind::Point:
      return;
    case GeomKind::Segment:
      if (v[0] == v[2] && v[1] == v[3]) throw SpatialError("segment end points coincide");
      return;
    case GeomKind::Circle:
      if (v[2] <= 0) throw SpatialError("circle radius must be positive");
      return;
    case GeomKind::Rectangle:
      if (v[0] >= v[1] || v[2] >= v[3]) throw SpatialError("rectangle extent must be positive");
      return;
    case GeomKind::Interval:
      if (v[0] >= v[1]) throw SpatialError("interval needs lo < hi");
      return;
    case GeomKind::Polygon: {
      int n = g.shape.vertices;
      if (n < 3) throw SpatialError("polygon needs at least 3 vertices");
      for (int i = 0; i < n; ++i) {
        PointParams a = g.vertex(i);
        PointParams b = g.vertex((i + 1) % n);
        for (int j = 0; j < n; ++j) {
          if (j == i || j == (i + 1) % n) continue;
          if (orientation(a, b, g.vertex(j)) <= 0)
            throw SpatialError("polygon must be strictly convex and counter-clockwise");
        }
      }
      return;
    }
  }
}

}  // namespace aspmtqs::spatial
