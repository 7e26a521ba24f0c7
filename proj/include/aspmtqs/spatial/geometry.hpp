#pragma once

#include "aspmtqs/rational.hpp"
#include "aspmtqs/spatial/shape.hpp"

#include <vector>

namespace aspmtqs::spatial {

struct PointParams {
  Rational x;
  Rational y;
};

struct SegmentParams {
  PointParams p1;
  PointParams p2;
};

struct CircleParams {
  PointParams center;
  Rational r;
};

/// p3 strictly left of the directed segment p1 -> p2.
struct TriangleParams {
  PointParams p1;
  PointParams p2;
  PointParams p3;
};

struct RectangleParams {
  Rational x_lo;
  Rational x_hi;
  Rational y_lo;
  Rational y_hi;
};

struct IntervalParams {
  Rational lo;
  Rational hi;
};

/// Strictly convex, counter-clockwise, 3..max vertices.
struct ConvexPolygonParams {
  std::vector<PointParams> vertices;
};

/// Concrete parameter assignment for one object, in parameter_names() order.
struct Geometry {
  Shape shape;
  std::vector<Rational> values;

  static Geometry of(const PointParams& p);
  static Geometry of(const SegmentParams& s);
  static Geometry of(const CircleParams& c);
  static Geometry of(const TriangleParams& t);
  static Geometry of(const RectangleParams& r);
  static Geometry of(const IntervalParams& i);
  static Geometry of(const ConvexPolygonParams& p);

  PointParams vertex(int i) const;  // polygons and triangles, 0-based
  int vertex_count() const { return shape.kind == GeomKind::Polygon ? shape.vertices : 0; }
};

/// Orientation determinant of (b - a) x (c - a); positive when c is left of a -> b.
Rational orientation(const PointParams& a, const PointParams& b, const PointParams& c);

/// Throws SpatialError when the parameters violate the shape's invariants
/// (r <= 0, degenerate segment, lo >= hi, non-convex or clockwise polygon).
void validate(const Geometry& g);

}  // namespace aspmtqs::spatial
