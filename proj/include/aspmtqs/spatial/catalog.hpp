#pragma once

#include "aspmtqs/spatial/geometry.hpp"
#include "aspmtqs/spatial/shape.hpp"
#include "aspmtqs/syntax/formula.hpp"

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aspmtqs::spatial {

enum class RelationGroup { Rcc8Circle, Rcc5Polygon, IntervalAlgebra, RectangleAlgebra, Cdc,
                           Orientation, Metric };

const char* to_string(RelationGroup group);

/// Parametric-function terms of one relation argument, in parameter_names() order.
using ParamTerms = std::vector<Term>;

/// A qualitative spatial relation with its polynomial body.
struct RelationDef {
  std::string name;
  std::vector<GeomKind> arg_kinds;
  RelationGroup group;
  /// Member of the group's jointly-exhaustive pairwise-disjoint base set.
  bool base = false;
  /// Binary relations: name of R' with R(a,b) <-> R'(b,a). Empty when not in the catalog.
  std::string converse;
  /// Builds the body over the arguments' parameter terms.
  std::function<Formula(std::span<const ParamTerms>)> body;
  /// Direct geometric decision procedure used by eval_relation instead of the body.
  std::function<bool(std::span<const Geometry>)> decide;
  int max_vertices = kDefaultMaxVertices;

  std::size_t arity() const { return arg_kinds.size(); }
  bool accepts(std::span<const Shape> shapes) const;
};

/// RCC-8 base relations over circles plus the RCC-5 names DR, PP, PPi, O, P (EQ shared).
const std::vector<RelationDef>& catalog_rcc8_circles();
/// The 13 Allen relations over intervals.
const std::vector<RelationDef>& catalog_interval_algebra();
/// 169 relations ra_<X>_<Y>: Allen relation X on the x-extents and Y on the y-extents.
const std::vector<RelationDef>& catalog_rectangle_algebra();
/// Nine cardinal tiles cdcN .. cdcB of a target against the reference's bounding box.
const std::vector<RelationDef>& catalog_cdc();
/// RCC-5 over convex polygons with up to `max_vertices` vertices.
std::vector<RelationDef> catalog_rcc5_polygons(int max_vertices);
/// leftOf / rightOf / collinear (point vs segment, and circle-centre wrappers),
/// parallel / perpendicular (segments).
const std::vector<RelationDef>& catalog_orientation();
/// coincident / insideOf / outsideOf (point vs circle), smaller / sameSize / larger (circles).
const std::vector<RelationDef>& catalog_metric();

/// Names accepted by `:- include`.
std::vector<std::string> theory_names();
bool is_theory(std::string_view name);
/// Relations of one included theory. Throws SpatialError for unknown names.
const std::vector<RelationDef>& theory(std::string_view name);

/// All relations called `name` across the included theories.
std::vector<const RelationDef*> relations_named(std::string_view name,
                                                std::span<const std::string> includes);
/// The overload of `name` accepting `shapes`, or nullptr.
const RelationDef* find_relation(std::string_view name, std::span<const Shape> shapes,
                                 std::span<const std::string> includes);

/// Names of a jointly-exhaustive pairwise-disjoint relation set usable by the
/// composition command: "rcc8", "rcc5", "ia", "ra", "size". Empty for unknown names.
std::vector<std::string> base_set(std::string_view name);
std::vector<std::string> base_set_names();

/// Instantiates a relation body for concrete parameter terms. Throws SpatialError on
/// arity or shape mismatch.
Formula expand_relation(const RelationDef& rel, std::span<const ParamTerms> args);

/// Numeric decision with exact rational arithmetic. Throws SpatialError on
/// invariant-violating geometry or shape mismatch.
bool eval_relation(std::span<const Geometry> geoms, const RelationDef& rel);

/// Symbolic form of the shape's parameter invariants (r > 0, lo < hi, distinct
/// segment endpoints, strictly convex counter-clockwise polygon). Truth for points.
Formula shape_invariant(Shape shape, const ParamTerms& params);

/// Number terms for a concrete geometry, for instantiating bodies numerically.
ParamTerms numeric_terms(const Geometry& g);

}  // namespace aspmtqs::spatial
