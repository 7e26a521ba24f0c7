#pragma once

#include "aspmtqs/spatial/catalog.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace aspmtqs::testkit {

using spatial::Geometry;
using GeometryPair = std::pair<Geometry, Geometry>;

/// Multiples of 1/den in [-range, range]. A coarse grid makes tangency,
/// shared endpoints and collinearity common.
Rational random_rational(std::mt19937& rng, int range, int den);

Geometry random_point(std::mt19937& rng);
Geometry random_segment(std::mt19937& rng);
Geometry random_circle(std::mt19937& rng);
Geometry random_interval(std::mt19937& rng);
Geometry random_rectangle(std::mt19937& rng);
/// Vertices on a circle at rational points, counter-clockwise.
Geometry random_convex_polygon(std::mt19937& rng, int vertices);

/// Random geometry of the kind a relation argument expects.
Geometry random_geometry(std::mt19937& rng, spatial::GeomKind kind, int vertices = 3);

/// Boundary cases: external and internal tangency, equality, concentricity.
std::vector<GeometryPair> engineered_circle_pairs();
/// Shared endpoints in every combination.
std::vector<GeometryPair> engineered_interval_pairs();
/// Points on the segment, on its extension and at its endpoints.
std::vector<GeometryPair> engineered_point_segment_pairs();

struct JepdTally {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::string first_violation;
};

/// Counts pairs for which the number of relations in `relations` that hold
/// (by eval_relation) differs from one.
void tally_jepd(JepdTally& tally, const GeometryPair& pair,
                const std::vector<const spatial::RelationDef*>& relations);

/// Base relations of a catalog whose overload accepts exactly these shapes.
std::vector<const spatial::RelationDef*> base_relations(const std::vector<spatial::RelationDef>& catalog,
                                                        const std::vector<spatial::Shape>& shapes);

std::string describe(const Geometry& g);

}  // namespace aspmtqs::testkit
