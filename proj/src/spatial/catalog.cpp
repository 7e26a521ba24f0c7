#include "aspmtqs/spatial/catalog.hpp"

#include "aspmtqs/error.hpp"
#include "aspmtqs/syntax/evaluator.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace aspmtqs::spatial {

namespace {

using Args = std::span<const ParamTerms>;
using Geoms = std::span<const Geometry>;

Term add(Term a, Term b) { return Term::add(std::move(a), std::move(b)); }
Term sub(Term a, Term b) { return Term::sub(std::move(a), std::move(b)); }
Term mul(Term a, Term b) { return Term::mul(std::move(a), std::move(b)); }
Term sq(const Term& a) { return Term::mul(a, a); }
Term zero() { return Term::number(0); }

Formula lt(Term a, Term b) { return Formula::compare(CompareOp::Lt, std::move(a), std::move(b)); }
Formula le(Term a, Term b) { return Formula::compare(CompareOp::Le, std::move(a), std::move(b)); }
Formula eq(Term a, Term b) { return Formula::compare(CompareOp::Eq, std::move(a), std::move(b)); }
Formula ge(Term a, Term b) { return Formula::compare(CompareOp::Ge, std::move(a), std::move(b)); }
Formula gt(Term a, Term b) { return Formula::compare(CompareOp::Gt, std::move(a), std::move(b)); }
Formula all(std::vector<Formula> items) {
  return items.size() == 1 ? items.front() : Formula::conj(std::move(items));
}
Formula any(std::vector<Formula> items) {
  return items.size() == 1 ? items.front() : Formula::disj(std::move(items));
}

struct PointT {
  Term x;
  Term y;
};

// (b - a) x (c - a)
Term orient(const PointT& a, const PointT& b, const PointT& c) {
  return sub(mul(sub(b.x, a.x), sub(c.y, a.y)), mul(sub(b.y, a.y), sub(c.x, a.x)));
}

PointT point_of(const ParamTerms& p, std::size_t i = 0) { return {p[2 * i], p[2 * i + 1]}; }

std::size_t vertex_count(const ParamTerms& p) { return p.size() / 2; }

bool evaluate_body(const RelationDef& rel, Geoms geoms) {
  std::vector<ParamTerms> terms;
  for (const auto& g : geoms) terms.push_back(numeric_terms(g));
  return evaluate(rel.body(terms), Interpretation{});
}

RelationDef make(std::string name, std::vector<GeomKind> kinds, RelationGroup group, bool base,
                 std::string converse, std::function<Formula(Args)> body) {
  RelationDef d;
  d.name = std::move(name);
  d.arg_kinds = std::move(kinds);
  d.group = group;
  d.base = base;
  d.converse = std::move(converse);
  d.body = std::move(body);
  return d;
}

// ---- RCC-8 over circles ----------------------------------------------------

struct CircleTerms {
  Term d2;    // squared centre distance
  Term sum2;  // (r1 + r2)^2
  Term dif2;  // (r1 - r2)^2
  Term r1;
  Term r2;
};

CircleTerms circle_terms(Args a) {
  const auto& p = a[0];
  const auto& q = a[1];
  return {add(sq(sub(p[0], q[0])), sq(sub(p[1], q[1]))), sq(add(p[2], q[2])), sq(sub(p[2], q[2])),
          p[2], q[2]};
}

Formula rcc_dc(Args a) {
  auto c = circle_terms(a);
  return gt(c.d2, c.sum2);
}
Formula rcc_ec(Args a) {
  auto c = circle_terms(a);
  return eq(c.d2, c.sum2);
}
Formula rcc_po(Args a) {
  auto c = circle_terms(a);
  return all({lt(c.d2, c.sum2), gt(c.d2, c.dif2)});
}
Formula rcc_tpp(Args a) {
  auto c = circle_terms(a);
  return all({eq(c.d2, c.dif2), lt(c.r1, c.r2)});
}
Formula rcc_ntpp(Args a) {
  auto c = circle_terms(a);
  return all({lt(c.d2, c.dif2), lt(c.r1, c.r2)});
}
Formula rcc_tppi(Args a) {
  auto c = circle_terms(a);
  return all({eq(c.d2, c.dif2), gt(c.r1, c.r2)});
}
Formula rcc_ntppi(Args a) {
  auto c = circle_terms(a);
  return all({lt(c.d2, c.dif2), gt(c.r1, c.r2)});
}
Formula rcc_eq(Args a) {
  return all({eq(a[0][0], a[1][0]), eq(a[0][1], a[1][1]), eq(a[0][2], a[1][2])});
}

std::vector<RelationDef> build_rcc8() {
  const std::vector<GeomKind> cc = {GeomKind::Circle, GeomKind::Circle};
  const auto g = RelationGroup::Rcc8Circle;
  std::vector<RelationDef> out = {
      make("rccDC", cc, g, true, "rccDC", rcc_dc),
      make("rccEC", cc, g, true, "rccEC", rcc_ec),
      make("rccPO", cc, g, true, "rccPO", rcc_po),
      make("rccTPP", cc, g, true, "rccTPPi", rcc_tpp),
      make("rccNTPP", cc, g, true, "rccNTPPi", rcc_ntpp),
      make("rccTPPi", cc, g, true, "rccTPP", rcc_tppi),
      make("rccNTPPi", cc, g, true, "rccNTPP", rcc_ntppi),
      make("rccEQ", cc, g, true, "rccEQ", rcc_eq),
      make("rccDR", cc, g, false, "rccDR", [](Args a) { return any({rcc_dc(a), rcc_ec(a)}); }),
      make("rccPP", cc, g, false, "rccPPi", [](Args a) { return any({rcc_tpp(a), rcc_ntpp(a)}); }),
      make("rccPPi", cc, g, false, "rccPP",
           [](Args a) { return any({rcc_tppi(a), rcc_ntppi(a)}); }),
      make("rccO", cc, g, false, "rccO",
           [](Args a) {
             return any({rcc_po(a), rcc_tpp(a), rcc_ntpp(a), rcc_tppi(a), rcc_ntppi(a), rcc_eq(a)});
           }),
      make("rccP", cc, g, false, "",
           [](Args a) { return any({rcc_tpp(a), rcc_ntpp(a), rcc_eq(a)}); }),
  };
  return out;
}

// ---- Allen's interval algebra ------------------------------------------------

struct Allen {
  const char* name;
  const char* converse;
  // Body over the endpoints of two intervals.
  Formula (*body)(const Term& lo1, const Term& hi1, const Term& lo2, const Term& hi2);
};

const std::array<Allen, 13> kAllen = {{
    {"before", "after", [](const Term&, const Term& h1, const Term& l2, const Term&) {
       return lt(h1, l2);
     }},
    {"after", "before", [](const Term& l1, const Term&, const Term&, const Term& h2) {
       return lt(h2, l1);
     }},
    {"meets", "metBy", [](const Term&, const Term& h1, const Term& l2, const Term&) {
       return eq(h1, l2);
     }},
    {"metBy", "meets", [](const Term& l1, const Term&, const Term&, const Term& h2) {
       return eq(h2, l1);
     }},
    {"overlaps", "overlappedBy",
     [](const Term& l1, const Term& h1, const Term& l2, const Term& h2) {
       return all({lt(l1, l2), lt(l2, h1), lt(h1, h2)});
     }},
    {"overlappedBy", "overlaps",
     [](const Term& l1, const Term& h1, const Term& l2, const Term& h2) {
       return all({lt(l2, l1), lt(l1, h2), lt(h2, h1)});
     }},
    {"starts", "startedBy", [](const Term& l1, const Term& h1, const Term& l2, const Term& h2) {
       return all({eq(l1, l2), lt(h1, h2)});
     }},
    {"startedBy", "starts", [](const Term& l1, const Term& h1, const Term& l2, const Term& h2) {
       return all({eq(l1, l2), lt(h2, h1)});
     }},
    {"during", "contains", [](const Term& l1, const Term& h1, const Term& l2, const Term& h2) {
       return all({lt(l2, l1), lt(h1, h2)});
     }},
    {"contains", "during", [](const Term& l1, const Term& h1, const Term& l2, const Term& h2) {
       return all({lt(l1, l2), lt(h2, h1)});
     }},
    {"finishes", "finishedBy",
     [](const Term& l1, const Term& h1, const Term& l2, const Term& h2) {
       return all({eq(h1, h2), lt(l2, l1)});
     }},
    {"finishedBy", "finishes",
     [](const Term& l1, const Term& h1, const Term& l2, const Term& h2) {
       return all({eq(h1, h2), lt(l1, l2)});
     }},
    {"equals", "equals", [](const Term& l1, const Term& h1, const Term& l2, const Term& h2) {
       return all({eq(l1, l2), eq(h1, h2)});
     }},
}};

std::vector<RelationDef> build_ia() {
  std::vector<RelationDef> out;
  for (const auto& a : kAllen) {
    auto body = a.body;
    out.push_back(make(a.name, {GeomKind::Interval, GeomKind::Interval},
                       RelationGroup::IntervalAlgebra, true, a.converse,
                       [body](Args p) { return body(p[0][0], p[0][1], p[1][0], p[1][1]); }));
  }
  return out;
}

std::vector<RelationDef> build_ra() {
  std::vector<RelationDef> out;
  for (const auto& ax : kAllen) {
    for (const auto& ay : kAllen) {
      auto bx = ax.body;
      auto by = ay.body;
      out.push_back(make(std::string("ra_") + ax.name + "_" + ay.name,
                         {GeomKind::Rectangle, GeomKind::Rectangle},
                         RelationGroup::RectangleAlgebra, true,
                         std::string("ra_") + ax.converse + "_" + ay.converse, [bx, by](Args p) {
                           return all({bx(p[0][0], p[0][1], p[1][0], p[1][1]),
                                       by(p[0][2], p[0][3], p[1][2], p[1][3])});
                         }));
    }
  }
  return out;
}

// ---- cardinal direction tiles -------------------------------------------------

enum class Band { Low, Mid, High };

struct Tile {
  const char* name;
  Band x;
  Band y;
};

const std::array<Tile, 9> kTiles = {{{"N", Band::Mid, Band::High},
                                     {"NE", Band::High, Band::High},
                                     {"E", Band::High, Band::Mid},
                                     {"SE", Band::High, Band::Low},
                                     {"S", Band::Mid, Band::Low},
                                     {"SW", Band::Low, Band::Low},
                                     {"W", Band::Low, Band::Mid},
                                     {"NW", Band::Low, Band::High},
                                     {"B", Band::Mid, Band::Mid}}};

// Bounding box of the reference: xlo, xhi, ylo, yhi.
std::array<Term, 4> reference_box(const ParamTerms& ref, GeomKind kind) {
  if (kind == GeomKind::Circle)
    return {sub(ref[0], ref[2]), add(ref[0], ref[2]), sub(ref[1], ref[2]), add(ref[1], ref[2])};
  return {ref[0], ref[1], ref[2], ref[3]};
}

// Closed band membership of a coordinate.
Formula in_band_closed(const Term& v, Band b, const Term& lo, const Term& hi) {
  switch (b) {
    case Band::Low: return le(v, lo);
    case Band::Mid: return all({le(lo, v), le(v, hi)});
    case Band::High: return ge(v, hi);
  }
  return Formula::falsity();
}

// Open-interior overlap of [a0, a1] with a band.
Formula band_overlap(const Term& a0, const Term& a1, Band b, const Term& lo, const Term& hi) {
  switch (b) {
    case Band::Low: return lt(a0, lo);
    case Band::Mid: return all({lt(a0, hi), gt(a1, lo)});
    case Band::High: return gt(a1, hi);
  }
  return Formula::falsity();
}

// Cases for the distance from coordinate c to a closed band: (condition, distance or none).
std::vector<std::pair<Formula, std::optional<Term>>> band_distance_cases(const Term& c, Band b,
                                                                         const Term& lo,
                                                                         const Term& hi) {
  switch (b) {
    case Band::Low: return {{le(c, lo), std::nullopt}, {gt(c, lo), sub(c, lo)}};
    case Band::Mid:
      return {{lt(c, lo), sub(lo, c)}, {all({le(lo, c), le(c, hi)}), std::nullopt},
              {gt(c, hi), sub(c, hi)}};
    case Band::High: return {{ge(c, hi), std::nullopt}, {lt(c, hi), sub(hi, c)}};
  }
  return {};
}

struct TileGeometry {
  std::vector<Term> xs;  // finite x coordinates of corners
  std::vector<Term> ys;
  std::vector<std::pair<long, long>> rays;  // recession directions
};

TileGeometry tile_geometry(const Tile& t, const std::array<Term, 4>& box) {
  TileGeometry g;
  auto axis = [&](Band b, const Term& lo, const Term& hi, std::vector<Term>& coords, bool is_x) {
    if (b != Band::High) coords.push_back(lo);
    if (b == Band::Mid || b == Band::High) coords.push_back(hi);
    if (b == Band::Low) g.rays.push_back(is_x ? std::pair{-1L, 0L} : std::pair{0L, -1L});
    if (b == Band::High) g.rays.push_back(is_x ? std::pair{1L, 0L} : std::pair{0L, 1L});
  };
  axis(t.x, box[0], box[1], g.xs, true);
  axis(t.y, box[2], box[3], g.ys, false);
  return g;
}

Formula cdc_body(const Tile& tile, GeomKind target_kind, GeomKind ref_kind, Args a) {
  const ParamTerms& t = a[0];
  auto box = reference_box(a[1], ref_kind);
  switch (target_kind) {
    case GeomKind::Point:
      return all({in_band_closed(t[0], tile.x, box[0], box[1]),
                  in_band_closed(t[1], tile.y, box[2], box[3])});
    case GeomKind::Rectangle:
      return all({band_overlap(t[0], t[1], tile.x, box[0], box[1]),
                  band_overlap(t[2], t[3], tile.y, box[2], box[3])});
    case GeomKind::Circle: {
      std::vector<Formula> cases;
      for (auto& [cx, dx] : band_distance_cases(t[0], tile.x, box[0], box[1])) {
        for (auto& [cy, dy] : band_distance_cases(t[1], tile.y, box[2], box[3])) {
          std::vector<Formula> conj = {cx, cy};
          if (dx || dy) {
            Term d2 = dx && dy ? add(sq(*dx), sq(*dy)) : sq(dx ? *dx : *dy);
            conj.push_back(lt(d2, sq(t[2])));
          }
          cases.push_back(all(std::move(conj)));
        }
      }
      return any(std::move(cases));
    }
    case GeomKind::Polygon: {
      std::size_t n = vertex_count(t);
      // Interiors overlap unless some tile side or polygon edge separates them;
      // each conjunct below is the negation of one separation witness.
      std::vector<Formula> conj;
      auto side = [&](bool use_x, bool keep_below, const Term& bound) {
        std::vector<Formula> violation;
        for (std::size_t i = 0; i < n; ++i) {
          const Term& c = use_x ? t[2 * i] : t[2 * i + 1];
          violation.push_back(keep_below ? lt(c, bound) : gt(c, bound));
        }
        conj.push_back(any(std::move(violation)));
      };
      if (tile.x != Band::High) side(true, true, tile.x == Band::Low ? box[0] : box[1]);
      if (tile.x != Band::Low) side(true, false, tile.x == Band::High ? box[1] : box[0]);
      if (tile.y != Band::High) side(false, true, tile.y == Band::Low ? box[2] : box[3]);
      if (tile.y != Band::Low) side(false, false, tile.y == Band::High ? box[3] : box[2]);
      TileGeometry tg = tile_geometry(tile, box);
      for (std::size_t j = 0; j < n; ++j) {
        PointT v1 = point_of(t, j);
        PointT v2 = point_of(t, (j + 1) % n);
        std::vector<Formula> violation;
        for (const auto& cx : tg.xs)
          for (const auto& cy : tg.ys) violation.push_back(gt(orient(v1, v2, {cx, cy}), zero()));
        Term ex = sub(v2.x, v1.x);
        Term ey = sub(v2.y, v1.y);
        for (auto [dx, dy] : tg.rays) {
          // ex*dy - ey*dx with unit axis directions
          Term cross = dx == 0 ? (dy > 0 ? ex : Term::neg(ex)) : (dx > 0 ? Term::neg(ey) : ey);
          violation.push_back(gt(cross, zero()));
        }
        conj.push_back(any(std::move(violation)));
      }
      return all(std::move(conj));
    }
    default:
      break;
  }
  throw SpatialError("unsupported cardinal direction target");
}

struct Bound {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

Bound band_bound(Band b, const Rational& lo, const Rational& hi) {
  switch (b) {
    case Band::Low: return {std::nullopt, lo};
    case Band::Mid: return {lo, hi};
    case Band::High: return {hi, std::nullopt};
  }
  return {};
}

// Projection of a (possibly unbounded) axis-aligned box onto direction (nx, ny).
Bound project_box(const Bound& bx, const Bound& by, const Rational& nx, const Rational& ny) {
  auto extreme = [](const Bound& b, const Rational& n, bool want_min) -> std::optional<Rational> {
    if (n == 0) return Rational(0);
    bool take_lo = (n > 0) == want_min;
    const auto& v = take_lo ? b.lo : b.hi;
    if (!v) return std::nullopt;
    return Rational(n * *v);
  };
  Bound out;
  auto xmin = extreme(bx, nx, true), ymin = extreme(by, ny, true);
  auto xmax = extreme(bx, nx, false), ymax = extreme(by, ny, false);
  if (xmin && ymin) out.lo = *xmin + *ymin;
  if (xmax && ymax) out.hi = *xmax + *ymax;
  return out;
}

Bound project_points(const std::vector<PointParams>& pts, const Rational& nx, const Rational& ny) {
  Bound out;
  for (const auto& p : pts) {
    Rational v = nx * p.x + ny * p.y;
    if (!out.lo || v < *out.lo) out.lo = v;
    if (!out.hi || v > *out.hi) out.hi = v;
  }
  return out;
}

// Open overlap of two projections (at least one of them bounded).
bool projections_overlap(const Bound& a, const Bound& b) {
  bool below = a.hi && b.lo && *a.hi <= *b.lo;
  bool above = b.hi && a.lo && *b.hi <= *a.lo;
  return !below && !above;
}

std::vector<PointParams> vertices(const Geometry& g) {
  std::vector<PointParams> out;
  for (int i = 0; i < g.vertex_count(); ++i) out.push_back(g.vertex(i));
  return out;
}

std::array<Rational, 4> box_of(const Geometry& ref) {
  const auto& v = ref.values;
  if (ref.shape.kind == GeomKind::Circle) return {v[0] - v[2], v[0] + v[2], v[1] - v[2], v[1] + v[2]};
  return {v[0], v[1], v[2], v[3]};
}

bool cdc_decide(const Tile& tile, Geoms g) {
  const Geometry& target = g[0];
  auto box = box_of(g[1]);
  Bound bx = band_bound(tile.x, box[0], box[1]);
  Bound by = band_bound(tile.y, box[2], box[3]);
  const auto& v = target.values;
  auto within = [](const Rational& c, const Bound& b) {
    return (!b.lo || c >= *b.lo) && (!b.hi || c <= *b.hi);
  };
  switch (target.shape.kind) {
    case GeomKind::Point: return within(v[0], bx) && within(v[1], by);
    case GeomKind::Rectangle:
      return projections_overlap({v[0], v[1]}, bx) && projections_overlap({v[2], v[3]}, by);
    case GeomKind::Circle: {
      // Squared distance from the centre to the closed tile, by clamping.
      auto gap = [](const Rational& c, const Bound& b) {
        if (b.lo && c < *b.lo) return Rational(*b.lo - c);
        if (b.hi && c > *b.hi) return Rational(c - *b.hi);
        return Rational(0);
      };
      Rational dx = gap(v[0], bx);
      Rational dy = gap(v[1], by);
      return dx * dx + dy * dy < v[2] * v[2];
    }
    case GeomKind::Polygon: {
      auto pts = vertices(target);
      std::vector<std::pair<Rational, Rational>> axes = {{1, 0}, {0, 1}};
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % pts.size()];
        axes.emplace_back(b.y - a.y, a.x - b.x);
      }
      for (auto& [nx, ny] : axes)
        if (!projections_overlap(project_points(pts, nx, ny), project_box(bx, by, nx, ny)))
          return false;
      return true;
    }
    default:
      throw SpatialError("unsupported cardinal direction target");
  }
}

std::vector<RelationDef> build_cdc(int max_vertices) {
  std::vector<RelationDef> out;
  for (GeomKind ref : {GeomKind::Rectangle, GeomKind::Circle}) {
    for (GeomKind target :
         {GeomKind::Point, GeomKind::Rectangle, GeomKind::Circle, GeomKind::Polygon}) {
      for (const Tile& tile : kTiles) {
        auto d = make(std::string("cdc") + tile.name, {target, ref}, RelationGroup::Cdc, false, "",
                      [tile, target, ref](Args a) { return cdc_body(tile, target, ref, a); });
        d.decide = [tile](Geoms g) { return cdc_decide(tile, g); };
        d.max_vertices = max_vertices;
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

// ---- RCC-5 over convex polygons ------------------------------------------------

// Every vertex of a lies in the closed convex polygon b.
Formula poly_part(const ParamTerms& a, const ParamTerms& b) {
  std::vector<Formula> conj;
  std::size_t m = vertex_count(b);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < vertex_count(a); ++i)
      conj.push_back(ge(orient(point_of(b, j), point_of(b, (j + 1) % m), point_of(a, i)), zero()));
  return all(std::move(conj));
}

Formula poly_not_part(const ParamTerms& a, const ParamTerms& b) {
  std::vector<Formula> disj;
  std::size_t m = vertex_count(b);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < vertex_count(a); ++i)
      disj.push_back(lt(orient(point_of(b, j), point_of(b, (j + 1) % m), point_of(a, i)), zero()));
  return any(std::move(disj));
}

// Interiors meet: no edge line of either polygon has the other polygon on its closed outer side.
Formula poly_overlap(const ParamTerms& a, const ParamTerms& b) {
  std::vector<Formula> conj;
  auto edges = [&](const ParamTerms& p, const ParamTerms& q) {
    std::size_t m = vertex_count(p);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Formula> inside;
      for (std::size_t i = 0; i < vertex_count(q); ++i)
        inside.push_back(gt(orient(point_of(p, j), point_of(p, (j + 1) % m), point_of(q, i)), zero()));
      conj.push_back(any(std::move(inside)));
    }
  };
  edges(b, a);
  edges(a, b);
  return all(std::move(conj));
}

Formula poly_separated(const ParamTerms& a, const ParamTerms& b) {
  std::vector<Formula> disj;
  auto edges = [&](const ParamTerms& p, const ParamTerms& q) {
    std::size_t m = vertex_count(p);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Formula> outside;
      for (std::size_t i = 0; i < vertex_count(q); ++i)
        outside.push_back(le(orient(point_of(p, j), point_of(p, (j + 1) % m), point_of(q, i)), zero()));
      disj.push_back(all(std::move(outside)));
    }
  };
  edges(b, a);
  edges(a, b);
  return any(std::move(disj));
}

bool part_of(const Geometry& a, const Geometry& b) {
  int m = b.vertex_count();
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < a.vertex_count(); ++i)
      if (orientation(b.vertex(j), b.vertex((j + 1) % m), a.vertex(i)) < 0) return false;
  return true;
}

// Separating-axis test on the open interiors.
bool interiors_meet(const Geometry& a, const Geometry& b) {
  auto pa = vertices(a);
  auto pb = vertices(b);
  for (const auto* poly : {&pa, &pb}) {
    for (std::size_t i = 0; i < poly->size(); ++i) {
      const auto& u = (*poly)[i];
      const auto& w = (*poly)[(i + 1) % poly->size()];
      Rational nx = w.y - u.y;
      Rational ny = u.x - w.x;
      if (!projections_overlap(project_points(pa, nx, ny), project_points(pb, nx, ny))) return false;
    }
  }
  return true;
}

std::vector<RelationDef> build_polygons(int max_vertices) {
  const std::vector<GeomKind> pp = {GeomKind::Polygon, GeomKind::Polygon};
  const auto g = RelationGroup::Rcc5Polygon;
  std::vector<RelationDef> out = {
      make("rccDR", pp, g, true, "rccDR", [](Args a) { return poly_separated(a[0], a[1]); }),
      make("rccPO", pp, g, true, "rccPO",
           [](Args a) {
             return all({poly_overlap(a[0], a[1]), poly_not_part(a[0], a[1]),
                         poly_not_part(a[1], a[0])});
           }),
      make("rccPP", pp, g, true, "rccPPi",
           [](Args a) { return all({poly_part(a[0], a[1]), poly_not_part(a[1], a[0])}); }),
      make("rccPPi", pp, g, true, "rccPP",
           [](Args a) { return all({poly_part(a[1], a[0]), poly_not_part(a[0], a[1])}); }),
      make("rccEQ", pp, g, true, "rccEQ",
           [](Args a) { return all({poly_part(a[0], a[1]), poly_part(a[1], a[0])}); }),
      make("rccO", pp, g, false, "rccO", [](Args a) { return poly_overlap(a[0], a[1]); }),
      make("rccP", pp, g, false, "", [](Args a) { return poly_part(a[0], a[1]); }),
  };
  auto decisions = std::array<std::function<bool(Geoms)>, 7>{
      [](Geoms v) { return !interiors_meet(v[0], v[1]); },
      [](Geoms v) {
        return interiors_meet(v[0], v[1]) && !part_of(v[0], v[1]) && !part_of(v[1], v[0]);
      },
      [](Geoms v) { return part_of(v[0], v[1]) && !part_of(v[1], v[0]); },
      [](Geoms v) { return part_of(v[1], v[0]) && !part_of(v[0], v[1]); },
      [](Geoms v) { return part_of(v[0], v[1]) && part_of(v[1], v[0]); },
      [](Geoms v) { return interiors_meet(v[0], v[1]); },
      [](Geoms v) { return part_of(v[0], v[1]); },
  };
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].decide = decisions[i];
    out[i].max_vertices = max_vertices;
  }
  return out;
}

// ---- orientation and metric ---------------------------------------------------------

std::vector<RelationDef> build_orientation() {
  const auto g = RelationGroup::Orientation;
  std::vector<RelationDef> out;
  struct Sided {
    const char* name;
    CompareOp op;
  };
  const std::array<Sided, 3> sides = {{{"leftOf", CompareOp::Gt},
                                       {"rightOf", CompareOp::Lt},
                                       {"collinear", CompareOp::Eq}}};
  for (const auto& s : sides) {
    CompareOp op = s.op;
    // point vs directed segment
    out.push_back(make(s.name, {GeomKind::Point, GeomKind::Segment}, g, true, "", [op](Args a) {
      return Formula::compare(op, orient(point_of(a[1], 0), point_of(a[1], 1), point_of(a[0])),
                              zero());
    }));
    // first point vs the directed line through the other two
    out.push_back(make(s.name, {GeomKind::Point, GeomKind::Point, GeomKind::Point}, g, true, "",
                       [op](Args a) {
                         return Formula::compare(
                             op, orient(point_of(a[1]), point_of(a[2]), point_of(a[0])), zero());
                       }));
    // circle centres: centre of a vs the line from centre b to centre c
    out.push_back(make(s.name, {GeomKind::Circle, GeomKind::Circle, GeomKind::Circle}, g, true, "",
                       [op](Args a) {
                         return Formula::compare(
                             op, orient(point_of(a[1]), point_of(a[2]), point_of(a[0])), zero());
                       }));
  }
  const std::vector<GeomKind> ss = {GeomKind::Segment, GeomKind::Segment};
  out.push_back(make("parallel", ss, g, false, "parallel", [](Args a) {
    Term dx1 = sub(a[0][2], a[0][0]), dy1 = sub(a[0][3], a[0][1]);
    Term dx2 = sub(a[1][2], a[1][0]), dy2 = sub(a[1][3], a[1][1]);
    return eq(sub(mul(dx1, dy2), mul(dy1, dx2)), zero());
  }));
  out.push_back(make("perpendicular", ss, g, false, "perpendicular", [](Args a) {
    Term dx1 = sub(a[0][2], a[0][0]), dy1 = sub(a[0][3], a[0][1]);
    Term dx2 = sub(a[1][2], a[1][0]), dy2 = sub(a[1][3], a[1][1]);
    return eq(add(mul(dx1, dx2), mul(dy1, dy2)), zero());
  }));
  return out;
}

std::vector<RelationDef> build_metric() {
  const auto g = RelationGroup::Metric;
  const std::vector<GeomKind> pc = {GeomKind::Point, GeomKind::Circle};
  auto dist = [](Args a) { return add(sq(sub(a[0][0], a[1][0])), sq(sub(a[0][1], a[1][1]))); };
  const std::vector<GeomKind> cc = {GeomKind::Circle, GeomKind::Circle};
  return {
      make("coincident", pc, g, true, "", [dist](Args a) { return eq(dist(a), sq(a[1][2])); }),
      make("insideOf", pc, g, true, "", [dist](Args a) { return lt(dist(a), sq(a[1][2])); }),
      make("outsideOf", pc, g, true, "", [dist](Args a) { return gt(dist(a), sq(a[1][2])); }),
      make("smaller", cc, g, true, "larger", [](Args a) { return lt(a[0][2], a[1][2]); }),
      make("sameSize", cc, g, true, "sameSize", [](Args a) { return eq(a[0][2], a[1][2]); }),
      make("larger", cc, g, true, "smaller", [](Args a) { return gt(a[0][2], a[1][2]); }),
  };
}

struct TheoryEntry {
  const char* name;
  const std::vector<RelationDef>& (*relations)();
};

const std::vector<RelationDef>& default_polygons() {
  static const auto v = build_polygons(kDefaultMaxVertices);
  return v;
}

const std::array<TheoryEntry, 7> kTheories = {{
    {"rcc8_circles", &catalog_rcc8_circles},
    {"rcc5_polygons", &default_polygons},
    {"interval_algebra", &catalog_interval_algebra},
    {"rectangle_algebra", &catalog_rectangle_algebra},
    {"cdc", &catalog_cdc},
    {"orientation", &catalog_orientation},
    {"metric", &catalog_metric},
}};

bool shape_matches(GeomKind kind, const Shape& s, int max_vertices) {
  if (s.kind != kind) return false;
  return kind != GeomKind::Polygon || (s.vertices >= 3 && s.vertices <= max_vertices);
}

std::size_t param_count(GeomKind kind) {
  switch (kind) {
    case GeomKind::Point: return 2;
    case GeomKind::Segment: return 4;
    case GeomKind::Circle: return 3;
    case GeomKind::Rectangle: return 4;
    case GeomKind::Interval: return 2;
    case GeomKind::Polygon: return 0;
  }
  return 0;
}

}  // namespace

const char* to_string(RelationGroup group) {
  switch (group) {
    case RelationGroup::Rcc8Circle: return "rcc8-circle";
    case RelationGroup::Rcc5Polygon: return "rcc5-polygon";
    case RelationGroup::IntervalAlgebra: return "interval-algebra";
    case RelationGroup::RectangleAlgebra: return "rectangle-algebra";
    case RelationGroup::Cdc: return "cardinal-direction";
    case RelationGroup::Orientation: return "orientation";
    case RelationGroup::Metric: return "metric";
  }
  return "?";
}

bool RelationDef::accepts(std::span<const Shape> shapes) const {
  if (shapes.size() != arg_kinds.size()) return false;
  for (std::size_t i = 0; i < shapes.size(); ++i)
    if (!shape_matches(arg_kinds[i], shapes[i], max_vertices)) return false;
  return true;
}

const std::vector<RelationDef>& catalog_rcc8_circles() {
  static const auto v = build_rcc8();
  return v;
}

const std::vector<RelationDef>& catalog_interval_algebra() {
  static const auto v = build_ia();
  return v;
}

const std::vector<RelationDef>& catalog_rectangle_algebra() {
  static const auto v = build_ra();
  return v;
}

const std::vector<RelationDef>& catalog_cdc() {
  static const auto v = build_cdc(kDefaultMaxVertices);
  return v;
}

std::vector<RelationDef> catalog_rcc5_polygons(int max_vertices) {
  if (max_vertices < 3) throw SpatialError("polygons need at least 3 vertices");
  return build_polygons(max_vertices);
}

const std::vector<RelationDef>& catalog_orientation() {
  static const auto v = build_orientation();
  return v;
}

const std::vector<RelationDef>& catalog_metric() {
  static const auto v = build_metric();
  return v;
}

std::vector<std::string> theory_names() {
  std::vector<std::string> out;
  for (const auto& t : kTheories) out.emplace_back(t.name);
  return out;
}

bool is_theory(std::string_view name) {
  return std::any_of(kTheories.begin(), kTheories.end(),
                     [&](const TheoryEntry& t) { return name == t.name; });
}

const std::vector<RelationDef>& theory(std::string_view name) {
  for (const auto& t : kTheories)
    if (name == t.name) return t.relations();
  throw SpatialError("unknown theory '" + std::string(name) + "'");
}

std::vector<const RelationDef*> relations_named(std::string_view name,
                                                std::span<const std::string> includes) {
  std::vector<const RelationDef*> out;
  for (const auto& inc : includes) {
    if (!is_theory(inc)) continue;
    for (const auto& rel : theory(inc))
      if (rel.name == name) out.push_back(&rel);
  }
  return out;
}

const RelationDef* find_relation(std::string_view name, std::span<const Shape> shapes,
                                 std::span<const std::string> includes) {
  for (const RelationDef* rel : relations_named(name, includes))
    if (rel->accepts(shapes)) return rel;
  return nullptr;
}

std::vector<std::string> base_set_names() { return {"rcc8", "rcc5", "ia", "ra", "size"}; }

std::vector<std::string> base_set(std::string_view name) {
  if (name == "rcc8")
    return {"rccDC", "rccEC", "rccPO", "rccTPP", "rccNTPP", "rccTPPi", "rccNTPPi", "rccEQ"};
  if (name == "rcc5") return {"rccDR", "rccPO", "rccPP", "rccPPi", "rccEQ"};
  if (name == "size") return {"smaller", "sameSize", "larger"};
  std::vector<std::string> out;
  if (name == "ia")
    for (const auto& a : kAllen) out.emplace_back(a.name);
  if (name == "ra")
    for (const auto& ax : kAllen)
      for (const auto& ay : kAllen) out.push_back(std::string("ra_") + ax.name + "_" + ay.name);
  return out;
}

Formula expand_relation(const RelationDef& rel, std::span<const ParamTerms> args) {
  if (args.size() != rel.arity())
    throw SpatialError(rel.name + " takes " + std::to_string(rel.arity()) + " arguments, got " +
                       std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) {
    GeomKind kind = rel.arg_kinds[i];
    std::size_t n = args[i].size();
    bool ok = kind == GeomKind::Polygon
                  ? n % 2 == 0 && n / 2 >= 3 && n / 2 <= static_cast<std::size_t>(rel.max_vertices)
                  : n == param_count(kind);
    if (!ok)
      throw SpatialError("argument " + std::to_string(i + 1) + " of " + rel.name +
                         " has the wrong number of parameters");
  }
  return rel.body(args);
}

bool eval_relation(std::span<const Geometry> geoms, const RelationDef& rel) {
  std::vector<Shape> shapes;
  for (const auto& g : geoms) {
    validate(g);
    shapes.push_back(g.shape);
  }
  if (!rel.accepts(shapes)) throw SpatialError(rel.name + " does not accept these shapes");
  if (rel.decide) return rel.decide(geoms);
  return evaluate_body(rel, geoms);
}

Formula shape_invariant(Shape shape, const ParamTerms& p) {
  switch (shape.kind) {
    case GeomKind::Point:
      return Formula::truth();
    case GeomKind::Segment:
      return gt(add(sq(sub(p[2], p[0])), sq(sub(p[3], p[1]))), zero());
    case GeomKind::Circle:
      return gt(p[2], zero());
    case GeomKind::Rectangle:
      return all({lt(p[0], p[1]), lt(p[2], p[3])});
    case GeomKind::Interval:
      return lt(p[0], p[1]);
    case GeomKind::Polygon: {
      std::size_t n = vertex_count(p);
      std::vector<Formula> conj;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (j != i && j != (i + 1) % n)
            conj.push_back(gt(orient(point_of(p, i), point_of(p, (i + 1) % n), point_of(p, j)), zero()));
      return all(std::move(conj));
    }
  }
  return Formula::truth();
}

ParamTerms numeric_terms(const Geometry& g) {
  ParamTerms out;
  for (const auto& v : g.values) out.push_back(Term::number(v));
  return out;
}

}  // namespace aspmtqs::spatial
