#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace losnet {

/// Vertex welding tolerance in meters.
inline constexpr double kSnapEps = 1e-9;
/// Area tolerance in square meters.
inline constexpr double kAreaEps = 1e-7;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Sign of the orientation of (a, b, c): +1 left turn, -1 right turn, 0 collinear.
/// Exact for all finite double inputs (filtered fast path, expansion fallback).
int orient2d(Point2 a, Point2 b, Point2 c);

/// True iff p lies on the closed segment [a, b]. Exact.
bool on_segment(Point2 a, Point2 b, Point2 p);

/// Closed-segment intersection test. Exact.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

/// Proper crossing: the segments meet in a single point interior to both. Exact.
bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d);

double point_segment_distance(Point2 p, Point2 a, Point2 b);
Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PointOutsideFreeSpace : public GeometryError {
 public:
  explicit PointOutsideFreeSpace(Point2 p);
};

class EmptyRegion : public GeometryError {
 public:
  EmptyRegion() : GeometryError("region is empty") {}
};

/// A simple ring, counterclockwise, implicitly closed (last vertex != first).
struct Polygon {
  std::vector<Point2> vertices;

  std::size_t size() const { return vertices.size(); }
  Point2 operator[](std::size_t i) const { return vertices[i]; }
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

double signed_area(const Polygon& poly);
Point2 centroid(const Polygon& poly);

enum class Containment { kOutside, kBoundary, kInside };

/// Exact point-in-ring classification (orientation of the ring is irrelevant).
Containment classify(const Polygon& ring, Point2 p);

/// Reasons a ring fails the Polygon invariants; empty when valid.
std::optional<std::string> polygon_defect(const Polygon& poly);

/// Returns the ring with duplicate (within kSnapEps) and exactly collinear
/// vertices removed, reoriented counterclockwise.
Polygon cleaned(Polygon poly);

/// Outer ring plus hole rings; every ring stored counterclockwise.
struct PolygonWithHoles {
  Polygon outer;
  std::vector<Polygon> holes;

  friend bool operator==(const PolygonWithHoles&, const PolygonWithHoles&) = default;
};

double area(const PolygonWithHoles& part);
Point2 centroid(const PolygonWithHoles& part);
Containment classify(const PolygonWithHoles& part, Point2 p);
/// 0 when p is inside or on the part, otherwise distance to its boundary.
double distance(const PolygonWithHoles& part, Point2 p);

/// Interior-disjoint union of parts.
struct Region {
  std::vector<PolygonWithHoles> parts;

  Region() = default;
  explicit Region(std::vector<PolygonWithHoles> p) : parts(std::move(p)) {}
  static Region from(const Polygon& poly) { return Region({PolygonWithHoles{poly, {}}}); }
  static Region from(const PolygonWithHoles& part) { return Region({part}); }

  bool empty() const { return parts.empty(); }
};

double area(const Region& r);
bool contains(const Region& r, Point2 p);
double distance(const Region& r, Point2 p);
/// Closest point of the region to p (p itself when contained).
Point2 closest_point(const Region& r, Point2 p);

enum class BooleanOp { kIntersect, kUnion, kDifference };

/// Set operation on regions. Parts smaller than kAreaEps are dropped; an empty
/// result is returned as an empty Region.
Region region_boolean(BooleanOp op, const Region& a, const Region& b);
inline Region intersect(const Region& a, const Region& b) {
  return region_boolean(BooleanOp::kIntersect, a, b);
}
inline Region unite(const Region& a, const Region& b) {
  return region_boolean(BooleanOp::kUnion, a, b);
}
inline Region subtract(const Region& a, const Region& b) {
  return region_boolean(BooleanOp::kDifference, a, b);
}
Region unite_all(std::span<const Region> regions);
Region intersect_all(std::span<const Region> regions);

/// Shrinks the region by `margin`; parts that vanish are dropped.
Region inset(const Region& r, double margin);

/// Part with maximum area, ties broken by lexicographically smallest centroid.
const PolygonWithHoles& largest_part(const Region& r);

/// Interior point farthest from the boundary, to within `precision` meters.
Point2 pole_of_inaccessibility(const PolygonWithHoles& part, double precision = 1e-4);

/// World polygon minus obstacle polygons. Construction validates invariants.
class Environment {
 public:
  Environment(Polygon world, std::vector<Polygon> obstacles);

  const Polygon& world() const { return world_; }
  const std::vector<Polygon>& obstacles() const { return obstacles_; }

  /// Closed free-space membership: boundary points count as inside.
  bool contains(Point2 p) const;
  bool strictly_inside(Point2 p) const;

  /// Boundary edges oriented with free space on their left.
  struct Edge {
    Point2 a;
    Point2 b;
  };
  const std::vector<Edge>& edges() const { return edges_; }
  /// Reflex vertices of the free space (world reflex corners and convex obstacle corners).
  const std::vector<Point2>& reflex_vertices() const { return reflex_; }

  /// Axis-aligned bounds of the world.
  Point2 min_corner() const { return lo_; }
  Point2 max_corner() const { return hi_; }

  Region free_space() const;

 private:
  Polygon world_;
  std::vector<Polygon> obstacles_;
  std::vector<Edge> edges_;
  std::vector<Point2> reflex_;
  Point2 lo_;
  Point2 hi_;
};

class InvalidEnvironment : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Line-of-sight test in the closed free space. Grazing contact with the
/// boundary counts as visible.
bool los_visible(const Environment& env, Point2 a, Point2 b);

/// Visibility polygon of p by angular sweep over environment vertices.
Polygon visibility_polygon(const Environment& env, Point2 p);
inline Region visibility_region(const Environment& env, Point2 p) {
  return Region::from(visibility_polygon(env, p));
}

}  // namespace losnet
