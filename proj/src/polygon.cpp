#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "losnet/geometry.hpp"

namespace losnet {

namespace {

std::string describe(Point2 p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

double ring_distance(const Polygon& ring, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, ring[i], ring[(i + 1) % n]));
  }
  return best;
}

Point2 ring_closest(const Polygon& ring, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  Point2 out = ring.vertices.front();
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 c = closest_point_on_segment(p, ring[i], ring[(i + 1) % n]);
    const double d = dist(c, p);
    if (d < best) {
      best = d;
      out = c;
    }
  }
  return out;
}

}  // namespace

PointOutsideFreeSpace::PointOutsideFreeSpace(Point2 p)
    : GeometryError("point " + describe(p) + " is outside the free space") {}

double signed_area(const Polygon& poly) {
  const std::size_t n = poly.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * sum;
}

Point2 centroid(const Polygon& poly) {
  const std::size_t n = poly.size();
  // Shift to the first vertex to keep the products small.
  const Point2 o = poly[0];
  double a = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = poly[i] - o;
    const Point2 q = poly[(i + 1) % n] - o;
    const double w = cross(p, q);
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  if (a == 0.0) {
    Point2 s{};
    for (const Point2& v : poly.vertices) s = s + v;
    return (1.0 / static_cast<double>(n)) * s;
  }
  return Point2{o.x + cx / (3.0 * a), o.y + cy / (3.0 * a)};
}

Containment classify(const Polygon& ring, Point2 p) {
  const std::size_t n = ring.size();
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = ring[i];
    const Point2 b = ring[(i + 1) % n];
    if (on_segment(a, b, p)) return Containment::kBoundary;
    if (a.y <= p.y) {
      if (b.y > p.y && orient2d(a, b, p) > 0) ++winding;
    } else if (b.y <= p.y && orient2d(a, b, p) < 0) {
      --winding;
    }
  }
  return winding != 0 ? Containment::kInside : Containment::kOutside;
}

std::optional<std::string> polygon_defect(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return "polygon needs at least 3 vertices, got " + std::to_string(n);
  for (const Point2& v : poly.vertices) {
    if (!is_finite(v)) return "non-finite vertex";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist(poly[i], poly[(i + 1) % n]) < kSnapEps) {
      return "consecutive vertices " + std::to_string(i) + " and " +
             std::to_string((i + 1) % n) + " coincide";
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point2 c = poly[j];
      const Point2 d = poly[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges may only share their common vertex.
        const Point2 shared = (j == i + 1) ? b : a;
        const Point2 u = (j == i + 1) ? a : b;
        const Point2 w = (j == i + 1) ? d : c;
        if (orient2d(u, shared, w) == 0 && dot(u - shared, w - shared) > 0.0) {
          return "edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
        }
        continue;
      }
      if (segments_intersect(a, b, c, d)) {
        return "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
      }
    }
  }
  if (signed_area(poly) <= 0.0) return "polygon is not counterclockwise";
  return std::nullopt;
}

Polygon cleaned(Polygon poly) {
  auto& v = poly.vertices;
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    std::vector<Point2> out;
    out.reserve(v.size());
    for (const Point2& p : v) {
      if (out.empty() || dist(out.back(), p) >= kSnapEps) out.push_back(p);
    }
    while (out.size() > 1 && dist(out.front(), out.back()) < kSnapEps) out.pop_back();
    if (out.size() != v.size()) changed = true;
    v = std::move(out);
    if (v.size() < 3) break;

    std::vector<Point2> kept;
    kept.reserve(v.size());
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 prev = v[(i + n - 1) % n];
      const Point2 next = v[(i + 1) % n];
      if (orient2d(prev, v[i], next) == 0) {
        changed = true;
        // Drop one vertex per pass so neighbours are re-evaluated.
        for (std::size_t k = i + 1; k < n; ++k) kept.push_back(v[k]);
        break;
      }
      kept.push_back(v[i]);
    }
    v = std::move(kept);
  }
  if (v.size() >= 3 && signed_area(poly) < 0.0) std::reverse(v.begin(), v.end());
  return poly;
}

double area(const PolygonWithHoles& part) {
  double a = std::abs(signed_area(part.outer));
  for (const Polygon& h : part.holes) a -= std::abs(signed_area(h));
  return a;
}

Point2 centroid(const PolygonWithHoles& part) {
  const double outer_area = std::abs(signed_area(part.outer));
  Point2 c = outer_area * centroid(part.outer);
  double total = outer_area;
  for (const Polygon& h : part.holes) {
    const double ha = std::abs(signed_area(h));
    c = c - ha * centroid(h);
    total -= ha;
  }
  if (total <= 0.0) return centroid(part.outer);
  return (1.0 / total) * c;
}

Containment classify(const PolygonWithHoles& part, Point2 p) {
  const Containment outer = classify(part.outer, p);
  if (outer != Containment::kInside) return outer;
  for (const Polygon& h : part.holes) {
    const Containment c = classify(h, p);
    if (c == Containment::kBoundary) return Containment::kBoundary;
    if (c == Containment::kInside) return Containment::kOutside;
  }
  return Containment::kInside;
}

double distance(const PolygonWithHoles& part, Point2 p) {
  if (classify(part, p) != Containment::kOutside) return 0.0;
  double best = ring_distance(part.outer, p);
  for (const Polygon& h : part.holes) best = std::min(best, ring_distance(h, p));
  return best;
}

double area(const Region& r) {
  double a = 0.0;
  for (const auto& part : r.parts) a += area(part);
  return a;
}

bool contains(const Region& r, Point2 p) {
  return std::any_of(r.parts.begin(), r.parts.end(), [&](const PolygonWithHoles& part) {
    return classify(part, p) != Containment::kOutside;
  });
}

double distance(const Region& r, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& part : r.parts) best = std::min(best, distance(part, p));
  return best;
}

Point2 closest_point(const Region& r, Point2 p) {
  if (contains(r, p)) return p;
  double best = std::numeric_limits<double>::infinity();
  Point2 out = p;
  const auto consider = [&](const Polygon& ring) {
    const Point2 c = ring_closest(ring, p);
    const double d = dist(c, p);
    if (d < best) {
      best = d;
      out = c;
    }
  };
  for (const auto& part : r.parts) {
    consider(part.outer);
    for (const Polygon& h : part.holes) consider(h);
  }
  return out;
}

const PolygonWithHoles& largest_part(const Region& r) {
  if (r.empty()) throw EmptyRegion();
  const PolygonWithHoles* best = &r.parts.front();
  double best_area = area(*best);
  Point2 best_centroid = centroid(*best);
  for (std::size_t i = 1; i < r.parts.size(); ++i) {
    const PolygonWithHoles& part = r.parts[i];
    const double a = area(part);
    if (a > best_area + kAreaEps) {
      best = &part;
      best_area = a;
      best_centroid = centroid(part);
    } else if (std::abs(a - best_area) <= kAreaEps) {
      const Point2 c = centroid(part);
      if (c.x < best_centroid.x || (c.x == best_centroid.x && c.y < best_centroid.y)) {
        best = &part;
        best_area = std::max(best_area, a);
        best_centroid = c;
      }
    }
  }
  return *best;
}

}  // namespace losnet
