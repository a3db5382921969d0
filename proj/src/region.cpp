#include <algorithm>
#include <cmath>
#include <queue>

#include "clipper/clipper.hpp"
#include "losnet/geometry.hpp"

namespace losnet {
namespace {

namespace cl = ClipperLib;

// Booleans run on an integer grid whose spacing is the welding tolerance.
constexpr double kScale = 1.0 / kSnapEps;

cl::IntPoint to_int(Point2 p) {
  return cl::IntPoint(static_cast<cl::cInt>(std::llround(p.x * kScale)),
                      static_cast<cl::cInt>(std::llround(p.y * kScale)));
}

cl::Path to_path(const Polygon& ring, bool clockwise) {
  cl::Path path;
  path.reserve(ring.size());
  for (const Point2& v : ring.vertices) path.push_back(to_int(v));
  if (cl::Orientation(path) == clockwise) std::reverse(path.begin(), path.end());
  return path;
}

cl::Paths to_paths(const Region& r) {
  cl::Paths out;
  for (const auto& part : r.parts) {
    out.push_back(to_path(part.outer, false));
    for (const Polygon& h : part.holes) out.push_back(to_path(h, true));
  }
  return out;
}

Polygon from_path(const cl::Path& path) {
  Polygon poly;
  poly.vertices.reserve(path.size());
  for (const cl::IntPoint& q : path) {
    poly.vertices.push_back({static_cast<double>(q.X) / kScale, static_cast<double>(q.Y) / kScale});
  }
  return cleaned(std::move(poly));
}

void collect_parts(const cl::PolyNode& outer, Region& out) {
  PolygonWithHoles part;
  part.outer = from_path(outer.Contour);
  for (const cl::PolyNode* hole : outer.Childs) {
    Polygon h = from_path(hole->Contour);
    if (h.size() >= 3 && std::abs(signed_area(h)) >= kAreaEps) part.holes.push_back(std::move(h));
    for (const cl::PolyNode* island : hole->Childs) collect_parts(*island, out);
  }
  if (part.outer.size() >= 3 && area(part) >= kAreaEps) out.parts.push_back(std::move(part));
}

Region from_tree(const cl::PolyTree& tree) {
  Region out;
  for (const cl::PolyNode* node : tree.Childs) collect_parts(*node, out);
  // Canonical part order: by centroid, so equal sets print identically.
  std::sort(out.parts.begin(), out.parts.end(),
            [](const PolygonWithHoles& a, const PolygonWithHoles& b) {
              const Point2 ca = centroid(a);
              const Point2 cb = centroid(b);
              return ca.x != cb.x ? ca.x < cb.x : ca.y < cb.y;
            });
  return out;
}

Region execute(cl::ClipType type, const cl::Paths& subject, const cl::Paths& clip) {
  cl::Clipper clipper;
  clipper.StrictlySimple(true);
  clipper.AddPaths(subject, cl::ptSubject, true);
  if (!clip.empty()) clipper.AddPaths(clip, cl::ptClip, true);
  cl::PolyTree tree;
  clipper.Execute(type, tree, cl::pftNonZero, cl::pftNonZero);
  return from_tree(tree);
}

double signed_boundary_distance(const PolygonWithHoles& part, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  const auto scan = [&](const Polygon& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      best = std::min(best, point_segment_distance(p, ring[i], ring[(i + 1) % ring.size()]));
    }
  };
  scan(part.outer);
  for (const Polygon& h : part.holes) scan(h);
  return classify(part, p) == Containment::kInside ? best : -best;
}

}  // namespace

Region region_boolean(BooleanOp op, const Region& a, const Region& b) {
  switch (op) {
    case BooleanOp::kIntersect:
      if (a.empty() || b.empty()) return {};
      return execute(cl::ctIntersection, to_paths(a), to_paths(b));
    case BooleanOp::kUnion:
      return execute(cl::ctUnion, to_paths(a), to_paths(b));
    case BooleanOp::kDifference:
      if (a.empty()) return {};
      return execute(cl::ctDifference, to_paths(a), to_paths(b));
  }
  return {};
}

Region unite_all(std::span<const Region> regions) {
  cl::Paths all;
  for (const Region& r : regions) {
    const cl::Paths p = to_paths(r);
    all.insert(all.end(), p.begin(), p.end());
  }
  if (all.empty()) return {};
  return execute(cl::ctUnion, all, {});
}

Region intersect_all(std::span<const Region> regions) {
  if (regions.empty()) return {};
  Region acc = regions.front();
  for (std::size_t i = 1; i < regions.size() && !acc.empty(); ++i) acc = intersect(acc, regions[i]);
  return acc;
}

Region inset(const Region& r, double margin) {
  if (r.empty() || margin <= 0.0) return r;
  cl::ClipperOffset offset;
  offset.AddPaths(to_paths(r), cl::jtMiter, cl::etClosedPolygon);
  cl::PolyTree tree;
  offset.Execute(tree, -margin * kScale);
  return from_tree(tree);
}

Point2 pole_of_inaccessibility(const PolygonWithHoles& part, double precision) {
  Point2 lo = part.outer[0];
  Point2 hi = part.outer[0];
  for (const Point2& v : part.outer.vertices) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  const double width = hi.x - lo.x;
  const double height = hi.y - lo.y;
  const double cell = std::min(width, height);
  if (cell <= 0.0) return lo;

  struct Cell {
    Point2 c;
    double h;
    double d;
    double max;
  };
  const auto make = [&](Point2 c, double h) {
    const double d = signed_boundary_distance(part, c);
    return Cell{c, h, d, d + h * std::sqrt(2.0)};
  };
  const auto worse = [](const Cell& a, const Cell& b) {
    if (a.max != b.max) return a.max < b.max;
    if (a.c.x != b.c.x) return a.c.x > b.c.x;
    return a.c.y > b.c.y;
  };
  std::priority_queue<Cell, std::vector<Cell>, decltype(worse)> queue(worse);

  const double h0 = cell / 2.0;
  for (double x = lo.x; x < hi.x; x += cell) {
    for (double y = lo.y; y < hi.y; y += cell) queue.push(make({x + h0, y + h0}, h0));
  }
  Cell best = make(centroid(part), 0.0);
  const Cell box_center = make({lo.x + width / 2.0, lo.y + height / 2.0}, 0.0);
  if (box_center.d > best.d) best = box_center;

  while (!queue.empty()) {
    const Cell c = queue.top();
    queue.pop();
    if (c.d > best.d) best = c;
    if (c.max - best.d <= precision) continue;
    const double h = c.h / 2.0;
    queue.push(make({c.c.x - h, c.c.y - h}, h));
    queue.push(make({c.c.x + h, c.c.y - h}, h));
    queue.push(make({c.c.x - h, c.c.y + h}, h));
    queue.push(make({c.c.x + h, c.c.y + h}, h));
  }
  return best.c;
}

}  // namespace losnet
