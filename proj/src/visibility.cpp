// Visibility polygon by rotational sweep.
//
// Environment vertices sorted by direction around the viewpoint split the
// plane into open angular intervals. No vertex direction lies inside an
// interval, so the set of boundary edges crossing it is fixed and, as edges
// never cross each other, so is the nearest one. The sweep keeps those edges
// in a set ordered by distance from the viewpoint and emits the nearest
// edge's stretch for every interval.

#include <algorithm>
#include <cmath>
#include <set>

#include "losnet/geometry.hpp"

namespace losnet {
namespace {

struct SweepEdge {
  Point2 first;   // endpoint met first when rotating counterclockwise
  Point2 second;
  std::size_t begin = 0;  // direction index of `first`
  std::size_t end = 0;    // direction index of `second`
  std::size_t id = 0;
};

int half_plane(Point2 d) { return (d.y > 0.0 || (d.y == 0.0 && d.x > 0.0)) ? 0 : 1; }

// True when edge a occludes edge b for rays from p crossing both.
bool in_front(const SweepEdge& a, const SweepEdge& b, Point2 p) {
  const int b1 = orient2d(a.first, a.second, b.first);
  const int b2 = orient2d(a.first, a.second, b.second);
  if (b1 * b2 >= 0 && (b1 != 0 || b2 != 0)) {
    const int side = b1 != 0 ? b1 : b2;
    return side != orient2d(a.first, a.second, p);
  }
  const int a1 = orient2d(b.first, b.second, a.first);
  const int a2 = orient2d(b.first, b.second, a.second);
  const int side = a1 != 0 ? a1 : a2;
  if (side == 0) {
    // Collinear edges cannot both span an open interval; order deterministically.
    return a.id < b.id;
  }
  return side == orient2d(b.first, b.second, p);
}

struct Incidence {
  enum class Kind { kNone, kVertex, kEdge } kind = Kind::kNone;
  Point2 prev;
  Point2 at;
  Point2 next;
};

Incidence boundary_incidence(const Environment& env, Point2 p) {
  const auto& edges = env.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.b == p) {
      // The following edge in the same ring starts at p; rings are stored
      // contiguously, so search forward for it.
      for (const auto& f : edges) {
        if (f.a == p) return {Incidence::Kind::kVertex, e.a, p, f.b};
      }
    }
    if (e.a != p && e.b != p && on_segment(e.a, e.b, p)) {
      return {Incidence::Kind::kEdge, e.a, p, e.b};
    }
  }
  return {};
}

bool points_inward(const Incidence& inc, Point2 dir) {
  switch (inc.kind) {
    case Incidence::Kind::kNone:
      return true;
    case Incidence::Kind::kEdge:
      return cross(inc.next - inc.prev, dir) > 0.0;
    case Incidence::Kind::kVertex: {
      const bool left_in = cross(inc.at - inc.prev, dir) > 0.0;
      const bool left_out = cross(inc.next - inc.at, dir) > 0.0;
      const int turn = orient2d(inc.prev, inc.at, inc.next);
      if (turn > 0) return left_in && left_out;
      if (turn < 0) return left_in || left_out;
      return left_out;
    }
  }
  return true;
}

Point2 unit(Point2 d) {
  const double n = norm(d);
  return {d.x / n, d.y / n};
}

// A direction strictly inside the counterclockwise interval from u to v.
Point2 interior_direction(Point2 u, Point2 v) {
  u = unit(u);
  v = unit(v);
  const double c = cross(u, v);
  if (c > 0.0) return u + v;
  if (c < 0.0) return -1.0 * (u + v);
  if (dot(u, v) < 0.0) return Point2{-u.y, u.x};
  // Same direction: the interval is the full turn.
  return -1.0 * u;
}

Point2 ray_hit(Point2 p, Point2 through, const SweepEdge& e) {
  const Point2 d = through - p;
  const Point2 w = e.second - e.first;
  const double denom = cross(w, d);
  if (denom == 0.0) return dist(p, e.first) < dist(p, e.second) ? e.first : e.second;
  const double mu = std::clamp(cross(p - e.first, d) / denom, 0.0, 1.0);
  return e.first + mu * w;
}

}  // namespace

Polygon visibility_polygon(const Environment& env, Point2 p) {
  if (!env.contains(p)) throw PointOutsideFreeSpace(p);
  const auto& edges = env.edges();

  // Distinct vertices other than p, sorted counterclockwise by direction.
  std::vector<Point2> verts;
  verts.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.a != p) verts.push_back(e.a);
  }
  const auto before = [p](Point2 u, Point2 v) {
    const int hu = half_plane(u - p);
    const int hv = half_plane(v - p);
    if (hu != hv) return hu < hv;
    return orient2d(p, u, v) > 0;
  };
  std::sort(verts.begin(), verts.end(), [&](Point2 u, Point2 v) {
    if (before(u, v)) return true;
    if (before(v, u)) return false;
    return dist(p, u) < dist(p, v);
  });

  // Group collinear same-ray vertices into directions.
  std::vector<Point2> directions;
  std::vector<std::size_t> vertex_dir(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (directions.empty() || before(directions.back(), verts[i])) {
      directions.push_back(verts[i]);
    }
    vertex_dir[i] = directions.size() - 1;
  }
  const std::size_t k_dirs = directions.size();
  const auto direction_of = [&](Point2 v) {
    const auto it = std::lower_bound(verts.begin(), verts.end(), v, [&](Point2 a, Point2 b) {
      if (before(a, b)) return true;
      if (before(b, a)) return false;
      return dist(p, a) < dist(p, b);
    });
    return vertex_dir[static_cast<std::size_t>(it - verts.begin())];
  };

  std::vector<SweepEdge> sweep_edges;
  sweep_edges.reserve(edges.size());
  for (const auto& e : edges) {
    const int o = orient2d(p, e.a, e.b);
    if (o == 0) continue;  // radial edges subtend no angle
    SweepEdge se;
    se.first = o > 0 ? e.a : e.b;
    se.second = o > 0 ? e.b : e.a;
    se.begin = direction_of(se.first);
    se.end = direction_of(se.second);
    se.id = sweep_edges.size();
    sweep_edges.push_back(se);
  }

  const auto cmp = [&](std::size_t a, std::size_t b) {
    if (a == b) return false;
    return in_front(sweep_edges[a], sweep_edges[b], p);
  };
  std::set<std::size_t, decltype(cmp)> active(cmp);
  std::vector<std::set<std::size_t, decltype(cmp)>::iterator> handle(sweep_edges.size(),
                                                                     active.end());
  std::vector<std::vector<std::size_t>> starting(k_dirs);
  std::vector<std::vector<std::size_t>> ending(k_dirs);
  for (const SweepEdge& e : sweep_edges) {
    starting[e.begin].push_back(e.id);
    ending[e.end].push_back(e.id);
    const bool spans_first = e.begin <= e.end ? (e.begin == 0 && e.end > 0) : (e.end > 0);
    if (spans_first) handle[e.id] = active.insert(e.id).first;
  }

  const Incidence inc = boundary_incidence(env, p);
  std::vector<Point2> out;
  out.reserve(2 * k_dirs + 2);
  for (std::size_t k = 0; k < k_dirs; ++k) {
    if (k > 0) {
      for (std::size_t id : ending[k]) {
        if (handle[id] != active.end()) {
          active.erase(handle[id]);
          handle[id] = active.end();
        }
      }
      for (std::size_t id : starting[k]) handle[id] = active.insert(id).first;
    }
    const std::size_t next = (k + 1) % k_dirs;
    const Point2 mid = interior_direction(directions[k] - p, directions[next] - p);
    if (!points_inward(inc, mid) || active.empty()) {
      out.push_back(p);
      continue;
    }
    const SweepEdge& e = sweep_edges[*active.begin()];
    out.push_back(e.begin == k ? e.first : ray_hit(p, directions[k], e));
    out.push_back(e.end == next ? e.second : ray_hit(p, directions[next], e));
  }
  return cleaned(Polygon{std::move(out)});
}

}  // namespace losnet
