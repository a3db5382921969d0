#include <algorithm>
#include <cmath>

#include "losnet/geometry.hpp"

namespace losnet {

namespace {

Polygon reversed(Polygon p) {
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

bool rings_touch(const Polygon& a, const Polygon& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

Environment::Environment(Polygon world, std::vector<Polygon> obstacles)
    : world_(std::move(world)), obstacles_(std::move(obstacles)) {
  if (auto defect = polygon_defect(world_)) throw InvalidEnvironment("world: " + *defect);
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    const Polygon& o = obstacles_[i];
    const std::string name = "obstacle " + std::to_string(i);
    if (auto defect = polygon_defect(o)) throw InvalidEnvironment(name + ": " + *defect);
    for (const Point2& v : o.vertices) {
      if (classify(world_, v) != Containment::kInside) {
        throw InvalidEnvironment(name + " is not strictly inside the world");
      }
    }
    if (rings_touch(o, world_)) throw InvalidEnvironment(name + " touches the world boundary");
    for (std::size_t j = 0; j < i; ++j) {
      const Polygon& other = obstacles_[j];
      if (rings_touch(o, other) || classify(other, o[0]) != Containment::kOutside ||
          classify(o, other[0]) != Containment::kOutside) {
        throw InvalidEnvironment(name + " overlaps obstacle " + std::to_string(j));
      }
    }
  }

  const auto add_ring = [&](const Polygon& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      edges_.push_back({ring[i], ring[(i + 1) % ring.size()]});
    }
  };
  add_ring(world_);
  for (const Polygon& o : obstacles_) add_ring(reversed(o));

  // A free-space vertex is reflex when the free side turns right there.
  const auto collect_reflex = [&](const Polygon& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (orient2d(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) < 0) {
        reflex_.push_back(ring[i]);
      }
    }
  };
  collect_reflex(world_);
  for (const Polygon& o : obstacles_) collect_reflex(reversed(o));

  lo_ = hi_ = world_[0];
  for (const Point2& v : world_.vertices) {
    lo_ = {std::min(lo_.x, v.x), std::min(lo_.y, v.y)};
    hi_ = {std::max(hi_.x, v.x), std::max(hi_.y, v.y)};
  }
}

bool Environment::contains(Point2 p) const {
  if (!is_finite(p)) return false;
  if (p.x < lo_.x || p.x > hi_.x || p.y < lo_.y || p.y > hi_.y) return false;
  if (classify(world_, p) == Containment::kOutside) return false;
  return std::none_of(obstacles_.begin(), obstacles_.end(), [&](const Polygon& o) {
    return classify(o, p) == Containment::kInside;
  });
}

bool Environment::strictly_inside(Point2 p) const {
  if (!is_finite(p)) return false;
  if (classify(world_, p) != Containment::kInside) return false;
  return std::all_of(obstacles_.begin(), obstacles_.end(), [&](const Polygon& o) {
    return classify(o, p) == Containment::kOutside;
  });
}

Region Environment::free_space() const {
  PolygonWithHoles part{world_, obstacles_};
  return Region::from(part);
}

bool los_visible(const Environment& env, Point2 a, Point2 b) {
  if (!env.contains(a)) throw PointOutsideFreeSpace(a);
  if (!env.contains(b)) throw PointOutsideFreeSpace(b);
  if (a == b) return true;

  const auto& edges = env.edges();
  for (const auto& e : edges) {
    if (segments_cross(a, b, e.a, e.b)) return false;
  }

  // No proper crossings remain, so the segment can only meet the boundary at
  // vertices (or a and b themselves). Between consecutive contact points it is
  // wholly interior, wholly exterior, or runs along a boundary edge.
  std::vector<Point2> contacts{a, b};
  for (const auto& e : edges) {
    if (e.a != a && e.a != b && on_segment(a, b, e.a)) contacts.push_back(e.a);
  }
  if (contacts.size() == 2) {
    // Only a and b touch the boundary; the open segment is free or not as a whole.
    const Point2 mid = 0.5 * (a + b);
    bool along_edge = false;
    for (const auto& e : edges) {
      if (on_segment(e.a, e.b, a) && on_segment(e.a, e.b, b)) {
        along_edge = true;
        break;
      }
    }
    return along_edge || env.contains(mid);
  }

  const Point2 ab = b - a;
  std::sort(contacts.begin(), contacts.end(),
            [&](Point2 p, Point2 q) { return dot(p - a, ab) < dot(q - a, ab); });
  for (std::size_t i = 0; i + 1 < contacts.size(); ++i) {
    const Point2 s = contacts[i];
    const Point2 t = contacts[i + 1];
    if (s == t) continue;
    bool along_edge = false;
    for (const auto& e : edges) {
      if (on_segment(e.a, e.b, s) && on_segment(e.a, e.b, t)) {
        along_edge = true;
        break;
      }
    }
    if (!along_edge && !env.contains(0.5 * (s + t))) return false;
  }
  return true;
}

}  // namespace losnet
