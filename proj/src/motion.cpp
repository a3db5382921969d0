// Exact shortest paths among polygonal obstacles.
//
// A shortest path bends only at reflex vertices of the free space, so a
// Dijkstra search over the reflex-vertex visibility graph finds it once the
// first and last legs are known. For a region goal the last leg runs from a
// vertex (or the start) to the nearest point of the region it can see
// directly; that point is the foot of a perpendicular or a region vertex,
// and a last leg whose nearest foot is hidden instead grazes another reflex
// vertex, which the search reaches as a separate node.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "losnet/motion.hpp"

namespace losnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Reach {
  double distance = kInf;
  Point2 at;
  Point2 from;
};

template <typename Fn>
void for_each_ring(const Region& r, Fn&& fn) {
  for (const auto& part : r.parts) {
    fn(part.outer);
    for (const Polygon& h : part.holes) fn(h);
  }
}

Region entry_region(const Region& goal) {
  Region inner = inset(goal, kGoalInset);
  return inner.empty() ? goal : inner;
}

Point2 interior_point(const Region& r) { return pole_of_inaccessibility(largest_part(r)); }

// Nearest point of `r` visible from p, or nothing if none of the candidate
// feet is visible.
Reach nearest_visible(const Environment& env, const Region& r, Point2 p) {
  if (contains(r, p)) return {0.0, p, p};
  std::vector<std::pair<double, Point2>> feet;
  for_each_ring(r, [&](const Polygon& ring) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point2 c = closest_point_on_segment(p, ring[i], ring[(i + 1) % ring.size()]);
      feet.push_back({dist(p, c), c});
    }
  });
  std::sort(feet.begin(), feet.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second.x != b.second.x ? a.second.x < b.second.x : a.second.y < b.second.y;
  });
  for (const auto& [d, c] : feet) {
    if (env.contains(c) && los_visible(env, p, c)) return {d, c, p};
  }
  return {};
}

// Shortest straight segment from region a to region b lying in free space.
Reach nearest_visible_pair(const Environment& env, const Region& a, const Region& b) {
  struct Candidate {
    double d;
    Point2 from;
    Point2 to;
  };
  std::vector<Candidate> cands;
  const auto vertex_to_edges = [&](const Region& verts, const Region& edges, bool forward) {
    for_each_ring(verts, [&](const Polygon& vr) {
      for (const Point2& v : vr.vertices) {
        for_each_ring(edges, [&](const Polygon& er) {
          for (std::size_t i = 0; i < er.size(); ++i) {
            const Point2 c = closest_point_on_segment(v, er[i], er[(i + 1) % er.size()]);
            if (forward) {
              cands.push_back({dist(v, c), v, c});
            } else {
              cands.push_back({dist(v, c), c, v});
            }
          }
        });
      }
    });
  };
  vertex_to_edges(a, b, true);
  vertex_to_edges(b, a, false);
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.from.x != y.from.x) return x.from.x < y.from.x;
    if (x.from.y != y.from.y) return x.from.y < y.from.y;
    return x.to.x != y.to.x ? x.to.x < y.to.x : x.to.y < y.to.y;
  });
  for (const Candidate& c : cands) {
    if (env.contains(c.from) && env.contains(c.to) && los_visible(env, c.from, c.to)) {
      return {c.d, c.to, c.from};
    }
  }
  return {};
}

}  // namespace

Point2 Path::at(double s) const {
  if (waypoints.empty()) return {};
  if (s <= 0.0) return waypoints.front();
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const double seg = dist(waypoints[i], waypoints[i + 1]);
    if (s <= seg && seg > 0.0) return waypoints[i] + (s / seg) * (waypoints[i + 1] - waypoints[i]);
    s -= seg;
  }
  return waypoints.back();
}

struct Roadmap::Target {
  const Region* region = nullptr;  // entry region, or
  Point2 point;                    // a single goal point
  Reach reach(const Environment& env, Point2 p) const {
    if (region) return nearest_visible(env, *region, p);
    if (los_visible(env, p, point)) return {dist(p, point), point, p};
    return {};
  }
};

Roadmap::Roadmap(const Environment& env) : env_(&env), nodes_(env.reflex_vertices()) {
  const std::size_t k = nodes_.size();
  adjacency_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (los_visible(env, nodes_[i], nodes_[j])) {
        const double d = dist(nodes_[i], nodes_[j]);
        adjacency_[i].push_back({j, d});
        adjacency_[j].push_back({i, d});
      }
    }
  }
}

Path Roadmap::search(std::span<const Point2> sources, const Region* source_region,
                     const Target& target) const {
  const std::size_t k = nodes_.size();
  // Direct leg from the source to the target.
  Reach direct;
  if (source_region) {
    direct = target.region ? nearest_visible_pair(*env_, *source_region, *target.region)
                           : nearest_visible(*env_, *source_region, target.point);
    if (!target.region) std::swap(direct.at, direct.from);
  } else {
    direct = target.reach(*env_, sources.front());
  }

  // First legs into the roadmap.
  std::vector<double> d(k, kInf);
  std::vector<std::size_t> prev(k, k);
  std::vector<Point2> origin(k);
  for (std::size_t v = 0; v < k; ++v) {
    if (source_region) {
      const Reach r = nearest_visible(*env_, *source_region, nodes_[v]);
      d[v] = r.distance;
      origin[v] = r.at;
    } else if (los_visible(*env_, sources.front(), nodes_[v])) {
      d[v] = dist(sources.front(), nodes_[v]);
      origin[v] = sources.front();
    }
  }
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (std::size_t v = 0; v < k; ++v) {
    if (d[v] < kInf) pq.push({d[v], v});
  }
  std::vector<bool> settled(k, false);
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (settled[u]) continue;
    settled[u] = true;
    for (const auto& [v, w] : adjacency_[u]) {
      if (du + w < d[v]) {
        d[v] = du + w;
        prev[v] = u;
        origin[v] = origin[u];
        pq.push({d[v], v});
      }
    }
  }

  double best = direct.distance;
  std::size_t best_node = k;
  Reach best_leg = direct;
  for (std::size_t v = 0; v < k; ++v) {
    if (d[v] == kInf || d[v] >= best) continue;
    const Reach leg = target.reach(*env_, nodes_[v]);
    if (d[v] + leg.distance < best) {
      best = d[v] + leg.distance;
      best_node = v;
      best_leg = leg;
    }
  }
  if (best == kInf) throw NoPath();

  Path path;
  if (best_node == k) {
    path.waypoints = {best_leg.from, best_leg.at};
  } else {
    std::vector<Point2> chain;
    for (std::size_t v = best_node; v != k; v = prev[v]) chain.push_back(nodes_[v]);
    chain.push_back(origin[best_node]);
    std::reverse(chain.begin(), chain.end());
    chain.push_back(best_leg.at);
    path.waypoints = std::move(chain);
  }
  // Drop zero-length hops (start on a vertex, goal already reached).
  path.waypoints.erase(std::unique(path.waypoints.begin(), path.waypoints.end()), path.waypoints.end());
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    path.length += dist(path.waypoints[i], path.waypoints[i + 1]);
  }
  return path;
}

Path Roadmap::to_region(Point2 start, const Region& goal) const {
  if (!env_->contains(start)) throw PointOutsideFreeSpace(start);
  if (goal.empty()) throw EmptyRegion();
  if (contains(goal, start)) return Path{{start}, {}, 0.0};
  const Region entry = entry_region(goal);
  Target target;
  target.region = &entry;
  const Point2 sources[] = {start};
  return search(sources, nullptr, target);
}

Path Roadmap::to_point(Point2 start, Point2 goal) const {
  if (!env_->contains(start)) throw PointOutsideFreeSpace(start);
  if (!env_->contains(goal)) throw PointOutsideFreeSpace(goal);
  if (start == goal) return Path{{start}, {}, 0.0};
  Target target;
  target.point = goal;
  const Point2 sources[] = {start};
  return search(sources, nullptr, target);
}

Path Roadmap::between(const Region& from, const Region& to) const {
  if (from.empty() || to.empty()) throw EmptyRegion();
  const Region overlap = intersect(from, to);
  if (!overlap.empty()) {
    const Point2 p = interior_point(overlap);
    return Path{{p}, {}, 0.0};
  }
  const Region a = entry_region(from);
  const Region b = entry_region(to);
  Target target;
  target.region = &b;
  return search({}, &a, target);
}

Path plan_path(const Environment& env, Point2 start, const Region& goal) {
  return Roadmap(env).to_region(start, goal);
}

double motion_cost(const Environment& env, Point2 start, const Region& goal) {
  return plan_path(env, start, goal).length;
}

std::vector<double> region_cost_matrix(const Environment& env, std::span<const Region> regions) {
  const Roadmap roadmap(env);
  const std::size_t n = regions.size();
  std::vector<double> out(n * n, 0.0);
  const auto pairs = static_cast<std::ptrdiff_t>(n * n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < pairs; ++k) {
    const std::size_t i = static_cast<std::size_t>(k) / n;
    const std::size_t j = static_cast<std::size_t>(k) % n;
    if (i < j) {
      const double d = roadmap.between(regions[i], regions[j]).length;
      out[i * n + j] = d;
      out[j * n + i] = d;
    }
  }
  return out;
}

std::vector<double> region_cost_matrix_serial(const Environment& env, std::span<const Region> regions) {
  const Roadmap roadmap(env);
  const std::size_t n = regions.size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = roadmap.between(regions[i], regions[j]).length;
      out[i * n + j] = d;
      out[j * n + i] = d;
    }
  }
  return out;
}

// ---- Tours ------------------------------------------------------------------

Tour patrol_tour(const Environment& env, std::span<const Region> ordered_faces) {
  if (ordered_faces.empty()) throw EmptyRegion();
  const Roadmap roadmap(env);
  Point2 anchor = interior_point(ordered_faces.front());
  Tour tour;
  if (ordered_faces.size() == 1) {
    tour.path.waypoints = {anchor};
    tour.marks = {0.0};
    return tour;
  }

  // Re-anchor at the entry point of the closing leg until the loop settles,
  // so the start sits where the tour naturally re-enters the first face.
  for (int round = 0; round < 50; ++round) {
    Point2 at = anchor;
    for (std::size_t k = 1; k < ordered_faces.size(); ++k) at = roadmap.to_region(at, ordered_faces[k]).end();
    const Point2 entry = roadmap.to_region(at, ordered_faces.front()).end();
    if (dist(entry, anchor) < 1e-9) break;
    anchor = entry;
  }

  Path& path = tour.path;
  path.waypoints = {anchor};
  tour.marks = {0.0};
  const auto append = [&](const Path& leg) {
    path.waypoints.insert(path.waypoints.end(), leg.waypoints.begin() + 1, leg.waypoints.end());
    path.length += leg.length;
  };
  for (std::size_t k = 1; k < ordered_faces.size(); ++k) {
    const Path leg = roadmap.to_region(path.end(), ordered_faces[k]);
    append(leg);
    tour.marks.push_back(path.length);
  }
  append(roadmap.to_point(path.end(), anchor));
  return tour;
}

double cycle_cost(std::span<const double> w, std::size_t n, std::span<const std::size_t> order) {
  double c = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) c += w[order[i] * n + order[(i + 1) % order.size()]];
  return c;
}

std::vector<std::size_t> tour_sequence_heuristic(std::span<const double> w, std::size_t n) {
  std::vector<std::size_t> order{0};
  std::vector<bool> used(n, false);
  used[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    const std::size_t last = order.back();
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!used[v] && (pick == n || w[last * n + v] < w[last * n + pick])) pick = v;
    }
    used[pick] = true;
    order.push_back(pick);
  }
  // 2-opt: reverse order[i..j] while it shortens the cycle.
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<std::size_t> candidate = order;
        std::reverse(candidate.begin() + static_cast<std::ptrdiff_t>(i),
                     candidate.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        if (cycle_cost(w, n, candidate) < cycle_cost(w, n, order) - 1e-12) {
          order = std::move(candidate);
          improved = true;
        }
      }
    }
  }
  return order;
}

std::vector<std::size_t> tour_sequence(std::span<const double> w, std::size_t n) {
  if (n <= 3) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    if (n == 3 && cycle_cost(w, n, std::vector<std::size_t>{0, 2, 1}) < cycle_cost(w, n, order)) {
      order = {0, 2, 1};
    }
    return order;
  }
  if (n > 12) return tour_sequence_heuristic(w, n);

  const std::size_t full = std::size_t{1} << n;
  std::vector<double> dp(full * n, kInf);
  std::vector<std::size_t> parent(full * n, n);
  dp[1 * n + 0] = 0.0;
  for (std::size_t mask = 1; mask < full; mask += 2) {
    for (std::size_t last = 0; last < n; ++last) {
      const double cur = dp[mask * n + last];
      if (cur == kInf) continue;
      for (std::size_t next = 1; next < n; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        const std::size_t m2 = mask | (std::size_t{1} << next);
        const double cand = cur + w[last * n + next];
        if (cand < dp[m2 * n + next]) {
          dp[m2 * n + next] = cand;
          parent[m2 * n + next] = last;
        }
      }
    }
  }
  double best = kInf;
  std::size_t last = 1;
  for (std::size_t v = 1; v < n; ++v) {
    const double c = dp[(full - 1) * n + v] + w[v * n + 0];
    if (c < best) {
      best = c;
      last = v;
    }
  }
  std::vector<std::size_t> order;
  std::size_t mask = full - 1;
  while (last != n && last != 0) {
    order.push_back(last);
    const std::size_t p = parent[mask * n + last];
    mask &= ~(std::size_t{1} << last);
    last = p;
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace losnet
