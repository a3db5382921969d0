// Shared test fixtures: environment builders and random generators.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "losnet/geometry.hpp"
#include "losnet/state.hpp"

namespace losnet::testing {

inline Polygon rect(double x0, double y0, double x1, double y1) {
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

inline Polygon regular(Point2 c, double radius, int sides, double phase = 0.0) {
  Polygon p;
  for (int i = 0; i < sides; ++i) {
    const double a = phase + 2.0 * M_PI * i / sides;
    p.vertices.push_back({c.x + radius * std::cos(a), c.y + radius * std::sin(a)});
  }
  return p;
}

inline Environment unit_square_with_center_block() {
  return Environment(rect(0, 0, 1, 1), {rect(0.4, 0.4, 0.6, 0.6)});
}

/// Random environment: rectangular world, up to `max_obstacles` disjoint
/// convex obstacles (random regular polygons) kept clear of each other.
inline Environment random_environment(std::mt19937_64& rng, int max_obstacles = 5,
                                      double size = 10.0) {
  std::uniform_real_distribution<double> coord(0.15 * size, 0.85 * size);
  std::uniform_real_distribution<double> rad(0.04 * size, 0.12 * size);
  std::uniform_int_distribution<int> sides(3, 6);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  std::uniform_int_distribution<int> count(1, max_obstacles);
  const int want = count(rng);
  std::vector<std::pair<Point2, double>> discs;
  std::vector<Polygon> obstacles;
  for (int attempt = 0; attempt < 200 && static_cast<int>(obstacles.size()) < want; ++attempt) {
    const Point2 c{coord(rng), coord(rng)};
    const double r = rad(rng);
    bool clear = true;
    for (const auto& [oc, orad] : discs) {
      if (dist(c, oc) < r + orad + 0.02 * size) clear = false;
    }
    if (!clear) continue;
    discs.push_back({c, r});
    obstacles.push_back(regular(c, r, sides(rng), phase(rng)));
  }
  return Environment(rect(0, 0, size, size), std::move(obstacles));
}

inline Point2 random_free_point(const Environment& env, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(env.min_corner().x, env.max_corner().x);
  std::uniform_real_distribution<double> uy(env.min_corner().y, env.max_corner().y);
  for (;;) {
    const Point2 p{ux(rng), uy(rng)};
    if (env.strictly_inside(p)) return p;
  }
}

inline Region square_around(Point2 c, double half) {
  return Region::from(rect(c.x - half, c.y - half, c.x + half, c.y + half));
}

/// Random state whose relay is connected: each vehicle sees an earlier one.
inline SystemState random_linked_state(const Environment& env, std::mt19937_64& rng, std::size_t n, std::size_t m) {
  SystemState s;
  while (s.vehicles.size() < n) {
    const Point2 q = random_free_point(env, rng);
    bool linked = s.vehicles.empty();
    for (const auto& v : s.vehicles) linked = linked || los_visible(env, q, v.position());
    if (linked) s.vehicles.push_back({q.x, q.y, 0.0});
  }
  for (std::size_t j = 0; j < m; ++j) s.units.push_back(random_free_point(env, rng));
  return s;
}

}  // namespace losnet::testing
