#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "losnet/motion.hpp"
#include "oracles.hpp"

using namespace losnet;
using namespace losnet::testing;

namespace {

bool path_in_free_space(const Environment& env, const Path& path) {
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    if (!env.contains(path.waypoints[i]) || !los_visible(env, path.waypoints[i], path.waypoints[i + 1])) return false;
  }
  return env.contains(path.waypoints.back());
}

double polyline_length(const Path& p) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < p.waypoints.size(); ++i) s += dist(p.waypoints[i], p.waypoints[i + 1]);
  return s;
}

}  // namespace

TEST_CASE("plan_path basics") {
  const Environment room(rect(0, 0, 10, 10), {});
  const Region goal = Region::from(rect(6, 6, 8, 8));

  const Path inside = plan_path(room, {7, 7}, goal);
  CHECK(inside.length == 0.0);
  CHECK(inside.waypoints.size() == 1);

  const Path straight = plan_path(room, {1, 1}, goal);
  CHECK(straight.waypoints.size() == 2);
  CHECK(straight.length == doctest::Approx(dist({1, 1}, {6, 6})).epsilon(1e-3));
  CHECK(contains(goal, straight.end()));
  CHECK(straight.length == doctest::Approx(polyline_length(straight)));

  // Enlarging the goal never increases the cost; the Euclidean gap is a lower bound.
  CHECK(motion_cost(room, {1, 1}, Region::from(rect(5, 5, 8, 8))) <= straight.length);
  CHECK(straight.length >= distance(goal, {1, 1}));
}

TEST_CASE("plan_path around a central wall matches the grid oracle") {
  const Environment env(rect(0, 0, 10, 10), {rect(4.5, 1, 5.5, 9)});
  const Region goal = square_around({8, 5}, 0.5);
  const Point2 start{2, 5};
  const Path path = plan_path(env, start, goal);
  CHECK(path_in_free_space(env, path));
  CHECK(contains(goal, path.end()));
  const double oracle = grid_geodesic(env, start, [&](Point2 c) { return contains(goal, c); });
  CHECK(std::abs(path.length - oracle) <= 0.02 * oracle);
  // Hand value: around the wall corner (4.5, 9)-(5.5, 9), into the square edge x = 7.5.
  const double hand = dist(start, {4.5, 9}) + 1.0 + dist({5.5, 9}, {7.5, 5.5});
  CHECK(path.length == doctest::Approx(hand).epsilon(1e-3));
}

TEST_CASE("plan_path agrees with the grid oracle on random environments") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const Environment env = random_environment(rng, 5);
    Point2 start, target;
    do {
      start = random_free_point(env, rng);
      target = random_free_point(env, rng);
    } while (dist(start, target) < 4.0);
    const Region goal = intersect(square_around(target, 0.3), env.free_space());
    const Path path = plan_path(env, start, goal);
    CHECK(path_in_free_space(env, path));
    const double oracle = grid_geodesic(env, start, [&](Point2 c) { return contains(goal, c); });
    CHECK(std::abs(path.length - oracle) <= 0.02 * oracle);
  }
}

TEST_CASE("point-to-point and region-to-region geodesics") {
  const Environment env(rect(0, 0, 10, 10), {rect(4, 2, 6, 8)});
  const Roadmap roadmap(env);
  const Path p = roadmap.to_point({1, 5}, {9, 5});
  CHECK(p.length == doctest::Approx(2.0 * dist({1, 5}, {4, 8}) + 2.0).epsilon(1e-12));
  CHECK(p.waypoints.front() == Point2{1, 5});
  CHECK(p.waypoints.back() == Point2{9, 5});

  const Region a = Region::from(rect(1, 4, 2, 6));
  const Region b = Region::from(rect(8, 4, 9, 6));
  const Path ab = roadmap.between(a, b);
  const Path ba = roadmap.between(b, a);
  CHECK(ab.length == doctest::Approx(ba.length).epsilon(1e-9));
  CHECK(ab.length == doctest::Approx(2.0 * dist({2, 6}, {4, 8}) + 2.0).epsilon(1e-3));
  CHECK(roadmap.between(a, Region::from(rect(1.5, 4, 3, 6))).length == 0.0);

  const std::vector<Region> regions{a, b, Region::from(rect(8, 0.5, 9, 1.5)), Region::from(rect(1, 8.5, 2, 9.5))};
  CHECK(region_cost_matrix(env, regions) == region_cost_matrix_serial(env, regions));
}

TEST_CASE("dubins curves") {
  const double rho = 1.0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5, 5);
  std::uniform_real_distribution<double> th(0, 2 * M_PI);
  for (int trial = 0; trial < 200; ++trial) {
    const VehiclePose a{u(rng), u(rng), th(rng)};
    const VehiclePose b{u(rng), u(rng), th(rng)};
    const auto c = dubins_shortest(a, b, rho);
    REQUIRE(c.has_value());
    const VehiclePose end = c->sample(c->length());
    CHECK(dist(end.position(), b.position()) < 1e-6);
    CHECK(std::abs(std::remainder(end.theta - b.theta, 2 * M_PI)) < 1e-6);
    // Never shorter than the free-heading bound when it applies.
    const double bound = dubins_to_point(a.position(), a.theta, b.position(), rho);
    if (std::isfinite(bound)) CHECK(c->length() >= bound - 1e-9);
  }
  // Straight ahead: LSL with empty arcs.
  const auto ahead = dubins_shortest({0, 0, 0}, {7, 0, 0}, rho);
  CHECK(ahead->length() == doctest::Approx(7.0));
}

TEST_CASE("plan_dubins") {
  const Environment open(rect(0, 0, 30, 30), {});
  const DubinsParams params{0.5, 0.6, 1.0};
  const double rho = params.turning_radius();
  const double kappa = 1.0 / rho;

  const auto curvature_ok = [&](const Path& p) {
    for (std::size_t i = 0; i + 1 < p.poses.size(); ++i) {
      const double ds = dist(p.poses[i].position(), p.poses[i + 1].position());
      const double dth = std::abs(std::remainder(p.poses[i + 1].theta - p.poses[i].theta, 2 * M_PI));
      if (ds > 0.0101) return false;  // sampled at 1 cm
      // Radius of the arc with this chord and turn: c / (2 sin(dθ/2)).
      if (dth > 1e-9 && ds / (2.0 * std::sin(dth / 2.0)) < (1.0 - 1e-6) / kappa) return false;
    }
    return true;
  };

  SUBCASE("goal ahead") {
    const Region goal = square_around({25, 5}, 0.5);
    const Path p = plan_dubins(open, {2, 5, 0}, goal, params, 1);
    CHECK(contains(goal, p.end()));
    CHECK(curvature_ok(p));
    CHECK(p.length <= 1.05 * distance(goal, {2, 5}));
    CHECK(p.length >= plan_path(open, {2, 5}, goal).length - 1e-9);
  }
  SUBCASE("goal behind") {
    const Region goal = square_around({10, 15}, 0.25);
    const VehiclePose start{15, 15, 0};
    const Path p = plan_dubins(open, start, goal, params, 2);
    CHECK(contains(goal, p.end()));
    CHECK(curvature_ok(p));
    double bound = std::numeric_limits<double>::infinity();
    for (const Point2& v : goal.parts[0].outer.vertices) {
      bound = std::min(bound, dubins_to_point(start.position(), start.theta, v, rho));
    }
    // The bound at the square's corners overestimates by at most its diagonal.
    CHECK(p.length >= bound - 0.75);
    CHECK(p.length >= plan_path(open, start.position(), goal).length);
  }
  SUBCASE("around obstacles, deterministic") {
    const Environment env(rect(0, 0, 20, 20), {rect(8, 2, 12, 18)});
    const Region goal = square_around({17, 10}, 1.0);
    const Path a = plan_dubins(env, {3, 10, M_PI / 2}, goal, params, 7);
    const Path b = plan_dubins(env, {3, 10, M_PI / 2}, goal, params, 7);
    CHECK(a == b);
    CHECK(contains(goal, a.end()));
    CHECK(curvature_ok(a));
    CHECK(path_in_free_space(env, a));
    CHECK(a.length >= plan_path(env, {3, 10}, goal).length);
  }
  SUBCASE("budget") {
    const Environment env(rect(0, 0, 20, 20), {rect(8, 0.5, 12, 19.5)});
    RrtConfig tiny;
    tiny.max_iterations = 3;
    CHECK_THROWS_AS(plan_dubins(env, {3, 10, 0}, square_around({17, 10}, 0.5), params, 1, tiny), BudgetExhausted);
  }
}

TEST_CASE("tour sequencing") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 10);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
    std::vector<double> w(n * n);
    std::vector<std::vector<double>> w2(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i * n + j] = w2[i][j] = dist(pts[i], pts[j]);
    const double exact = held_karp(w2);
    const auto order = tour_sequence(w, n);
    CHECK(order.size() == n);
    CHECK(order.front() == 0);
    CHECK(cycle_cost(w, n, order) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(cycle_cost(w, n, tour_sequence_heuristic(w, n)) <= 1.5 * exact + 1e-12);
  }
}

TEST_CASE("patrol tours") {
  const Environment room(rect(0, 0, 10, 10), {});
  const std::vector<Region> one{Region::from(rect(1, 1, 3, 3))};
  const Tour single = patrol_tour(room, one);
  CHECK(single.path.length == 0.0);
  CHECK(single.path.waypoints.size() == 1);

  const std::vector<Region> two{Region::from(rect(1, 1, 3, 3)), Region::from(rect(6, 1, 8, 3))};
  const Tour t = patrol_tour(room, two);
  CHECK(t.path.length == doctest::Approx(2.0 * 3.0).epsilon(0.02));
  CHECK(dist(t.path.waypoints.front(), t.path.waypoints.back()) < kSnapEps);
  REQUIRE(t.marks.size() == 2);
  CHECK(contains(two[1], t.path.at(t.marks[1])));

  const Environment walled(rect(0, 0, 10, 10), {rect(4, 2, 6, 8)});
  const std::vector<Region> three{Region::from(rect(1, 4, 2, 6)), Region::from(rect(8, 8.5, 9, 9.5)),
                                  Region::from(rect(8, 0.5, 9, 1.5))};
  const Tour t3 = patrol_tour(walled, three);
  CHECK(path_in_free_space(walled, t3.path));
  CHECK(dist(t3.path.waypoints.front(), t3.path.waypoints.back()) < kSnapEps);
  REQUIRE(t3.marks.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(contains(three[k], t3.path.at(t3.marks[k])));
}

TEST_CASE("mobility") {
  const Environment env(rect(0, 0, 20, 20), {rect(5, 5, 8, 15), rect(12, 3, 16, 6), regular({14, 14}, 2, 5)});
  const SystemState start{{{1, 1, 0}}, {{2, 2}, {18, 18}, {10, 10}, {3, 17}}};

  for (auto model : {MobilityConfig::Model::kRandomWaypoint, MobilityConfig::Model::kNomadic}) {
    MobilityConfig cfg;
    cfg.model = model;
    if (model == MobilityConfig::Model::kNomadic) cfg.groups = {0, 0, 1, 1};

    Mobility still(env, cfg, start.units, SeedStream(1));
    CHECK(still.step(start, 0.0) == start);

    MobilityConfig frozen = cfg;
    frozen.speed_min = frozen.speed_max = 0.0;
    Mobility zero(env, frozen, start.units, SeedStream(1));
    CHECK(zero.step(start, 1.0).units == start.units);

    Mobility a(env, cfg, start.units, SeedStream(9));
    Mobility b(env, cfg, start.units, SeedStream(9));
    SystemState sa = start, sb = start;
    bool all_free = true;
    bool moved = false;
    for (int step = 0; step < 10000; ++step) {
      sa = a.step(sa, 0.5);
      sb = b.step(sb, 0.5);
      for (const Point2& r : sa.units) all_free = all_free && env.contains(r);
      moved = moved || sa.units != start.units;
    }
    CHECK(all_free);
    CHECK(moved);
    CHECK(sa == sb);
    CHECK(sa.vehicles == start.vehicles);
  }
}
