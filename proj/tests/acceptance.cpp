// Acceptance suite: one PASS/FAIL line per criterion, each checked against
// oracles that do not call the code under test. Exit status is non-zero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "layouts.hpp"
#include "losnet/harness.hpp"
#include "oracles.hpp"

using namespace losnet;
using namespace losnet::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::vector<bool>> adjacency(const VisGraph& g, std::size_t skip = static_cast<std::size_t>(-1)) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.nodes; ++i) {
    if (i != skip) keep.push_back(i);
  }
  std::vector<std::vector<bool>> adj(keep.size(), std::vector<bool>(keep.size(), false));
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b) adj[a][b] = g.edge(keep[a], keep[b]);
  return adj;
}

// ---------------------------------------------------------------------------

Outcome lambda2_spot_checks() {
  Outcome o;
  const auto t0 = Clock::now();
  const Layout a = pair_relay_layout();
  const CheckResult ca = communication_check(a.state, a.env);
  const Layout d = path_relay_layout();
  const CheckResult cd = communication_check(d.state, d.env);
  const double elapsed = seconds_since(t0);
  o.require(std::abs(ca.lambda2_relay - 2.0) <= 1e-9, "K2 relay lambda2 != 2");
  o.require(std::abs(ca.lambda2_union - 3.0) <= 1e-9, "3-node union lambda2 != 3");
  o.require(std::abs(cd.lambda2_relay - 1.0) <= 1e-9, "P3 relay lambda2 != 1");
  o.require(elapsed < 1.0, "runtime >= 1 s");
  o.detail << "K2: " << ca.lambda2_relay << ", union: " << ca.lambda2_union << ", P3: " << cd.lambda2_relay << ", "
           << elapsed * 1e3 << " ms";
  return o;
}

Outcome validation_staging() {
  Outcome o;
  const Layout b = hidden_unit_layout();
  const CheckResult cb = communication_check(b.state, b.env);
  o.require(cb.verdict == Verdict::kInvalidUnion, "union-stage scenario verdict");
  o.require(cb.lambda2_relay > kConnectedThreshold, "union-stage relay lambda2 not positive");
  o.require(std::abs(cb.lambda2_union) <= 1e-9, "union-stage union lambda2 != 0");
  const Layout c = split_relay_layout();
  const CheckResult cc = communication_check(c.state, c.env);
  o.require(cc.verdict == Verdict::kInvalidRelay, "relay-stage scenario verdict");
  o.require(std::abs(cc.lambda2_relay) <= 1e-9, "relay-stage relay lambda2 != 0");
  o.detail << to_string(cb.verdict) << " (" << cb.lambda2_relay << ", " << cb.lambda2_union << "), "
           << to_string(cc.verdict) << " (" << cc.lambda2_relay << ")";
  return o;
}

Outcome lambda2_vs_bfs() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int disagreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    const double p = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
    VisGraph g(n, n);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (std::bernoulli_distribution(p)(rng)) {
          g.connect(i, j);
          adj[i][j] = adj[j][i] = true;
        }
      }
    }
    if (is_connected(algebraic_connectivity(laplacian(g))) != bfs_connected(adj)) ++disagreements;
  }
  o.require(disagreements == 0, "lambda2 and BFS disagree");
  o.detail << "1000 graphs, " << disagreements << " disagreements";
  return o;
}

Outcome centralized_vs_distributed() {
  Outcome o;
  std::mt19937_64 rng(4048);
  std::size_t checks = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Environment env = random_environment(rng, 5);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    SystemState s;
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 q = random_free_point(env, rng);
      s.vehicles.push_back({q.x, q.y, 0.0});
    }
    for (std::size_t j = 0; j < m; ++j) s.units.push_back(random_free_point(env, rng));
    const CheckResult c = communication_check(s, env);
    // Reference verdict from sight lines and BFS alone.
    std::vector<std::vector<bool>> relay(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) relay[i][j] = i != j && sampled_los(env, s.vehicles[i].position(), s.vehicles[j].position(), 2e-3);
    bool served = true;
    for (Point2 u : s.units) {
      served = served && std::any_of(s.vehicles.begin(), s.vehicles.end(),
                                     [&](const VehiclePose& v) { return sampled_los(env, v.position(), u, 2e-3); });
    }
    const bool reference = bfs_connected(relay) && served;
    o.require((c.verdict == Verdict::kValid) == reference, "centralized verdict disagrees with the sight-line reference");
    for (std::size_t v = 0; v < n; ++v) {
      const DistributedResult d = distributed_check(s, env, v);
      ++checks;
      o.require((c.verdict == Verdict::kValid) == d.valid, "distributed verdict differs");
      o.require(d.trace.messages.size() <= 2 * c.relay.edge_count(), "message count above 2|E_A|");
      if (c.relay.edge_count() > 0) {
        worst_ratio = std::max(worst_ratio, static_cast<double>(d.trace.messages.size()) / (2.0 * c.relay.edge_count()));
      }
    }
  }
  o.detail << "100 scenarios, " << checks << " initiator checks, max messages / 2|E_A| = " << worst_ratio;
  return o;
}

Outcome visibility_fidelity() {
  Outcome o;
  std::mt19937_64 rng(5);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int e = 0; e < 20; ++e) {
    const Environment env = random_environment(rng);
    const Point2 p = random_free_point(env, rng);
    const double exact = area(visibility_region(env, p));
    const double grid = grid_visible_area(env, p, 500);
    const double rel = std::abs(exact - grid) / grid;
    worst = std::max(worst, rel);
    o.require(rel <= 0.01, "visible area off by more than 1%");
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 30.0, "runtime >= 30 s");
  o.detail << "20 environments, worst relative error " << worst * 100 << "%, " << elapsed << " s";
  return o;
}

Outcome recovery_soundness() {
  Outcome o;
  std::mt19937_64 rng(606);
  int recovered = 0;
  int attempts = 0;
  while (recovered < 200 && attempts < 10000) {
    ++attempts;
    const Environment env = random_environment(rng, 5);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const SystemState s = random_linked_state(env, rng, n, m);
    if (communication_check(s, env).verdict != Verdict::kInvalidUnion) continue;
    const RecoveryResult r = single_move_recover(env, s);
    if (r.status != RecoveryResult::Status::kRecovered) continue;
    ++recovered;
    o.require(communication_check(r.final_state, env).verdict == Verdict::kValid, "post-state invalid");
    SystemState replay = s;
    for (const RelocationPlan& move : r.moves) {
      const CheckResult now = communication_check(replay, env);
      o.require(bfs_connected(adjacency(now.relay, move.vehicle)), "residual relay disconnected");
      std::vector<std::size_t> hard;
      for (std::size_t u = 0; u < replay.units.size(); ++u) {
        std::size_t seen_by = 0;
        bool by_mover = false;
        for (std::size_t v = 0; v < replay.vehicles.size(); ++v) {
          if (sampled_los(env, replay.vehicles[v].position(), replay.units[u], 2e-3)) {
            ++seen_by;
            by_mover = by_mover || v == move.vehicle;
          }
        }
        if (seen_by == 1 && by_mover) hard.push_back(u);
      }
      for (std::size_t u : hard) o.require(los_visible(env, move.standing, replay.units[u]), "hard unit lost");
      replay.vehicles[move.vehicle].x = move.standing.x;
      replay.vehicles[move.vehicle].y = move.standing.y;
    }
  }
  o.require(recovered == 200, "fewer than 200 recoverable scenarios generated");
  const Layout d = unrecoverable_layout();
  const RecoveryResult fail = single_move_recover(d.env, d.state);
  o.require(fail.status == RecoveryResult::Status::kFailure, "non-recoverable layout did not fail");
  o.detail << recovered << " recoveries checked; non-recoverable layout: "
           << (fail.status == RecoveryResult::Status::kFailure ? "Failure" : "not Failure");
  return o;
}

Outcome cover_quality() {
  Outcome o;
  std::mt19937_64 rng(77);
  int instances = 0;
  double worst = 0.0;
  while (instances < 30) {
    const Environment env = random_environment(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    std::vector<Point2> units;
    for (std::size_t k = 0; k < m; ++k) units.push_back(random_free_point(env, rng));
    const std::vector<LabeledFace> faces = labeled_faces(env, units, {});
    if (faces.size() > 12) continue;
    ++instances;
    std::vector<unsigned> sets;
    for (const LabeledFace& f : faces) {
      unsigned mask = 0;
      for (std::size_t u : f.label) mask |= 1u << u;
      sets.push_back(mask);
    }
    const int opt = exhaustive_min_cover(sets, (1u << m) - 1);
    const std::size_t got = greedy_cover(faces, m).gamma.size();
    worst = std::max(worst, static_cast<double>(got) / opt);
    o.require(static_cast<double>(got) <= (1.0 + std::log(static_cast<double>(m))) * opt + 1e-12, "greedy above (1+ln m) OPT");
  }
  const Layout f = two_face_cover_layout();
  const CoverResult c = greedy_cover(labeled_faces(f.env, f.state.units, {}), f.state.units.size());
  const bool labels = c.gamma.size() == 2 && c.gamma[0].label == std::vector<std::size_t>{0, 2, 3, 5} &&
                      c.gamma[1].label == std::vector<std::size_t>{1, 2, 4};
  o.require(labels, "two-polygon reproduction labels differ");
  o.detail << "30 instances, worst greedy/OPT " << worst << "; reproduction |Γ|=" << c.gamma.size()
           << (labels ? " with labels {B1,B3,B4,B6}, {B2,B3,B5}" : "");
  return o;
}

bool tour_serves(const Environment& env, const SystemState& units, const DeploymentPlan& plan) {
  std::vector<Point2> samples;
  if (plan.tour) {
    const Path& t = plan.tour->path;
    for (double s = 0.0; s <= t.length; s += 0.01) samples.push_back(t.at(s));
    samples.insert(samples.end(), t.waypoints.begin(), t.waypoints.end());
  }
  for (Point2 b : units.units) {
    const bool fixed = std::any_of(plan.statics.begin(), plan.statics.end(),
                                   [&](const StaticAssignment& a) { return sampled_los(env, a.standing, b, 2e-3); });
    if (fixed) continue;
    const bool patrolled = std::any_of(samples.begin(), samples.end(), [&](Point2 p) { return los_visible(env, p, b); });
    if (!patrolled) return false;
  }
  return true;
}

Outcome tour_quality() {
  Outcome o;
  std::mt19937_64 rng(88);
  double worst = 1.0;
  for (int trial = 0; trial < 12; ++trial) {
    const Environment env = random_environment(rng, 4);
    const std::size_t k = 3 + static_cast<std::size_t>(trial % 8);
    std::vector<Region> regions;
    while (regions.size() < k) {
      const Region r = intersect(square_around(random_free_point(env, rng), 0.3), env.free_space());
      if (!r.empty()) regions.push_back(Region::from(largest_part(r)));
    }
    const std::vector<double> w = region_cost_matrix(env, regions);
    std::vector<std::vector<double>> w2(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) w2[i][j] = w[i * k + j];
    const double exact = held_karp(w2);
    const double heuristic = cycle_cost(w, k, tour_sequence_heuristic(w, k));
    worst = std::max(worst, heuristic / exact);
    o.require(heuristic <= 1.5 * exact + 1e-9, "heuristic tour above 1.5x exact");
  }
  // Service property on every deployment with a patrol tour.
  int tours = 0;
  for (const Layout& f : {patrol_layout(), visible_faces_layout(), two_face_cover_layout(), cut_vertex_layout(), unrecoverable_layout()}) {
    const CoverResult c = greedy_cover(labeled_faces(f.env, f.state.units, {}), f.state.units.size());
    for (std::size_t n = 1; n <= c.gamma.size() + 2; ++n) {
      const DeploymentPlan plan = deploy(f.env, c, n);
      if (!plan.tour) continue;
      ++tours;
      o.require(tour_serves(f.env, f.state, plan), "a unit is neither statically served nor seen from the tour");
    }
  }
  o.detail << "worst heuristic/exact " << worst << " over 12 instances (3-10 regions); " << tours
           << " patrol tours serve every unit";
  return o;
}

Outcome path_planner() {
  Outcome o;
  std::mt19937_64 rng(909);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Environment env = random_environment(rng, 5);
    Point2 start, target;
    do {
      start = random_free_point(env, rng);
      target = random_free_point(env, rng);
    } while (dist(start, target) < 4.0);
    const Region goal = intersect(square_around(target, 0.3), env.free_space());
    const double planned = plan_path(env, start, goal).length;
    const double oracle = grid_geodesic(env, start, [&](Point2 c) { return contains(goal, c); });
    const double rel = std::abs(planned - oracle) / oracle;
    worst = std::max(worst, rel);
    o.require(rel <= 0.02, "geodesic differs from grid oracle by more than 2%");
  }

  const Environment open(rect(0, 0, 30, 30), {});
  const DubinsParams params;
  const double rho = params.turning_radius();
  double dubins_worst = 0.0;
  bool curvature = true;
  const VehiclePose start{5, 15, 0};
  for (const Point2 target : {Point2{25, 15}, Point2{22, 25}, Point2{20, 3}, Point2{15, 27}}) {
    const Region goal = square_around(target, 0.25);
    const Path p = plan_dubins(open, start, goal, params, 17);
    for (std::size_t i = 0; i + 1 < p.poses.size(); ++i) {
      const double ds = dist(p.poses[i].position(), p.poses[i + 1].position());
      const double dth = std::abs(std::remainder(p.poses[i + 1].theta - p.poses[i].theta, 2 * M_PI));
      if (ds > 0.0101) curvature = false;
      if (dth > 1e-9 && ds / (2.0 * std::sin(dth / 2.0)) < rho * (1.0 - 1e-6)) curvature = false;
    }
    const double analytic = dubins_to_point(start.position(), start.theta, p.end(), rho);
    const double rel = (p.length - analytic) / analytic;
    dubins_worst = std::max(dubins_worst, std::abs(rel));
    o.require(contains(goal, p.end()), "Dubins path misses its goal");
    o.require(rel >= -1e-6 && rel <= 0.05, "Dubins length not within 5% of the analytic length");
  }
  o.require(curvature, "curvature bound violated at 1 cm sampling");
  o.detail << "20 environments, worst geodesic error " << worst * 100 << "%; Dubins worst " << dubins_worst * 100
           << "% over 4 goals, curvature " << (curvature ? "respected" : "violated");
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::string dir = LOSNET_SCENARIO_DIR;
  std::size_t bytes = 0;
  for (const char* name : {"nomadic.json", "random_waypoint.json", "unrecoverable.json"}) {
    const Scenario a = load_scenario(dir + "/" + name);
    const Scenario b = load_scenario(dir + "/" + name);
    const SimReport ra = simulate(a);
    const SimReport rb = simulate(b);
    const std::string ja = to_text(report_to_json(ra));
    const std::string jb = to_text(report_to_json(rb));
    o.require(ja == jb, std::string("report differs for ") + name);
    const Environment env = a.environment();
    Overlays ov;
    for (const StepRecord& r : ra.records) ov.paths.insert(ov.paths.end(), r.paths.begin(), r.paths.end());
    ov.relay_graph = true;
    const std::string sa = render_svg(env, ra.final_state, ov);
    Overlays ovb;
    for (const StepRecord& r : rb.records) ovb.paths.insert(ovb.paths.end(), r.paths.begin(), r.paths.end());
    ovb.relay_graph = true;
    o.require(sa == render_svg(a.environment(), rb.final_state, ovb), std::string("SVG differs for ") + name);
    bytes += ja.size() + sa.size();
  }
  o.detail << "3 scenarios, " << bytes << " bytes compared";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"lambda2 spot checks", lambda2_spot_checks},
      {"validation staging", validation_staging},
      {"lambda2 vs BFS", lambda2_vs_bfs},
      {"centralized = distributed", centralized_vs_distributed},
      {"visibility fidelity", visibility_fidelity},
      {"recovery soundness", recovery_soundness},
      {"cover quality", cover_quality},
      {"tour quality and service", tour_quality},
      {"path planner", path_planner},
      {"end-to-end determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu %-26s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
