#include "losnet/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "losnet/kernels.hpp"

namespace losnet {

std::vector<std::size_t> disconnected_units(const VisGraph& units) {
  std::vector<std::size_t> out;
  for (std::size_t u = units.vehicles; u < units.nodes; ++u) {
    if (units.degree(u) == 0) out.push_back(u - units.vehicles);
  }
  return out;
}

std::vector<std::vector<std::size_t>> hard_constrained(const VisGraph& units) {
  std::vector<std::vector<std::size_t>> out(units.vehicles);
  for (std::size_t u = units.vehicles; u < units.nodes; ++u) {
    if (units.degree(u) != 1) continue;
    for (std::size_t i = 0; i < units.vehicles; ++i) {
      if (units.edge(u, i)) out[i].push_back(u - units.vehicles);
    }
  }
  return out;
}

std::vector<std::size_t> candidate_vehicles(const VisGraph& relay) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < relay.nodes; ++i) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < relay.nodes; ++k) {
      if (k != i) rest.push_back(k);
    }
    if (is_connected(algebraic_connectivity(laplacian(relay.induced(rest))))) out.push_back(i);
  }
  return out;
}

namespace {

// Visibility regions of every vehicle and unit, computed once per state.
struct Views {
  std::vector<Region> vehicles;
  std::vector<Region> units;

  Views(const Environment& env, const SystemState& state) {
    for (const Polygon& p : kernels::visibility_polygons(env, state.vehicle_positions())) {
      vehicles.push_back(Region::from(p));
    }
    for (const Polygon& p : kernels::visibility_polygons(env, state.units)) units.push_back(Region::from(p));
  }
};

Region goal_region(const Views& views, std::size_t vehicle, std::size_t unit, const std::vector<std::size_t>& hard) {
  Region base = views.units[unit];
  for (std::size_t h : hard) base = intersect(base, views.units[h]);
  if (base.empty()) return {};
  Region pool;
  if (views.vehicles.size() == 1) {
    pool = base;
  } else {
    for (std::size_t k = 0; k < views.vehicles.size(); ++k) {
      if (k == vehicle) continue;
      const Region r = intersect(base, views.vehicles[k]);
      pool.parts.insert(pool.parts.end(), r.parts.begin(), r.parts.end());
    }
  }
  if (pool.empty()) return {};
  return Region::from(largest_part(pool));
}

struct Candidate {
  std::size_t vehicle;
  Region region;
  Path path;
  double cost;
};

Candidate plan_candidate(const Environment& env, const Roadmap& roadmap, const SystemState& state, std::size_t i,
                         Region region, const RecoveryOptions& options) {
  const VehiclePose& q = state.vehicles[i];
  Path path = options.planner == Planner::kRrtStar
                  ? plan_dubins(env, q, region, options.dubins, options.seed + i)
                  : roadmap.to_region(q.position(), region);
  const double cost = path.length;
  return {i, std::move(region), std::move(path), cost};
}

}  // namespace

Region goal_region(const Environment& env, const SystemState& state, std::size_t vehicle, std::size_t unit,
                   const std::vector<std::size_t>& hard) {
  return goal_region(Views(env, state), vehicle, unit, hard);
}

RecoveryResult single_move_recover(const Environment& env, const SystemState& state,
                                   const RecoveryOptions& options) {
  RecoveryResult result;
  result.final_state = state;
  const Roadmap roadmap(env);
  SystemState& current = result.final_state;

  for (std::size_t guard = 0; guard <= state.units.size(); ++guard) {
    const CheckResult check = communication_check(current, env);
    if (check.verdict == Verdict::kInvalidRelay) throw RelayBroken();
    const std::vector<std::size_t> lost = disconnected_units(check.units);
    if (lost.empty()) break;
    const std::size_t unit = lost.front();
    const auto hard = hard_constrained(check.units);
    const Views views(env, current);

    std::optional<Candidate> best;
    for (std::size_t i : candidate_vehicles(check.relay)) {
      Region region = goal_region(views, i, unit, hard[i]);
      if (region.empty()) continue;
      Candidate c = plan_candidate(env, roadmap, current, i, std::move(region), options);
      if (!best || c.cost < best->cost) best = std::move(c);  // ties keep the lower id
    }
    if (!best) {
      result.status = RecoveryResult::Status::kFailure;
      result.failed_unit = unit;
      return result;
    }

    RelocationPlan move;
    move.vehicle = best->vehicle;
    move.unit = unit;
    move.goal_region = std::move(best->region);
    move.cost = best->cost;
    move.path = std::move(best->path);
    if (options.planner == Planner::kRrtStar) {
      move.standing = move.path.end();
    } else {
      move.standing = pole_of_inaccessibility(move.goal_region.parts.front());
      const Path last = roadmap.to_point(move.path.end(), move.standing);
      move.path.waypoints.insert(move.path.waypoints.end(), last.waypoints.begin() + 1, last.waypoints.end());
      move.path.length += last.length;
    }

    VehiclePose& pose = current.vehicles[move.vehicle];
    if (!move.path.poses.empty()) {
      pose = move.path.poses.back();
    } else {
      const auto& w = move.path.waypoints;
      if (w.size() >= 2) {
        const Point2 d = w[w.size() - 1] - w[w.size() - 2];
        pose.theta = normalize_angle(std::atan2(d.y, d.x));
      }
      pose.x = move.standing.x;
      pose.y = move.standing.y;
    }
    result.moves.push_back(std::move(move));
    result.status = RecoveryResult::Status::kRecovered;
  }
  return result;
}

}  // namespace losnet
