// Single-vehicle recovery: restore a communication-valid state by moving
// one relay vehicle into a goal region that sees the disconnected unit.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "losnet/connectivity.hpp"
#include "losnet/motion.hpp"

namespace losnet {

class RelayBroken : public std::runtime_error {
 public:
  RelayBroken() : std::runtime_error("relay network is disconnected; single-vehicle recovery does not apply") {}
};

/// Unit indices (0-based, into SystemState::units) with no visible vehicle.
std::vector<std::size_t> disconnected_units(const VisGraph& units);

/// Per vehicle, the unit indices seen by that vehicle alone.
std::vector<std::vector<std::size_t>> hard_constrained(const VisGraph& units);

/// Vehicles whose removal keeps the remaining relay graph connected (an
/// empty or single-vehicle remainder counts as connected).
std::vector<std::size_t> candidate_vehicles(const VisGraph& relay);

/// Largest connected part of V(r_j) ∩ V(q_k) ∩ V(H_i) over vehicles k ≠ i
/// (V(r_j) ∩ V(H_i) when i is the only vehicle); empty when infeasible.
Region goal_region(const Environment& env, const SystemState& state, std::size_t vehicle, std::size_t unit,
                   const std::vector<std::size_t>& hard);

enum class Planner { kVisibilityGraph, kRrtStar };

struct RecoveryOptions {
  Planner planner = Planner::kVisibilityGraph;
  DubinsParams dubins;
  std::uint64_t seed = 0;
};

/// One relocation: the vehicle drives `path` into `goal_region` and stops at
/// `standing`. `cost` is the motion cost to the region.
struct RelocationPlan {
  std::size_t vehicle = 0;
  std::size_t unit = 0;  // the disconnected unit this move serves
  Region goal_region;
  Point2 standing;
  Path path;
  double cost = 0.0;
};

struct RecoveryResult {
  enum class Status { kNoop, kRecovered, kFailure };
  Status status = Status::kNoop;
  std::vector<RelocationPlan> moves;  // in execution order
  SystemState final_state;
  std::size_t failed_unit = 0;  // valid when status == kFailure

  double total_cost() const {
    double c = 0.0;
    for (const auto& m : moves) c += m.cost;
    return c;
  }
};

/// Processes disconnected units in ascending index, one vehicle move each,
/// re-evaluating the state after every move. Throws RelayBroken when the
/// relay graph is disconnected.
RecoveryResult single_move_recover(const Environment& env, const SystemState& state,
                                   const RecoveryOptions& options = {});

}  // namespace losnet
