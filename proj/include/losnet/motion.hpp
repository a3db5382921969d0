// Path planning in free space: exact shortest paths to points and regions,
// Dubins-car RRT*, patrol tours, TSP sequencing and unit mobility models.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "losnet/geometry.hpp"
#include "losnet/state.hpp"

namespace losnet {

/// Goals are entered this far inside their boundary.
inline constexpr double kGoalInset = 1e-4;

class NoPath : public GeometryError {
 public:
  NoPath() : GeometryError("no path in free space") {}
};

class BudgetExhausted : public GeometryError {
 public:
  BudgetExhausted() : GeometryError("planner iteration budget exhausted") {}
};

struct Path {
  std::vector<Point2> waypoints;
  std::vector<VehiclePose> poses;  // dense samples in Dubins mode, else empty
  double length = 0.0;

  Point2 end() const { return waypoints.back(); }
  /// Point at arc length s along the polyline (clamped).
  Point2 at(double s) const;
  friend bool operator==(const Path&, const Path&) = default;
};

/// Reflex-vertex visibility graph of an environment, built once and reused
/// by every shortest-path query on it.
class Roadmap {
 public:
  explicit Roadmap(const Environment& env);

  const Environment& environment() const { return *env_; }

  /// Shortest path from `start` into `goal` (entered kGoalInset deep).
  Path to_region(Point2 start, const Region& goal) const;
  /// Shortest path between two points.
  Path to_point(Point2 start, Point2 goal) const;
  /// Shortest path from some point of `from` into `to`.
  Path between(const Region& from, const Region& to) const;

 private:
  struct Target;
  Path search(std::span<const Point2> sources, const Region* source_region, const Target& target) const;

  const Environment* env_;
  std::vector<Point2> nodes_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
};

Path plan_path(const Environment& env, Point2 start, const Region& goal);
double motion_cost(const Environment& env, Point2 start, const Region& goal);

/// Pairwise region-to-region geodesic distances (row-major, zero diagonal).
std::vector<double> region_cost_matrix(const Environment& env, std::span<const Region> regions);
std::vector<double> region_cost_matrix_serial(const Environment& env, std::span<const Region> regions);

// ---- Dubins car -------------------------------------------------------------

struct DubinsParams {
  double wheelbase = 0.5;       // L, meters
  double max_steering = 0.6;    // u_φ, radians
  double speed = 1.0;           // u_s, meters/second

  double turning_radius() const;
  void validate() const;
};

/// Shortest Dubins curve between two poses (six-word family).
struct DubinsCurve {
  enum class Word { kLSL, kRSR, kLSR, kRSL, kRLR, kLRL };
  VehiclePose start;
  double rho = 1.0;
  Word word = Word::kLSL;
  double segments[3] = {0.0, 0.0, 0.0};  // meters

  double length() const { return segments[0] + segments[1] + segments[2]; }
  VehiclePose sample(double s) const;
};

std::optional<DubinsCurve> dubins_shortest(const VehiclePose& from, const VehiclePose& to, double rho);

struct RrtConfig {
  std::size_t max_iterations = 5000;
  std::size_t refine_iterations = 1000;  // extra iterations after the first solution
  std::size_t max_neighbors = 12;
  double goal_bias = 0.1;
  double step = 0.05;        // collision sampling resolution along curves
  double sample_step = 0.01; // output pose sampling
  double neighbor_radius = 0.0;  // 0 = scale with environment size
};

/// Seeded RRT* over Dubins curves; throws BudgetExhausted.
Path plan_dubins(const Environment& env, const VehiclePose& start, const Region& goal,
                 const DubinsParams& params, std::uint64_t seed, const RrtConfig& config = {});

// ---- Tours ------------------------------------------------------------------

/// Closed patrol loop; marks[k] = arc length at which face k is entered.
struct Tour {
  Path path;
  std::vector<double> marks;
  double duration(double speed) const { return path.length / speed; }
};

Tour patrol_tour(const Environment& env, std::span<const Region> ordered_faces);

/// Hamiltonian cycle order starting at vertex 0 over a row-major weight
/// matrix: exact subset DP up to 12 vertices, nearest neighbour + 2-opt above.
std::vector<std::size_t> tour_sequence(std::span<const double> weights, std::size_t n);
double cycle_cost(std::span<const double> weights, std::size_t n, std::span<const std::size_t> order);
std::vector<std::size_t> tour_sequence_heuristic(std::span<const double> weights, std::size_t n);

// ---- Mobility ---------------------------------------------------------------

/// Deterministic, cloneable random source; each clone advances independently.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi);
  std::uint64_t next() { return engine_(); }
  /// Independent child stream.
  SeedStream fork() { return SeedStream(engine_()); }

 private:
  std::mt19937_64 engine_;
};

struct MobilityConfig {
  enum class Model { kRandomWaypoint, kNomadic };
  Model model = Model::kRandomWaypoint;
  double speed_min = 0.5;
  double speed_max = 1.5;
  double group_radius = 2.0;
  std::vector<std::size_t> groups;  // per-unit group id (nomadic); empty = one group
};

/// Unit mobility driver. Vehicles are never moved.
class Mobility {
 public:
  Mobility(const Environment& env, MobilityConfig config, const std::vector<Point2>& units,
           SeedStream stream);

  SystemState step(const SystemState& state, double dt);

 private:
  struct Walker {
    Point2 position;
    Path path;
    double progress = 0.0;
    double speed = 0.0;
  };
  Point2 draw_free_point();
  Point2 on_path(const Path& path, double s) const;
  void advance(Walker& w, double dt);

  const Environment* env_;
  Roadmap roadmap_;
  MobilityConfig config_;
  SeedStream stream_;
  std::vector<Walker> walkers_;       // units (random waypoint) or group references (nomadic)
  std::vector<Point2> offsets_;       // nomadic member offsets
  std::vector<Point2> offset_goals_;
  std::vector<double> offset_speeds_;
};

}  // namespace losnet
