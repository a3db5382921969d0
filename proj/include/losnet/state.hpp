#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "losnet/geometry.hpp"

namespace losnet {

/// Planar vehicle pose; heading in radians, normalized to [0, 2π).
struct VehiclePose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Point2 position() const { return {x, y}; }
  friend bool operator==(const VehiclePose&, const VehiclePose&) = default;
};

inline double normalize_angle(double theta) {
  double t = std::fmod(theta, 2.0 * std::numbers::pi);
  if (t < 0.0) t += 2.0 * std::numbers::pi;
  return t >= 2.0 * std::numbers::pi ? 0.0 : t;
}

/// Vehicle poses and unit positions at one instant.
struct SystemState {
  std::vector<VehiclePose> vehicles;
  std::vector<Point2> units;

  std::size_t vehicle_count() const { return vehicles.size(); }
  std::size_t unit_count() const { return units.size(); }
  std::vector<Point2> vehicle_positions() const {
    std::vector<Point2> out;
    out.reserve(vehicles.size());
    for (const auto& v : vehicles) out.push_back(v.position());
    return out;
  }
  friend bool operator==(const SystemState&, const SystemState&) = default;
};

class InvalidState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws InvalidState unless n >= 1 and every agent lies in the free space.
void validate_state(const Environment& env, const SystemState& state);

}  // namespace losnet
