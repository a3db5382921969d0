#include "losnet/state.hpp"

#include <string>

namespace losnet {

void validate_state(const Environment& env, const SystemState& state) {
  if (state.vehicles.empty()) throw InvalidState("state needs at least one vehicle");
  for (std::size_t i = 0; i < state.vehicles.size(); ++i) {
    const Point2 q = state.vehicles[i].position();
    if (!is_finite(q) || !std::isfinite(state.vehicles[i].theta)) {
      throw InvalidState("vehicle " + std::to_string(i) + " has a non-finite pose");
    }
    if (!env.contains(q)) throw InvalidState("vehicle " + std::to_string(i) + " is outside free space");
  }
  for (std::size_t j = 0; j < state.units.size(); ++j) {
    const Point2 r = state.units[j];
    if (!is_finite(r)) throw InvalidState("unit " + std::to_string(j) + " has a non-finite position");
    if (!env.contains(r)) throw InvalidState("unit " + std::to_string(j) + " is outside free space");
  }
}

}  // namespace losnet
