// Small hand-built layouts, each staging one network situation. Vehicles
// and units are listed by id (vehicle 1 = index 0, unit A or B1 = index 0).
#pragma once

#include <vector>

#include "fixtures.hpp"
#include "losnet/state.hpp"

namespace losnet::testing {

struct Layout {
  Environment env;
  SystemState state;
};

inline SystemState make_state(std::vector<Point2> vehicles, std::vector<Point2> units) {
  SystemState s;
  for (Point2 q : vehicles) s.vehicles.push_back({q.x, q.y, 0.0});
  s.units = std::move(units);
  return s;
}

/// Ring corridor around one central block.
inline Environment ring_world() { return Environment(rect(0, 0, 10, 10), {rect(2, 2, 8, 8)}); }

/// Two blocks: bottom and top corridors joined by left, middle and right passages.
inline Environment two_block_world() { return Environment(rect(0, 0, 20, 12), {rect(4, 3, 8, 9), rect(12, 3, 16, 9)}); }

/// Two mutually visible vehicles and one unit both see: K2 relay, triangle union.
inline Layout pair_relay_layout() { return {ring_world(), make_state({{1, 1}, {5, 1}}, {{9, 1}})}; }

/// Relay connected, one unit around the corner from both vehicles.
inline Layout hidden_unit_layout() { return {ring_world(), make_state({{1, 1}, {5, 1}}, {{9, 1}, {5, 9}})}; }

/// Two vehicles on perpendicular sides of the block, bridged only by a corner unit.
inline Layout split_relay_layout() { return {ring_world(), make_state({{5, 1}, {9, 5}}, {{9, 1}})}; }

/// Three vehicles around a corner: relay path P3, both units served.
inline Layout path_relay_layout() { return {ring_world(), make_state({{5, 1}, {9, 1}, {9, 5}}, {{1, 1}, {9, 9}})}; }

/// Four vehicles in relay path 2-1-3-4 (1 and 3 are cut vertices); unit E
/// (index 4) in the right passage is seen by nobody.
inline Layout cut_vertex_layout() {
  return {two_block_world(), make_state({{10, 1.5}, {1, 1}, {10, 10.5}, {13, 10}},
                                        {{2, 10}, {6, 1.5}, {10, 6}, {6, 10.5}, {18, 8}, {19, 9.5}})};
}

/// Three vehicles in relay path 2-1-3; unit D (index 3) disconnected,
/// H_2 = {B}, H_3 = {E, F}; moving vehicle 2 restores the network.
inline Layout recoverable_layout() {
  return {two_block_world(), make_state({{0.5, 4}, {5.5, 2}, {3.5, 11}},
                                        {{1, 7}, {18, 3}, {2, 4}, {18.5, 5.5}, {19.5, 11.5}, {12, 9.5}})};
}

/// Relay path 2-1-3; unit D (index 3) disconnected; the hard-constrained
/// units of vehicles 2 and 3 share no visible region with D and another
/// vehicle, and vehicle 1 is a cut vertex: not recoverable by one move.
inline Layout unrecoverable_layout() {
  return {two_block_world(), make_state({{10, 1.5}, {1, 1}, {10, 10.5}},
                                        {{6, 1.5}, {2, 8}, {10, 6}, {18, 6}, {14, 11}, {18, 11}})};
}

/// Six units whose greedy cover is two faces: one seen by units 1, 3, 4, 6
/// and one seen by units 2, 3, 5.
inline Layout two_face_cover_layout() {
  return {two_block_world(), make_state({{10, 1.5}},
                                        {{11.75, 8.25}, {17.25, 6.75}, {18.75, 8.25}, {5.25, 9.75}, {7.25, 2.25}, {7.25, 11.75}})};
}

/// Greedy cover of three faces whose standing points all see each other.
inline Layout visible_faces_layout() {
  return {two_block_world(), make_state({{10, 1.5}},
                                        {{7.75, 1.25}, {19.75, 0.25}, {16.25, 7.75}, {10.75, 6.75}, {6.25, 0.75}, {3.75, 5.25}})};
}

/// Greedy cover of three faces: the two best-scored see each other, the
/// third is out of their sight.
inline Layout patrol_layout() {
  return {two_block_world(), make_state({{10, 1.5}},
                                        {{8.75, 5.75}, {15.75, 0.25}, {18.25, 6.25}, {3.25, 6.25}, {2.75, 1.75}, {8.75, 11.75}})};
}

}  // namespace losnet::testing
