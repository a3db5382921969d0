// Multi-vehicle placement: visibility decomposition, greedy set cover of the
// units, vehicle assignment and the patrol tour linking what stays apart.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "losnet/connectivity.hpp"
#include "losnet/motion.hpp"

namespace losnet {

class NoVehicles : public std::invalid_argument {
 public:
  NoVehicles() : std::invalid_argument("deployment needs at least one vehicle") {}
};

/// Face score weights: γ·area + Σ (α − β·distance) over the label.
struct ScoreParams {
  double alpha = 1e6;
  double beta = 1.0;
  double gamma = 1.0;

  /// Throws std::invalid_argument unless α > 0 and α ≥ 10³·max(β, γ).
  void validate() const;
};

struct LabeledFace {
  Region polygon;                 // one connected part
  std::vector<std::size_t> label; // units whose visibility polygon contains the face
  double score = 0.0;
  bool original = false;          // a unit's whole visibility polygon
};

/// Faces of the overlay of the given polygons, one per connected part:
/// pairwise interior-disjoint, jointly covering their union.
std::vector<Region> arrangement(std::span<const Region> polygons);

/// Arrangement faces of the units' visibility polygons (each connected part
/// separately), followed by the original polygons not already present.
std::vector<Region> decompose(const Environment& env, std::span<const Point2> units);
std::vector<Region> decompose(std::span<const Region> visibility);

std::vector<std::size_t> assign_label(const Region& face, std::span<const Region> visibility);
double assign_score(const Region& face, std::span<const std::size_t> label, std::span<const Point2> units,
                    const ScoreParams& params);

/// Decomposition with labels and scores for every face.
std::vector<LabeledFace> labeled_faces(const Environment& env, std::span<const Point2> units,
                                       const ScoreParams& params);

struct CoverResult {
  std::vector<std::size_t> selected;  // face indices, in selection order
  std::vector<LabeledFace> gamma;     // the selected faces, same order
  std::vector<std::size_t> covered;
};

/// Greedy cover: most uncovered units first, then score, then face index.
CoverResult greedy_cover(std::span<const LabeledFace> faces, std::size_t unit_count);

struct ComponentSet {
  std::vector<std::vector<std::size_t>> members;  // indices into the given positions
  std::vector<Region> polygons;                   // union of members' visibility polygons
};

/// Relay components of placed vehicles and their merged visibility polygons.
ComponentSet component_polygons(const Environment& env, std::span<const Point2> positions);

/// Complete graph over component polygons and uncovered faces, weighted by
/// region-to-region motion cost (row-major).
std::vector<double> component_graph(const Environment& env, std::span<const Region> vertices);

struct StaticAssignment {
  std::size_t vehicle = 0;
  std::size_t face = 0;  // index into Γ
  Point2 standing;
};

struct DeploymentPlan {
  std::vector<StaticAssignment> statics;
  std::optional<std::size_t> patroller;
  ComponentSet components;
  std::vector<std::size_t> uncovered;   // indices into Γ
  std::vector<Region> tour_vertices;    // component polygons, then uncovered faces
  std::vector<std::size_t> tour_order;  // visiting order over tour_vertices
  std::optional<Tour> tour;

  /// Vehicle poses implied by the plan: statics at their standing points,
  /// the patroller at the tour start, spare vehicles sharing a static post.
  SystemState apply(const SystemState& current) const;
};

DeploymentPlan deploy(const Environment& env, const CoverResult& cover, std::size_t vehicle_count);

}  // namespace losnet
