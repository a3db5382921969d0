#include "losnet/placement.hpp"

#include <algorithm>
#include <numeric>

#include "losnet/kernels.hpp"

namespace losnet {

void ScoreParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("score alpha must be positive");
  if (beta < 0.0 || gamma < 0.0) throw std::invalid_argument("score beta and gamma must be non-negative");
  if (alpha < 1e3 * std::max(beta, gamma)) throw std::invalid_argument("score alpha must dominate beta and gamma");
}

namespace {

std::vector<Region> split_parts(const Region& r) {
  std::vector<Region> out;
  for (const auto& part : r.parts) out.push_back(Region::from(part));
  return out;
}

bool same_set(const Region& a, const Region& b) {
  return std::abs(area(a) - area(b)) < kAreaEps && area(subtract(a, b)) < kAreaEps &&
         area(subtract(b, a)) < kAreaEps;
}

}  // namespace

std::vector<Region> arrangement(std::span<const Region> polygons) {
  // Overlay one polygon at a time: every face splits into its parts inside
  // and outside the new polygon, and the new polygon's remainder is added.
  std::vector<Region> faces;
  Region covered;
  for (const Region& v : polygons) {
    std::vector<Region> next;
    for (const Region& f : faces) {
      for (const Region& part : split_parts(intersect(f, v))) next.push_back(part);
      for (const Region& part : split_parts(subtract(f, v))) next.push_back(part);
    }
    for (const Region& part : split_parts(subtract(v, covered))) next.push_back(part);
    covered = unite(covered, v);
    faces = std::move(next);
  }
  return faces;
}

std::vector<Region> decompose(std::span<const Region> visibility) {
  std::vector<Region> faces = arrangement(visibility);
  for (const Region& v : visibility) {
    const bool present = std::any_of(faces.begin(), faces.end(), [&](const Region& f) { return same_set(f, v); });
    if (!present) faces.push_back(v);
  }
  return faces;
}

std::vector<Region> decompose(const Environment& env, std::span<const Point2> units) {
  std::vector<Region> vis;
  for (const Polygon& p : kernels::visibility_polygons(env, units)) vis.push_back(Region::from(p));
  return decompose(vis);
}

std::vector<std::size_t> assign_label(const Region& face, std::span<const Region> visibility) {
  std::vector<std::size_t> label;
  for (std::size_t u = 0; u < visibility.size(); ++u) {
    if (area(subtract(face, visibility[u])) < kAreaEps) label.push_back(u);
  }
  return label;
}

double assign_score(const Region& face, std::span<const std::size_t> label, std::span<const Point2> units,
                    const ScoreParams& params) {
  double s = params.gamma * area(face);
  for (std::size_t u : label) s += params.alpha - params.beta * distance(face, units[u]);
  return s;
}

std::vector<LabeledFace> labeled_faces(const Environment& env, std::span<const Point2> units,
                                       const ScoreParams& params) {
  params.validate();
  std::vector<Region> vis;
  for (const Polygon& p : kernels::visibility_polygons(env, units)) vis.push_back(Region::from(p));
  const std::vector<Region> faces = decompose(vis);
  const std::vector<std::uint8_t> inside = kernels::containment_matrix(faces, vis);
  const std::size_t m = vis.size();
  std::vector<LabeledFace> out;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    LabeledFace lf;
    lf.polygon = faces[f];
    for (std::size_t u = 0; u < m; ++u) {
      if (inside[f * m + u]) lf.label.push_back(u);
    }
    lf.score = assign_score(lf.polygon, lf.label, units, params);
    lf.original = std::any_of(vis.begin(), vis.end(), [&](const Region& v) { return same_set(v, faces[f]); });
    out.push_back(std::move(lf));
  }
  return out;
}

CoverResult greedy_cover(std::span<const LabeledFace> faces, std::size_t unit_count) {
  CoverResult result;
  std::vector<bool> open(unit_count, true);
  std::size_t remaining = unit_count;
  while (remaining > 0) {
    std::size_t best = faces.size();
    std::size_t best_gain = 0;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      std::size_t gain = 0;
      for (std::size_t u : faces[f].label) gain += open[u] ? 1 : 0;
      if (gain == 0) continue;
      if (gain > best_gain || (gain == best_gain && faces[f].score > faces[best].score)) {
        best = f;
        best_gain = gain;
      }
    }
    if (best == faces.size()) throw std::logic_error("some unit appears in no face label");
    for (std::size_t u : faces[best].label) {
      if (open[u]) {
        open[u] = false;
        --remaining;
      }
    }
    result.selected.push_back(best);
    result.gamma.push_back(faces[best]);
  }
  for (std::size_t u = 0; u < unit_count; ++u) result.covered.push_back(u);
  return result;
}

ComponentSet component_polygons(const Environment& env, std::span<const Point2> positions) {
  ComponentSet out;
  const std::size_t n = positions.size();
  const std::vector<std::uint8_t> los = kernels::los_matrix(env, positions, positions);
  VisGraph g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (los[i * n + j]) g.connect(i, j);
  const std::vector<Polygon> vis = kernels::visibility_polygons(env, positions);
  for (const auto& comp : g.components()) {
    std::vector<Region> parts;
    for (std::size_t i : comp) parts.push_back(Region::from(vis[i]));
    out.members.push_back(comp);
    out.polygons.push_back(unite_all(parts));
  }
  return out;
}

std::vector<double> component_graph(const Environment& env, std::span<const Region> vertices) {
  return region_cost_matrix(env, vertices);
}

SystemState DeploymentPlan::apply(const SystemState& current) const {
  SystemState next = current;
  for (const StaticAssignment& a : statics) {
    next.vehicles[a.vehicle].x = a.standing.x;
    next.vehicles[a.vehicle].y = a.standing.y;
  }
  if (patroller && tour) {
    const Point2 start = tour->path.waypoints.front();
    next.vehicles[*patroller].x = start.x;
    next.vehicles[*patroller].y = start.y;
  }
  // Spare vehicles join a static post so they stay in sight of the network.
  if (!statics.empty()) {
    for (std::size_t v = 0; v < next.vehicles.size(); ++v) {
      const bool used = (patroller && *patroller == v) ||
                        std::any_of(statics.begin(), statics.end(), [v](const StaticAssignment& a) { return a.vehicle == v; });
      if (used) continue;
      const Point2 post = statics[v % statics.size()].standing;
      next.vehicles[v].x = post.x;
      next.vehicles[v].y = post.y;
    }
  }
  return next;
}

DeploymentPlan deploy(const Environment& env, const CoverResult& cover, std::size_t vehicle_count) {
  if (vehicle_count == 0) throw NoVehicles();
  const std::size_t k = cover.gamma.size();
  const auto standing_of = [&](std::size_t face) {
    return pole_of_inaccessibility(largest_part(cover.gamma[face].polygon));
  };
  const auto place = [&](DeploymentPlan& plan, const std::vector<std::size_t>& faces) {
    std::vector<Point2> positions;
    for (std::size_t v = 0; v < faces.size(); ++v) {
      plan.statics.push_back({v, faces[v], standing_of(faces[v])});
      positions.push_back(plan.statics.back().standing);
    }
    plan.components = component_polygons(env, positions);
  };

  // Faces in selection order, and by descending score for partial coverage.
  std::vector<std::size_t> in_order(k);
  std::iota(in_order.begin(), in_order.end(), 0);
  std::vector<std::size_t> by_score = in_order;
  std::stable_sort(by_score.begin(), by_score.end(), [&](std::size_t a, std::size_t b) {
    return cover.gamma[a].score > cover.gamma[b].score;
  });

  DeploymentPlan plan;
  if (k == 0) return plan;
  if (k == 1) {
    place(plan, {0});
    return plan;
  }
  if (vehicle_count == 1) {
    plan.patroller = 0;
    plan.uncovered = in_order;
  } else if (k < vehicle_count) {
    place(plan, in_order);
    if (plan.components.polygons.size() >= 2) plan.patroller = k;  // lowest-id spare vehicle
  } else {
    // With exactly as many vehicles as faces, a static network suffices when
    // it forms one relay component; otherwise the last vehicle patrols.
    if (k == vehicle_count) {
      DeploymentPlan all;
      place(all, in_order);
      if (all.components.polygons.size() == 1) return all;
    }
    std::vector<std::size_t> statics(by_score.begin(), by_score.begin() + static_cast<std::ptrdiff_t>(vehicle_count - 1));
    place(plan, statics);
    plan.patroller = vehicle_count - 1;
    for (std::size_t f : in_order) {
      if (std::find(statics.begin(), statics.end(), f) == statics.end()) plan.uncovered.push_back(f);
    }
  }

  if (!plan.patroller) return plan;
  plan.tour_vertices = plan.components.polygons;
  for (std::size_t f : plan.uncovered) plan.tour_vertices.push_back(cover.gamma[f].polygon);
  if (plan.tour_vertices.size() < 2) {
    plan.patroller.reset();
    return plan;
  }
  const std::vector<double> weights = component_graph(env, plan.tour_vertices);
  plan.tour_order = tour_sequence(weights, plan.tour_vertices.size());
  std::vector<Region> ordered;
  for (std::size_t v : plan.tour_order) ordered.push_back(plan.tour_vertices[v]);
  plan.tour = patrol_tour(env, ordered);
  return plan;
}

}  // namespace losnet
