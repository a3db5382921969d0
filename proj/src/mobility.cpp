// Unit mobility: random waypoint along geodesics, and nomadic groups whose
// members wander around a shared random-waypoint reference point.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "losnet/motion.hpp"

namespace losnet {

double SeedStream::uniform(double lo, double hi) {
  if (hi <= lo) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

Mobility::Mobility(const Environment& env, MobilityConfig config, const std::vector<Point2>& units,
                   SeedStream stream)
    : env_(&env), roadmap_(env), config_(std::move(config)), stream_(stream) {
  if (config_.speed_min < 0.0 || config_.speed_max < config_.speed_min) {
    throw std::invalid_argument("speed range must satisfy 0 <= min <= max");
  }
  if (config_.model == MobilityConfig::Model::kRandomWaypoint) {
    for (const Point2& r : units) walkers_.push_back({r, {}, 0.0, 0.0});
    return;
  }
  if (config_.groups.empty()) config_.groups.assign(units.size(), 0);
  if (config_.groups.size() != units.size()) throw std::invalid_argument("one group id per unit required");
  const std::size_t group_count =
      units.empty() ? 0 : *std::max_element(config_.groups.begin(), config_.groups.end()) + 1;
  std::vector<Point2> sum(group_count, {0.0, 0.0});
  std::vector<std::size_t> count(group_count, 0);
  for (std::size_t j = 0; j < units.size(); ++j) {
    sum[config_.groups[j]] = sum[config_.groups[j]] + units[j];
    ++count[config_.groups[j]];
  }
  for (std::size_t g = 0; g < group_count; ++g) {
    Point2 ref = count[g] ? (1.0 / static_cast<double>(count[g])) * sum[g] : Point2{};
    if (!count[g] || !env.contains(ref)) {
      const auto first = std::find(config_.groups.begin(), config_.groups.end(), g);
      ref = first == config_.groups.end() ? env.min_corner() : units[static_cast<std::size_t>(first - config_.groups.begin())];
    }
    walkers_.push_back({ref, {}, 0.0, 0.0});
  }
  for (std::size_t j = 0; j < units.size(); ++j) {
    offsets_.push_back(units[j] - walkers_[config_.groups[j]].position);
  }
  offset_goals_ = offsets_;
  offset_speeds_.assign(units.size(), 0.0);
}

Point2 Mobility::on_path(const Path& path, double s) const {
  const Point2 p = path.at(s);
  if (env_->contains(p)) return p;
  // Interpolating along an obstacle edge can round just outside; step off it.
  Point2 a = path.waypoints.front(), b = path.waypoints.back();
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    const double seg = dist(path.waypoints[i], path.waypoints[i + 1]);
    if (s <= seg) {
      a = path.waypoints[i];
      b = path.waypoints[i + 1];
      break;
    }
    s -= seg;
  }
  const double len = dist(a, b);
  const Point2 normal = len > 0.0 ? Point2{-(b.y - a.y) / len, (b.x - a.x) / len} : Point2{0.0, 0.0};
  for (double shift = 1e-12; shift <= 1e-6; shift *= 10.0) {
    if (env_->contains(p + shift * normal)) return p + shift * normal;
    if (env_->contains(p - shift * normal)) return p - shift * normal;
  }
  return dist(p, a) < dist(p, b) ? a : b;
}

Point2 Mobility::draw_free_point() {
  const Point2 lo = env_->min_corner();
  const Point2 hi = env_->max_corner();
  for (;;) {
    const Point2 p{stream_.uniform(lo.x, hi.x), stream_.uniform(lo.y, hi.y)};
    if (env_->strictly_inside(p)) return p;
  }
}

void Mobility::advance(Walker& w, double dt) {
  double remaining = dt;
  for (int legs = 0; remaining > 0.0 && legs < 16; ++legs) {
    if (w.progress >= w.path.length) {
      w.path = roadmap_.to_point(w.position, draw_free_point());
      w.progress = 0.0;
      w.speed = stream_.uniform(config_.speed_min, config_.speed_max);
    }
    if (w.speed <= 0.0) return;
    const double move = std::min(w.speed * remaining, w.path.length - w.progress);
    w.progress += move;
    remaining -= move / w.speed;
    w.position = on_path(w.path, w.progress);
  }
}

SystemState Mobility::step(const SystemState& state, double dt) {
  if (dt < 0.0) throw std::invalid_argument("dt must be non-negative");
  SystemState next = state;
  if (dt == 0.0 || config_.speed_max <= 0.0) return next;

  if (config_.model == MobilityConfig::Model::kRandomWaypoint) {
    if (walkers_.size() != state.units.size()) throw std::invalid_argument("unit count changed");
    for (std::size_t j = 0; j < walkers_.size(); ++j) {
      advance(walkers_[j], dt);
      next.units[j] = walkers_[j].position;
    }
    return next;
  }

  if (offsets_.size() != state.units.size()) throw std::invalid_argument("unit count changed");
  std::vector<Point2> before;
  for (const Walker& w : walkers_) before.push_back(w.position);
  for (Walker& w : walkers_) advance(w, dt);
  const double r = config_.group_radius;
  for (std::size_t j = 0; j < offsets_.size(); ++j) {
    // Offsets follow their own random waypoints inside the group disc.
    if (offsets_[j] == offset_goals_[j]) {
      Point2 goal;
      do {
        goal = {stream_.uniform(-r, r), stream_.uniform(-r, r)};
      } while (norm(goal) > r);
      offset_goals_[j] = goal;
      offset_speeds_[j] = stream_.uniform(config_.speed_min, config_.speed_max);
    }
    const Point2 old_offset = offsets_[j];
    const Point2 to_goal = offset_goals_[j] - offsets_[j];
    const double gap = norm(to_goal);
    const double move = offset_speeds_[j] * dt;
    offsets_[j] = move >= gap ? offset_goals_[j] : offsets_[j] + (move / gap) * to_goal;

    const Point2 ref = walkers_[config_.groups[j]].position;
    if (ref == before[config_.groups[j]] && offsets_[j] == old_offset) continue;
    // Members stay within free space and in sight of their reference point.
    Point2 p = ref + offsets_[j];
    for (int shrink = 0; !(env_->contains(p) && los_visible(*env_, ref, p)); ++shrink) {
      offsets_[j] = shrink < 30 ? 0.5 * offsets_[j] : Point2{0.0, 0.0};
      offset_goals_[j] = offsets_[j];
      p = ref + offsets_[j];
    }
    next.units[j] = p;
  }
  return next;
}

}  // namespace losnet
