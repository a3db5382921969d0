// Dubins curves and a seeded RRT* over them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "losnet/motion.hpp"

namespace losnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod2pi(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

enum class Turn { kLeft, kStraight, kRight };

constexpr Turn kWords[6][3] = {
    {Turn::kLeft, Turn::kStraight, Turn::kLeft},   {Turn::kRight, Turn::kStraight, Turn::kRight},
    {Turn::kLeft, Turn::kStraight, Turn::kRight},  {Turn::kRight, Turn::kStraight, Turn::kLeft},
    {Turn::kRight, Turn::kLeft, Turn::kRight},     {Turn::kLeft, Turn::kRight, Turn::kLeft},
};

// Normalized (unit radius) segment lengths for one word, if it exists.
bool word_lengths(DubinsCurve::Word word, double alpha, double beta, double d, double out[3]) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double cab = std::cos(alpha - beta);
  switch (word) {
    case DubinsCurve::Word::kLSL: {
      const double p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sa - sb);
      if (p2 < 0.0) return false;
      const double tmp = std::atan2(cb - ca, d + sa - sb);
      out[0] = mod2pi(-alpha + tmp);
      out[1] = std::sqrt(p2);
      out[2] = mod2pi(beta - tmp);
      return true;
    }
    case DubinsCurve::Word::kRSR: {
      const double p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sb - sa);
      if (p2 < 0.0) return false;
      const double tmp = std::atan2(ca - cb, d - sa + sb);
      out[0] = mod2pi(alpha - tmp);
      out[1] = std::sqrt(p2);
      out[2] = mod2pi(-beta + tmp);
      return true;
    }
    case DubinsCurve::Word::kLSR: {
      const double p2 = -2.0 + d * d + 2.0 * cab + 2.0 * d * (sa + sb);
      if (p2 < 0.0) return false;
      const double p = std::sqrt(p2);
      const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
      out[0] = mod2pi(-alpha + tmp);
      out[1] = p;
      out[2] = mod2pi(-mod2pi(beta) + tmp);
      return true;
    }
    case DubinsCurve::Word::kRSL: {
      const double p2 = -2.0 + d * d + 2.0 * cab - 2.0 * d * (sa + sb);
      if (p2 < 0.0) return false;
      const double p = std::sqrt(p2);
      const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
      out[0] = mod2pi(alpha - tmp);
      out[1] = p;
      out[2] = mod2pi(beta - tmp);
      return true;
    }
    case DubinsCurve::Word::kRLR: {
      const double c = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sa - sb)) / 8.0;
      if (std::abs(c) > 1.0) return false;
      const double p = mod2pi(kTwoPi - std::acos(c));
      const double t = mod2pi(alpha - std::atan2(ca - cb, d - sa + sb) + p / 2.0);
      out[0] = t;
      out[1] = p;
      out[2] = mod2pi(alpha - beta - t + p);
      return true;
    }
    case DubinsCurve::Word::kLRL: {
      const double c = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sb - sa)) / 8.0;
      if (std::abs(c) > 1.0) return false;
      const double p = mod2pi(kTwoPi - std::acos(c));
      const double t = mod2pi(-alpha - std::atan2(ca - cb, d + sa - sb) + p / 2.0);
      out[0] = t;
      out[1] = p;
      out[2] = mod2pi(mod2pi(beta) - alpha - t + p);
      return true;
    }
  }
  return false;
}

VehiclePose advance(const VehiclePose& q, Turn turn, double s, double rho) {
  switch (turn) {
    case Turn::kStraight:
      return {q.x + s * std::cos(q.theta), q.y + s * std::sin(q.theta), q.theta};
    case Turn::kLeft: {
      const double th = q.theta + s / rho;
      return {q.x + rho * (std::sin(th) - std::sin(q.theta)), q.y - rho * (std::cos(th) - std::cos(q.theta)),
              normalize_angle(th)};
    }
    case Turn::kRight: {
      const double th = q.theta - s / rho;
      return {q.x - rho * (std::sin(th) - std::sin(q.theta)), q.y + rho * (std::cos(th) - std::cos(q.theta)),
              normalize_angle(th)};
    }
  }
  return q;
}

}  // namespace

double DubinsParams::turning_radius() const { return wheelbase / std::tan(std::abs(max_steering)); }

void DubinsParams::validate() const {
  if (!(wheelbase > 0.0)) throw std::invalid_argument("wheelbase must be positive");
  if (!(std::abs(max_steering) < std::numbers::pi / 2.0) || max_steering == 0.0) {
    throw std::invalid_argument("steering limit must lie in (0, pi/2)");
  }
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be positive");
}

VehiclePose DubinsCurve::sample(double s) const {
  const auto& turns = kWords[static_cast<int>(word)];
  VehiclePose q = start;
  s = std::clamp(s, 0.0, length());
  for (int i = 0; i < 3; ++i) {
    const double take = std::min(s, segments[i]);
    q = advance(q, turns[i], take, rho);
    s -= take;
    if (s <= 0.0) break;
  }
  return q;
}

std::optional<DubinsCurve> dubins_shortest(const VehiclePose& from, const VehiclePose& to, double rho) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double d = std::hypot(dx, dy) / rho;
  const double phi = d > 0.0 ? std::atan2(dy, dx) : 0.0;
  const double alpha = mod2pi(from.theta - phi);
  const double beta = mod2pi(to.theta - phi);
  std::optional<DubinsCurve> best;
  for (int w = 0; w < 6; ++w) {
    double seg[3];
    const auto word = static_cast<DubinsCurve::Word>(w);
    if (!word_lengths(word, alpha, beta, d, seg)) continue;
    const double len = (seg[0] + seg[1] + seg[2]) * rho;
    if (!best || len < best->length() - 1e-12) {
      DubinsCurve c;
      c.start = from;
      c.rho = rho;
      c.word = word;
      for (int i = 0; i < 3; ++i) c.segments[i] = seg[i] * rho;
      best = c;
    }
  }
  return best;
}

// ---- RRT* -------------------------------------------------------------------

namespace {

struct Node {
  VehiclePose pose;
  std::size_t parent = 0;
  double cost = 0.0;
  DubinsCurve incoming;
};

bool curve_free(const Environment& env, const DubinsCurve& c, double step) {
  const double len = c.length();
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  Point2 prev = c.start.position();
  if (!env.contains(prev)) return false;
  for (int i = 1; i <= n; ++i) {
    const Point2 p = c.sample(len * i / n).position();
    if (!env.contains(p) || !los_visible(env, prev, p)) return false;
    prev = p;
  }
  return true;
}

DubinsCurve truncated(const DubinsCurve& c, double max_len) {
  if (c.length() <= max_len) return c;
  DubinsCurve t = c;
  double left = max_len;
  for (double& s : t.segments) {
    s = std::min(s, left);
    left -= s;
  }
  return t;
}

}  // namespace

Path plan_dubins(const Environment& env, const VehiclePose& start, const Region& goal,
                 const DubinsParams& params, std::uint64_t seed, const RrtConfig& config) {
  params.validate();
  if (!env.contains(start.position())) throw PointOutsideFreeSpace(start.position());
  if (goal.empty()) throw EmptyRegion();
  const double rho = params.turning_radius();
  Region entry = inset(goal, kGoalInset);
  if (entry.empty()) entry = goal;

  const Point2 lo = env.min_corner();
  const Point2 hi = env.max_corner();
  const double diag = dist(lo, hi);
  const double radius = config.neighbor_radius > 0.0 ? config.neighbor_radius : std::max(0.25 * diag, 4.0 * rho);
  const double extend = std::max(0.2 * diag, 3.0 * rho);

  Point2 glo = entry.parts.front().outer[0];
  Point2 ghi = glo;
  for (const auto& part : entry.parts) {
    for (const Point2& v : part.outer.vertices) {
      glo = {std::min(glo.x, v.x), std::min(glo.y, v.y)};
      ghi = {std::max(ghi.x, v.x), std::max(ghi.y, v.y)};
    }
  }

  SeedStream rng(seed);
  const auto sample_in = [&](Point2 a, Point2 b, auto accept) {
    for (int tries = 0; tries < 1000; ++tries) {
      const Point2 p{rng.uniform(a.x, b.x), rng.uniform(a.y, b.y)};
      if (accept(p)) return std::optional<Point2>(p);
    }
    return std::optional<Point2>();
  };

  std::vector<Node> tree;
  std::vector<std::vector<std::size_t>> children(1);
  tree.push_back({start, 0, 0.0, {}});
  std::optional<std::size_t> best_goal;
  if (contains(entry, start.position())) best_goal = 0;
  std::size_t found_at = best_goal ? 0 : config.max_iterations;

  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    if (best_goal && it >= found_at + config.refine_iterations) break;
    VehiclePose target;
    const bool to_goal = rng.uniform(0.0, 1.0) < config.goal_bias;
    if (to_goal) {
      const auto p = sample_in(glo, ghi, [&](Point2 q) { return contains(entry, q) && env.contains(q); });
      if (!p) continue;
      const Point2 d = *p - start.position();
      target = {p->x, p->y, normalize_angle(std::atan2(d.y, d.x))};
    } else {
      const auto p = sample_in(lo, hi, [&](Point2 q) { return env.strictly_inside(q); });
      if (!p) continue;
      target = {p->x, p->y, rng.uniform(0.0, 2.0 * std::numbers::pi)};
    }

    // Nearest by Euclidean distance, then steer along the Dubins curve.
    std::size_t nearest = 0;
    double nd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const double dd = dist(tree[i].pose.position(), target.position());
      if (dd < nd) {
        nd = dd;
        nearest = i;
      }
    }
    const auto steer = dubins_shortest(tree[nearest].pose, target, rho);
    if (!steer) continue;
    const DubinsCurve first = to_goal ? *steer : truncated(*steer, extend);
    if (!curve_free(env, first, config.step)) continue;
    VehiclePose q_new = first.sample(first.length());
    if (first.length() == steer->length()) q_new = target;

    // Choose the cheapest collision-free parent among nearby nodes.
    std::vector<std::pair<double, std::size_t>> near;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const double dd = dist(tree[i].pose.position(), q_new.position());
      if (dd <= radius) near.push_back({dd, i});
    }
    std::sort(near.begin(), near.end());
    if (near.size() > config.max_neighbors) near.resize(config.max_neighbors);

    Node node{q_new, nearest, tree[nearest].cost + first.length(), first};
    // Goal samples may hang off any node: scan in order of the Euclidean
    // lower bound on cost-to-come and stop once it cannot improve.
    std::vector<std::pair<double, std::size_t>> parents = near;
    if (to_goal) {
      parents.clear();
      for (std::size_t i = 0; i < tree.size(); ++i) {
        parents.push_back({tree[i].cost + dist(tree[i].pose.position(), q_new.position()), i});
      }
      std::sort(parents.begin(), parents.end());
    }
    for (const auto& [bound, i] : parents) {
      if (to_goal && bound >= node.cost) break;
      if (i == nearest) continue;
      const auto c = dubins_shortest(tree[i].pose, q_new, rho);
      if (!c || tree[i].cost + c->length() >= node.cost) continue;
      if (!curve_free(env, *c, config.step)) continue;
      node = {q_new, i, tree[i].cost + c->length(), *c};
    }
    const std::size_t id = tree.size();
    tree.push_back(node);
    children.emplace_back();
    children[node.parent].push_back(id);

    // Rewire neighbours through the new node when cheaper.
    for (const auto& [dd, i] : near) {
      if (i == node.parent || i == 0) continue;
      const auto c = dubins_shortest(q_new, tree[i].pose, rho);
      if (!c || node.cost + c->length() >= tree[i].cost - 1e-12) continue;
      if (!curve_free(env, *c, config.step)) continue;
      const double delta = tree[i].cost - (node.cost + c->length());
      auto& siblings = children[tree[i].parent];
      siblings.erase(std::find(siblings.begin(), siblings.end(), i));
      children[id].push_back(i);
      tree[i].parent = id;
      tree[i].incoming = *c;
      // Propagate the saving to the whole subtree.
      std::vector<std::size_t> stack{i};
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        tree[u].cost -= delta;
        stack.insert(stack.end(), children[u].begin(), children[u].end());
      }
    }

    if (contains(entry, q_new.position())) {
      if (!best_goal) found_at = it;
      if (!best_goal || node.cost < tree[*best_goal].cost) best_goal = id;
    }
  }
  // Rewiring may have lowered costs of other goal nodes.
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (best_goal && contains(entry, tree[i].pose.position()) && tree[i].cost < tree[*best_goal].cost) best_goal = i;
  }
  if (!best_goal) throw BudgetExhausted();

  std::vector<std::size_t> chain;
  for (std::size_t v = *best_goal; v != 0; v = tree[v].parent) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());

  Path path;
  path.poses.push_back(start);
  for (std::size_t v : chain) {
    const DubinsCurve& c = tree[v].incoming;
    const double len = c.length();
    const int n = std::max(1, static_cast<int>(std::ceil(len / config.sample_step)));
    for (int i = 1; i <= n; ++i) path.poses.push_back(c.sample(len * i / n));
    path.length += len;
  }
  for (const VehiclePose& q : path.poses) path.waypoints.push_back(q.position());
  return path;
}

}  // namespace losnet
