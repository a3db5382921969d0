#include "losnet/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace losnet {
namespace {

// Error-free transformations. Each returns (rounded, error) with
// rounded + error == exact result.
struct Pair {
  double hi;
  double lo;
};

Pair two_sum(double a, double b) {
  const double x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  return {x, (a - av) + (b - bv)};
}

Pair two_diff(double a, double b) {
  const double x = a - b;
  const double bv = a - x;
  const double av = x + bv;
  return {x, (a - av) + (bv - b)};
}

Pair two_product(double a, double b) {
  const double x = a * b;
  return {x, std::fma(a, b, -x)};
}

// Exact sign of a sum of doubles via a growing nonoverlapping expansion.
template <std::size_t N>
int exact_sum_sign(const std::array<double, N>& terms) {
  std::array<double, N> expansion{};
  std::size_t len = 0;
  for (double t : terms) {
    double q = t;
    std::size_t out = 0;
    for (std::size_t i = 0; i < len; ++i) {
      const Pair s = two_sum(q, expansion[i]);
      q = s.hi;
      if (s.lo != 0.0) expansion[out++] = s.lo;
    }
    if (q != 0.0) expansion[out++] = q;
    len = out;
  }
  if (len == 0) return 0;
  return expansion[len - 1] > 0.0 ? 1 : -1;
}

int orient2d_exact(Point2 a, Point2 b, Point2 c) {
  const Pair acx = two_diff(a.x, c.x);
  const Pair bcy = two_diff(b.y, c.y);
  const Pair acy = two_diff(a.y, c.y);
  const Pair bcx = two_diff(b.x, c.x);

  std::array<double, 16> terms{};
  std::size_t k = 0;
  const auto push_product = [&](double u, double v, double sign) {
    const Pair p = two_product(u, v);
    terms[k++] = sign * p.hi;
    terms[k++] = sign * p.lo;
  };
  for (double u : {acx.hi, acx.lo})
    for (double v : {bcy.hi, bcy.lo}) push_product(u, v, 1.0);
  for (double u : {acy.hi, acy.lo})
    for (double v : {bcx.hi, bcx.lo}) push_product(u, v, -1.0);
  return exact_sum_sign(terms);
}

}  // namespace

int orient2d(Point2 a, Point2 b, Point2 c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;

  // Shewchuk's first-stage error bound.
  constexpr double eps = std::numeric_limits<double>::epsilon() / 2.0;
  constexpr double bound_a = (3.0 + 16.0 * eps) * eps;
  const double detsum = std::abs(detleft) + std::abs(detright);
  if (std::abs(det) > bound_a * detsum) return det > 0.0 ? 1 : -1;
  return orient2d_exact(a, b, c);
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  if (orient2d(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = orient2d(a, b, c);
  const int o2 = orient2d(a, b, d);
  const int o3 = orient2d(c, d, a);
  const int o4 = orient2d(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  if (segments_cross(a, b, c, d)) return true;
  return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) ||
         on_segment(c, d, b);
}

Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  return dist(p, closest_point_on_segment(p, a, b));
}

}  // namespace losnet
