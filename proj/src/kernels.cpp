#include "losnet/kernels.hpp"

namespace losnet::kernels {

namespace {

bool covered(const Region& face, const Region& cover) {
  return area(subtract(face, cover)) < kAreaEps;
}

}  // namespace

std::vector<Polygon> visibility_polygons(const Environment& env, std::span<const Point2> points) {
  std::vector<Polygon> out(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = visibility_polygon(env, points[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<Polygon> visibility_polygons_serial(const Environment& env,
                                                std::span<const Point2> points) {
  std::vector<Polygon> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back(visibility_polygon(env, p));
  return out;
}

std::vector<std::uint8_t> los_matrix(const Environment& env, std::span<const Point2> from,
                                     std::span<const Point2> to) {
  const std::size_t cols = to.size();
  std::vector<std::uint8_t> out(from.size() * cols, 0);
  const auto cells = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < cells; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    out[idx] = los_visible(env, from[idx / cols], to[idx % cols]) ? 1 : 0;
  }
  return out;
}

std::vector<std::uint8_t> los_matrix_serial(const Environment& env, std::span<const Point2> from,
                                            std::span<const Point2> to) {
  std::vector<std::uint8_t> out;
  out.reserve(from.size() * to.size());
  for (const Point2& a : from) {
    for (const Point2& b : to) out.push_back(los_visible(env, a, b) ? 1 : 0);
  }
  return out;
}

std::vector<std::uint8_t> containment_matrix(std::span<const Region> faces,
                                             std::span<const Region> covers) {
  const std::size_t cols = covers.size();
  std::vector<std::uint8_t> out(faces.size() * cols, 0);
  const auto cells = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < cells; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    out[idx] = covered(faces[idx / cols], covers[idx % cols]) ? 1 : 0;
  }
  return out;
}

std::vector<std::uint8_t> containment_matrix_serial(std::span<const Region> faces,
                                                    std::span<const Region> covers) {
  std::vector<std::uint8_t> out;
  out.reserve(faces.size() * covers.size());
  for (const Region& f : faces) {
    for (const Region& c : covers) out.push_back(covered(f, c) ? 1 : 0);
  }
  return out;
}

}  // namespace losnet::kernels
