// Data-parallel geometry kernels. Each OpenMP kernel has a `_serial` twin
// computing the identical result in index order; tests compare the two and
// bench/ times them.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "losnet/geometry.hpp"

namespace losnet::kernels {

/// Visibility polygon of every viewpoint.
std::vector<Polygon> visibility_polygons(const Environment& env, std::span<const Point2> points);
std::vector<Polygon> visibility_polygons_serial(const Environment& env,
                                                std::span<const Point2> points);

/// Row-major |from| x |to| line-of-sight matrix (1 = visible).
std::vector<std::uint8_t> los_matrix(const Environment& env, std::span<const Point2> from,
                                     std::span<const Point2> to);
std::vector<std::uint8_t> los_matrix_serial(const Environment& env, std::span<const Point2> from,
                                            std::span<const Point2> to);

/// Row-major |faces| x |covers| matrix: 1 when area(face \ cover) < kAreaEps.
std::vector<std::uint8_t> containment_matrix(std::span<const Region> faces,
                                             std::span<const Region> covers);
std::vector<std::uint8_t> containment_matrix_serial(std::span<const Region> faces,
                                                    std::span<const Region> covers);

}  // namespace losnet::kernels
