// Times each OpenMP kernel against its serial twin on a cluttered world and
// checks that both produce identical output.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "losnet/kernels.hpp"
#include "losnet/motion.hpp"
#include "losnet/placement.hpp"

using namespace losnet;

namespace {

Polygon square(Point2 c, double h) { return Polygon{{{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}}}; }

Environment cluttered_world() {
  std::vector<Polygon> obstacles;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 4; ++j) obstacles.push_back(square({3.0 + 4.0 * i, 3.0 + 4.0 * j}, 0.8 + 0.1 * ((i + j) % 3)));
  return Environment(Polygon{{{0, 0}, {26, 0}, {26, 18}, {0, 18}}}, std::move(obstacles));
}

std::vector<Point2> free_points(const Environment& env, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, 26.0);
  std::uniform_real_distribution<double> uy(0.0, 18.0);
  std::vector<Point2> out;
  while (out.size() < n) {
    const Point2 p{ux(rng), uy(rng)};
    if (env.strictly_inside(p)) out.push_back(p);
  }
  return out;
}

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-22s %12.4f %12.4f %9.2fx  %s\n", name, serial * 1e3, parallel * 1e3, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  const Environment env = cluttered_world();
  const std::vector<Point2> points = free_points(env, 400, 1);
  const std::vector<Point2> units = free_points(env, 8, 2);
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-22s %12s %12s %10s\n", "kernel", "serial ms", "parallel ms", "speedup");

  std::vector<Polygon> vs, vp;
  const double t_vs = best_of(3, [&] { vs = kernels::visibility_polygons_serial(env, points); });
  const double t_vp = best_of(3, [&] { vp = kernels::visibility_polygons(env, points); });
  row("visibility_polygons", t_vs, t_vp, vs == vp);

  std::vector<std::uint8_t> ls, lp;
  const double t_ls = best_of(3, [&] { ls = kernels::los_matrix_serial(env, points, points); });
  const double t_lp = best_of(3, [&] { lp = kernels::los_matrix(env, points, points); });
  row("los_matrix", t_ls, t_lp, ls == lp);

  std::vector<Region> vis;
  for (const Polygon& p : kernels::visibility_polygons(env, units)) vis.push_back(Region::from(p));
  const std::vector<Region> faces = decompose(vis);
  std::vector<std::uint8_t> cs, cp;
  const double t_cs = best_of(3, [&] { cs = kernels::containment_matrix_serial(faces, vis); });
  const double t_cp = best_of(3, [&] { cp = kernels::containment_matrix(faces, vis); });
  row("containment_matrix", t_cs, t_cp, cs == cp);

  std::vector<Region> targets(faces.begin(), faces.begin() + std::min<std::size_t>(faces.size(), 12));
  std::vector<double> ws, wp;
  const double t_ws = best_of(1, [&] { ws = region_cost_matrix_serial(env, targets); });
  const double t_wp = best_of(1, [&] { wp = region_cost_matrix(env, targets); });
  row("region_cost_matrix", t_ws, t_wp, ws == wp);
  std::printf("(%zu viewpoints, %zu faces, %zu tour regions)\n", points.size(), faces.size(), targets.size());
  return (vs == vp && ls == lp && cs == cp && ws == wp) ? 0 : 1;
}
