#include <benchmark/benchmark.h>

#include <random>

#include "wm/hull.hpp"
#include "wm/mesh.hpp"
#include "wm/session.hpp"

namespace {

wm::TriMesh soup(int count) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), off(-0.2, 0.2);
  wm::TriMesh m;
  for (int i = 0; i < count; ++i) {
    const wm::Vec3 c{pos(rng), pos(rng), pos(rng)};
    const auto b = static_cast<std::uint32_t>(m.vertices.size());
    for (int k = 0; k < 3; ++k) m.vertices.push_back(c + wm::Vec3{off(rng), off(rng), off(rng)});
    m.triangles.push_back({b, b + 1, b + 2});
  }
  return m;
}

std::vector<wm::Ray> rays(int count) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<wm::Ray> out;
  for (int i = 0; i < count; ++i) {
    const wm::Vec3 d{n(rng), n(rng), n(rng)};
    out.emplace_back(wm::Vec3{0, 0, -6}, wm::normalized(d + wm::Vec3{0, 0, 3}));
  }
  return out;
}

void BM_BvhBuild(benchmark::State& state) {
  const wm::TriMesh m = soup(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wm::Bvh::build(m));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BvhBuild)->Arg(1000)->Arg(10000);

void BM_RaycastBvh(benchmark::State& state) {
  const wm::TriMesh m = soup(static_cast<int>(state.range(0)));
  const wm::Bvh bvh = wm::Bvh::build(m);
  const auto rs = rays(256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bvh.raycast(m, rs[i++ % rs.size()]));
}
BENCHMARK(BM_RaycastBvh)->Arg(1000)->Arg(10000);

void BM_RaycastLinear(benchmark::State& state) {
  const wm::TriMesh m = soup(static_cast<int>(state.range(0)));
  const auto rs = rays(256);
  std::size_t i = 0;
  for (auto _ : state) {
    const wm::Ray& r = rs[i++ % rs.size()];
    double best = HUGE_VAL;
    for (const auto& t : m.triangles) {
      const auto h = wm::ray_triangle_intersect(r, m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]);
      if (h && h.hit.t < best) best = h.hit.t;
    }
    benchmark::DoNotOptimize(best);
  }
}
BENCHMARK(BM_RaycastLinear)->Arg(1000)->Arg(10000);

void BM_ConvexHull(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<wm::Vec3> pts(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pts) p = {n(rng), n(rng), n(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(wm::convex_hull(pts));
}
BENCHMARK(BM_ConvexHull)->Arg(100)->Arg(1000)->Arg(10000);

void BM_SessionDelta(benchmark::State& state) {
  wm::Scene scene;
  for (int i = 0; i < 8; ++i) {
    wm::SceneNode n;
    n.id = "s" + std::to_string(i);
    n.label.class_name = "ball";
    n.transform.translation = {double(i % 4) - 1.5, double(i / 4) - 0.5, 3.0 + 0.3 * i};
    n.geometry = wm::make_uv_sphere(0.3, 16, 32);
    scene.add_node(n);
  }
  wm::Session s(scene, wm::EngineConfig{});
  long long t = 0;
  for (auto _ : state) {
    const long long dx = (t / 200) % 2 ? -3 : 3;
    benchmark::DoNotOptimize(s.step({t++, wm::DeltaEvent{dx, (t % 7) - 3}}));
  }
}
BENCHMARK(BM_SessionDelta);

}  // namespace

BENCHMARK_MAIN();
