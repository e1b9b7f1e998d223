#include <benchmark/benchmark.h>

#include <random>

#include "sightline/bvh.hpp"
#include "sightline/scene.hpp"

using namespace sightline;

namespace {

Vec3 unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return normalize(Vec3{n(rng), n(rng), n(rng)});
}

}  // namespace

static void BM_BvhBuildStreet(benchmark::State& state) {
  const StaticScene scene = build_street(SceneConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(Bvh(scene.mesh));
  state.counters["triangles"] = static_cast<double>(scene.mesh.triangle_count());
}
BENCHMARK(BM_BvhBuildStreet)->Unit(benchmark::kMillisecond);

static void BM_BvhFirstHitStreet(benchmark::State& state) {
  const StaticScene scene = build_street(SceneConfig{});
  const Bvh index(scene.mesh);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> z(0.0, 50.0);
  std::vector<Segment> segs;
  for (int i = 0; i < 4096; ++i) segs.push_back(Segment::make({-9.0, 1.4, z(rng)}, unit(rng), 0.0, 75.0));
  std::size_t i = 0, hits = 0;
  for (auto _ : state) {
    hits += index.first_hit(segs[i++ & 4095]).has_value();
  }
  state.SetItemsProcessed(state.iterations());
  benchmark::DoNotOptimize(hits);
}
BENCHMARK(BM_BvhFirstHitStreet);
BENCHMARK_MAIN();
