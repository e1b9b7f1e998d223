#include <benchmark/benchmark.h>

#include "sightline/capture.hpp"

using namespace sightline;

namespace {

struct Fixture {
  StaticScene scene = build_street(SceneConfig{});
  VehicleModel model = proxy_vehicle(Catalog::builtin().at("sedan"));
  GridPointMap grid;
  RayTable rays{CameraIntrinsics{}};
  CaptureScene world;
  std::vector<CameraPose> poses;

  explicit Fixture(double spacing) {
    grid = build_grid(model.mesh, spacing, true);
    world = assemble_scene(scene, model, {6, {5, 7}});
    poses = capture_poses(scene, camera_direction_set(Facing::N), default_camera_heights());
  }
};

}  // namespace

static void BM_GridBuild(benchmark::State& state) {
  const VehicleModel model = proxy_vehicle(Catalog::builtin().at("sedan"));
  const double spacing = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(build_grid(model.mesh, spacing, true));
}
BENCHMARK(BM_GridBuild)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_DataCapture(benchmark::State& state) {
  const Fixture f(0.05);
  const auto mode = state.range(0) ? OcclusionMode::Physical : OcclusionMode::Faithful;
  CaptureWorkspace ws;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(data_capture(f.world, f.grid, f.poses[i++ % f.poses.size()], f.rays, {5, 25}, mode, &ws));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DataCapture)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_RunSimulationSouth(benchmark::State& state) {
  const Fixture f(0.05);
  RunSpec run;
  run.facing = Facing::S;
  run.target_slots = {1, 2, 3};
  run.filler_slots = {1, 2, 3, 4};
  run.vehicle_count = 2;
  run.band = {5, 25};
  run.camera_directions = camera_direction_set(Facing::S);
  SimulationOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(run, f.scene, f.model, f.grid, opt));
}
BENCHMARK(BM_RunSimulationSouth)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
