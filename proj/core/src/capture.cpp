#include "sightline/capture.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "sightline/error.hpp"

namespace sightline {

namespace {

constexpr double kBoxPad = 1e-6;

}  // namespace

CaptureScene assemble_scene(const StaticScene& scene, const VehicleModel& model,
                            const Scenario& scenario) {
  CaptureScene out;
  out.vehicles = place_vehicles(scene, scenario, model);
  TriMesh world = scene.mesh;
  for (const auto& v : out.vehicles) world.append(v.world_mesh(model.mesh), v.role);
  out.index = Bvh(world);
  out.target_bounds = out.target().world_bounds(model.bounds).padded(kBoxPad);
  return out;
}

bool CaptureWorkspace::first_visit(std::uint32_t point) {
  if (stamp_[point] == epoch_) return false;
  stamp_[point] = epoch_;
  return true;
}

void CaptureWorkspace::next_capture(std::size_t grid_size) {
  if (stamp_.size() != grid_size) {
    stamp_.assign(grid_size, 0);
    epoch_ = 0;
  }
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

namespace {

// Snaps a target hit and applies the band rule; returns the grid point to record.
std::optional<std::uint32_t> record(const CaptureScene& scene, const GridPointMap& grid,
                                    const CameraPose& pose, const RangeBand& band,
                                    OcclusionMode mode, const std::optional<Hit>& hit) {
  if (!hit || hit->owner != Owner::Target) return std::nullopt;
  const auto& target = scene.target();
  const auto q = grid.snap(target.to_local(hit->point));
  if (!q) return std::nullopt;
  if (mode == OcclusionMode::Physical) {
    const double d = length(target.to_world(grid.position(*q)) - pose.position);
    if (d < band.min || d >= band.max) return std::nullopt;
  }
  return q;
}

std::pair<double, double> cast_range(const GridPointMap& grid, const RangeBand& band,
                                     OcclusionMode mode) {
  if (mode == OcclusionMode::Faithful) return {band.min, band.max};
  return {0.0, band.max + grid.snap_threshold()};
}

}  // namespace

CaptureResult data_capture(const CaptureScene& scene, const GridPointMap& grid,
                           const CameraPose& pose, const RayTable& rays, const RangeBand& band,
                           OcclusionMode mode, CaptureWorkspace* workspace) {
  CaptureWorkspace local;
  CaptureWorkspace& ws = workspace ? *workspace : local;
  ws.next_capture(grid.size());

  const auto [lo, hi] = cast_range(grid, band, mode);
  CaptureResult result;
  for (const Vec3& d : rays.all()) {
    ++result.segments_cast;
    Segment seg{pose.position, to_world_direction(pose, d), lo, hi};
    // Rays that miss the target's box cannot record anything; those that
    // enter it only need testing up to where they leave it.
    const auto span = intersect_box(scene.target_bounds, seg.origin, seg.direction, lo, hi);
    if (!span) continue;
    seg.t_max = std::min(hi, span->second + kBoxPad);
    const auto q = record(scene, grid, pose, band, mode, scene.index.first_hit(seg));
    if (q && ws.first_visit(*q)) result.points.push_back(*q);
  }
  std::sort(result.points.begin(), result.points.end());
  return result;
}

CaptureResult data_capture_reference(const CaptureScene& scene, const GridPointMap& grid,
                                     const CameraPose& pose, const CameraIntrinsics& intr,
                                     const RangeBand& band, OcclusionMode mode) {
  const auto [lo, hi] = cast_range(grid, band, mode);
  CaptureResult result;
  for (int j = 0; j < intr.height; ++j) {
    for (int i = 0; i < intr.width; ++i) {
      const Segment seg = pixel_ray(pose, intr, i, j, {lo, hi});
      ++result.segments_cast;
      const auto q = record(scene, grid, pose, band, mode, scene.index.first_hit(seg));
      if (q) result.points.push_back(*q);
    }
  }
  std::sort(result.points.begin(), result.points.end());
  result.points.erase(std::unique(result.points.begin(), result.points.end()), result.points.end());
  return result;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CameraPose> capture_poses(const StaticScene& scene, std::span<const Cardinal> directions,
                                      std::span<const double> heights) {
  std::vector<CameraPose> poses;
  for (std::size_t s = 0; s < scene.stations.size(); ++s)
    for (auto dir : directions)
      for (double h : heights)
        poses.push_back(CameraPose::make(static_cast<int>(s), scene.stations[s], dir, h));
  return poses;
}

std::vector<Cardinal> scene_directions(const StaticScene& scene, const RunSpec& run) {
  std::vector<Cardinal> dirs = run.camera_directions;
  if (scene.mirrored)
    for (auto& d : dirs) d = mirror(d);
  return dirs;
}

Heatmap run_simulation(const RunSpec& run, const StaticScene& scene, const VehicleModel& model,
                       const GridPointMap& grid, const SimulationOptions& options) {
  run.validate();
  if (options.heights.empty()) throw ValidationError({"at least one camera height is required"});
  const Facing expected = scene.mirrored ? mirror(run.facing) : run.facing;
  for (int t : run.target_slots) {
    if (scene.slot(t).facing != expected)
      throw ValidationError({"target slot " + std::to_string(t) + " faces " +
                             std::string(to_string(scene.slot(t).facing)) + ", not " +
                             std::string(to_string(expected))});
  }
  const auto scenarios = enumerate_scenarios(run.target_slots, run.filler_slots, run.vehicle_count);
  const auto directions = scene_directions(scene, run);
  const auto poses = capture_poses(scene, directions, options.heights);
  const RayTable rays(options.intrinsics);
  const unsigned threads =
      std::min<unsigned>(resolve_threads(options.threads), static_cast<unsigned>(poses.size()));

  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(grid.size(), 0));
  std::vector<CaptureWorkspace> workspaces(threads);

  for (const auto& scenario : scenarios) {
    const CaptureScene world = assemble_scene(scene, model, scenario);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&](unsigned w) {
      try {
        for (std::size_t p = next++; p < poses.size(); p = next++) {
          const auto result = data_capture(world, grid, poses[p], rays, run.band, run.mode, &workspaces[w]);
          for (auto q : result.points) ++partial[w][q];
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<std::uint64_t> counts(grid.size(), 0);
  for (const auto& part : partial)
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += part[i];

  RunInfo info;
  info.facing = std::string(to_string(expected));
  info.vehicles = run.vehicle_count;
  info.band = run.band;
  info.mode = std::string(to_string(run.mode));
  info.driving_side = std::string(to_string(scene.driving_side()));
  info.scenarios = scenarios.size();
  info.captures = scenarios.size() * poses.size();
  return heatmap_from_counts(model.spec.name, grid, counts, info.captures, {info});
}

}  // namespace sightline
