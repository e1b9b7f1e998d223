#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sightline/bvh.hpp"
#include "sightline/camera.hpp"
#include "sightline/grid.hpp"
#include "sightline/heatmap.hpp"
#include "sightline/scenario.hpp"
#include "sightline/scene.hpp"
#include "sightline/vehicle.hpp"

namespace sightline {

/// The world of one scenario: static street plus placed target and fillers.
struct CaptureScene {
  Bvh index;
  std::vector<PlacedVehicle> vehicles;  // target first
  Aabb target_bounds;                   // world frame

  const PlacedVehicle& target() const { return vehicles.front(); }
};

CaptureScene assemble_scene(const StaticScene& scene, const VehicleModel& model,
                            const Scenario& scenario);

/// Lattice points recorded by one capture (dense grid indices, sorted, unique).
struct CaptureResult {
  std::vector<std::uint32_t> points;
  std::size_t segments_cast{0};
};

/// Scratch space for repeated captures on one thread.
class CaptureWorkspace {
 public:
  bool first_visit(std::uint32_t point);
  void next_capture(std::size_t grid_size);

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_{0};
};

/// One Data Capture: a full ray grid from `pose`. Faithful mode casts over the
/// band itself. Physical mode casts from the camera and keeps a snapped point
/// when its own distance to the camera lies in [band.min, band.max).
CaptureResult data_capture(const CaptureScene& scene, const GridPointMap& grid,
                           const CameraPose& pose, const RayTable& rays, const RangeBand& band,
                           OcclusionMode mode, CaptureWorkspace* workspace = nullptr);

/// Same contract as data_capture, without the target-box shortcut. For testing.
CaptureResult data_capture_reference(const CaptureScene& scene, const GridPointMap& grid,
                                     const CameraPose& pose, const CameraIntrinsics& intr,
                                     const RangeBand& band, OcclusionMode mode);

struct SimulationOptions {
  CameraIntrinsics intrinsics{};
  std::vector<double> heights = default_camera_heights();
  unsigned threads{0};  // 0 = all cores
};

unsigned resolve_threads(unsigned requested);

/// Poses of one scenario: stations x directions x heights, in that nesting order.
std::vector<CameraPose> capture_poses(const StaticScene& scene, std::span<const Cardinal> directions,
                                      std::span<const double> heights);

/// Camera directions of a run as used in `scene` (mirrored in a mirrored scene).
std::vector<Cardinal> scene_directions(const StaticScene& scene, const RunSpec& run);

/// Runs every scenario x pose capture of `run` and sums the recorded points.
Heatmap run_simulation(const RunSpec& run, const StaticScene& scene, const VehicleModel& model,
                       const GridPointMap& grid, const SimulationOptions& options = {});

}  // namespace sightline
