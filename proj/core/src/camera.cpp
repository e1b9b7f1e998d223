#include "sightline/camera.hpp"

#include <cmath>
#include <numbers>

#include "sightline/error.hpp"

namespace sightline {

void CameraIntrinsics::validate() const {
  std::vector<std::string> issues;
  if (width < 1 || height < 1) issues.emplace_back("image grid must be at least 1 x 1");
  if (!(vertical_fov_deg > 0.0 && vertical_fov_deg < 180.0))
    issues.emplace_back("vertical field of view must lie in (0, 180) degrees");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

CameraPose CameraPose::make(int station, const CameraStation& where, Cardinal direction,
                            double height) {
  CameraPose pose;
  pose.station = station;
  pose.direction = direction;
  pose.height = height;
  pose.position = where.ground + Vec3{0.0, height, 0.0};
  pose.forward = forward_of(direction);
  pose.right = {pose.forward.z, 0.0, -pose.forward.x};
  return pose;
}

RayTable::RayTable(const CameraIntrinsics& intr) : intr_(intr) {
  intr_.validate();
  const double half_h = std::tan(intr.vertical_fov_deg * std::numbers::pi / 360.0);
  const double half_w = half_h * intr.width / intr.height;
  dirs_.reserve(static_cast<std::size_t>(intr.ray_count()));
  for (int j = 0; j < intr.height; ++j) {
    // Written as (2k + 1 - n) / n so opposite pixels get exactly opposite values.
    const double v = static_cast<double>(intr.height - 1 - 2 * j) / intr.height;
    for (int i = 0; i < intr.width; ++i) {
      const double u = static_cast<double>(2 * i + 1 - intr.width) / intr.width;
      dirs_.push_back(normalize(Vec3{u * half_w, v * half_h, 1.0}));
    }
  }
}

Vec3 pixel_direction(const CameraPose& pose, const CameraIntrinsics& intr, int i, int j) {
  if (i < 0 || i >= intr.width || j < 0 || j >= intr.height)
    throw Error("pixel (" + std::to_string(i) + ", " + std::to_string(j) + ") outside the " +
                std::to_string(intr.width) + " x " + std::to_string(intr.height) + " grid");
  const double half_h = std::tan(intr.vertical_fov_deg * std::numbers::pi / 360.0);
  const double half_w = half_h * intr.width / intr.height;
  const double u = static_cast<double>(2 * i + 1 - intr.width) / intr.width;
  const double v = static_cast<double>(intr.height - 1 - 2 * j) / intr.height;
  return to_world_direction(pose, normalize(Vec3{u * half_w, v * half_h, 1.0}));
}

Segment pixel_ray(const CameraPose& pose, const CameraIntrinsics& intr, int i, int j,
                  const RangeBand& band) {
  return Segment::make(pose.position, pixel_direction(pose, intr, i, j), band.min, band.max);
}

}  // namespace sightline
