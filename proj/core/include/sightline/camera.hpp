#pragma once

#include <array>
#include <vector>

#include "sightline/compass.hpp"
#include "sightline/geometry.hpp"
#include "sightline/scenario.hpp"
#include "sightline/scene.hpp"

namespace sightline {

/// Pinhole ray grid. 160 x 90 rays, 60 degree vertical field of view.
struct CameraIntrinsics {
  int width{160};
  int height{90};
  double vertical_fov_deg{60.0};

  int ray_count() const { return width * height; }
  void validate() const;
};

inline const std::vector<double>& default_camera_heights() {
  static const std::vector<double> heights{1.0, 1.2, 1.4, 1.6, 1.8};
  return heights;
}

/// A camera standing at a station, looking horizontally towards a cardinal.
struct CameraPose {
  int station{0};
  Cardinal direction{Cardinal::N};
  double height{1.0};  // above the sidewalk top
  Vec3 position;
  Vec3 forward;
  Vec3 right;
  Vec3 up{0.0, 1.0, 0.0};

  static CameraPose make(int station, const CameraStation& where, Cardinal direction, double height);
};

/// Unit ray directions in camera coordinates (right, up, forward), row-major
/// with pixel (i, j) at index j * width + i. Column i and width-1-i are exact
/// mirror images, as are rows j and height-1-j.
class RayTable {
 public:
  explicit RayTable(const CameraIntrinsics& intr);

  const CameraIntrinsics& intrinsics() const { return intr_; }
  const Vec3& local(int i, int j) const { return dirs_[static_cast<std::size_t>(j * intr_.width + i)]; }
  std::size_t size() const { return dirs_.size(); }
  const std::vector<Vec3>& all() const { return dirs_; }

 private:
  CameraIntrinsics intr_;
  std::vector<Vec3> dirs_;
};

/// Camera-space direction to world space for a pose.
inline Vec3 to_world_direction(const CameraPose& pose, const Vec3& d) {
  return pose.right * d.x + pose.up * d.y + pose.forward * d.z;
}

/// World direction through the centre of pixel (i, j). Throws Error out of range.
Vec3 pixel_direction(const CameraPose& pose, const CameraIntrinsics& intr, int i, int j);

/// Segment through pixel (i, j) spanning the band.
Segment pixel_ray(const CameraPose& pose, const CameraIntrinsics& intr, int i, int j,
                  const RangeBand& band);

}  // namespace sightline
