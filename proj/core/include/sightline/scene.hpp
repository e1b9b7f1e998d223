#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sightline/compass.hpp"
#include "sightline/geometry.hpp"
#include "sightline/scenario.hpp"
#include "sightline/vehicle.hpp"

namespace sightline {

enum class DrivingSide { Right, Left };

std::string_view to_string(DrivingSide side);
DrivingSide parse_driving_side(std::string_view text);

/// Street layout. Road spans x in [-road_width/2, road_width/2] and z in
/// [0, road_length]; cameras stand on the west sidewalk.
struct SceneConfig {
  double road_width{6.94};
  double road_length{57.719};
  double alley_width{2.604};
  /// Along-road position of both alley centrelines; unset = road_length / 2.
  std::optional<double> alley_center;
  double sidewalk_width{2.216};
  double sidewalk_height{0.102};
  double building_height{21.5};
  double building_depth{20.0};
  double bollard_radius{0.305};
  double bollard_height{0.914};
  double bollard_curb_offset{0.063};
  double obstacle_spacing{4.5};
  /// Distance of the first and last obstacle slot from the road ends.
  double obstacle_start{4.0};
  double lamp_radius{0.152};
  double lamp_height{9.0};
  double lamp_curb_offset{0.161};
  double lamp_spacing{9.0};
  int lamps_per_sidewalk{6};
  int cylinder_segments{16};
  DrivingSide driving_side{DrivingSide::Right};
  /// Along-road (z) station positions; empty = 10 evenly spaced defaults.
  std::vector<double> camera_station_offsets;

  double alley_z() const { return alley_center.value_or(road_length / 2.0); }
  std::vector<double> station_offsets() const;
  /// Every violated bound, empty when valid.
  std::vector<std::string> issues() const;
  void validate() const;
};

SceneConfig scene_config_from_json(std::string_view text);
SceneConfig load_scene_config(const std::filesystem::path& path);
std::string scene_config_to_json(const SceneConfig& cfg);

enum class ObstacleKind { Bollard, Lamp };

struct Obstacle {
  ObstacleKind kind;
  Vec3 base;  // centre of the footprint on the sidewalk top
  double radius;
  double height;
};

/// A vehicle position. Vehicles in lane slots queue behind the anchor: the
/// pivot of rank r sits r pivot spacings behind it.
struct Slot {
  int id{0};
  Facing facing{Facing::N};
  Vec3 anchor;
  int rank{0};

  Vec3 pivot(double pivot_spacing) const {
    return anchor - forward_of(facing) * (rank * pivot_spacing);
  }
};

struct CameraStation {
  char label{'A'};
  Vec3 ground;  // on the sidewalk top surface
};

struct StaticScene {
  SceneConfig config;
  TriMesh mesh;
  std::vector<Obstacle> obstacles;
  std::array<Slot, kSlotCount> slots{};
  std::vector<CameraStation> stations;
  /// Reflected about x = 0 relative to the right-hand layout.
  bool mirrored{false};

  const Slot& slot(int id) const;
  std::size_t count(ObstacleKind kind) const;
  DrivingSide driving_side() const { return mirrored ? DrivingSide::Left : DrivingSide::Right; }
};

/// Obstacle slot positions along one sidewalk before lamp capping:
/// z_k = start + k * spacing while z_k <= road_length - start, skipping any
/// whose footprint reaches into the alley mouth.
std::vector<Obstacle> sidewalk_obstacles(const SceneConfig& cfg, double side_sign);

/// Right-hand street, mirrored when cfg.driving_side is Left.
StaticScene build_street(const SceneConfig& cfg);

/// Reflection about the road centre plane (x -> -x). Slot and station ids are
/// kept; slot facings and the driving side swap. An involution, bit for bit.
StaticScene mirror_scene(const StaticScene& scene);

/// Target first, then fillers in slot order. Throws Error when two vehicles overlap.
std::vector<PlacedVehicle> place_vehicles(const StaticScene& scene, const Scenario& scenario,
                                          const VehicleModel& model);

/// Scene invariant report used by `sightline validate`; empty when it passes.
std::vector<std::string> check_scene(const StaticScene& scene);

}  // namespace sightline
