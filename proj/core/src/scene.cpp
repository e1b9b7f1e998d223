#include "sightline/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sightline/error.hpp"

namespace sightline {

using nlohmann::json;

std::string_view to_string(DrivingSide side) { return side == DrivingSide::Right ? "right" : "left"; }

DrivingSide parse_driving_side(std::string_view text) {
  if (text == "right") return DrivingSide::Right;
  if (text == "left") return DrivingSide::Left;
  throw ValidationError({"driving_side must be 'right' or 'left', got '" + std::string(text) + "'"});
}

std::vector<double> SceneConfig::station_offsets() const {
  if (!camera_station_offsets.empty()) return camera_station_offsets;
  std::vector<double> out;
  for (int i = 0; i < 10; ++i) out.push_back(road_length * (i + 0.5) / 10.0);
  return out;
}

std::vector<std::string> SceneConfig::issues() const {
  std::vector<std::string> out;
  auto positive = [&out](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back(std::string(name) + " must be > 0");
  };
  positive("road_width", road_width);
  positive("road_length", road_length);
  positive("alley_width", alley_width);
  positive("sidewalk_width", sidewalk_width);
  positive("sidewalk_height", sidewalk_height);
  positive("building_height", building_height);
  positive("building_depth", building_depth);
  positive("bollard_radius", bollard_radius);
  positive("bollard_height", bollard_height);
  positive("bollard_curb_offset", bollard_curb_offset);
  positive("obstacle_spacing", obstacle_spacing);
  positive("obstacle_start", obstacle_start);
  positive("lamp_radius", lamp_radius);
  positive("lamp_height", lamp_height);
  positive("lamp_curb_offset", lamp_curb_offset);
  positive("lamp_spacing", lamp_spacing);
  if (!(sidewalk_width > lamp_curb_offset + lamp_radius))
    out.emplace_back("sidewalk_width must exceed lamp_curb_offset + lamp_radius");
  if (!(sidewalk_width > bollard_curb_offset + 2.0 * bollard_radius))
    out.emplace_back("sidewalk_width must exceed bollard_curb_offset + 2 * bollard_radius");
  if (std::abs(lamp_spacing - 2.0 * obstacle_spacing) > 1e-9)
    out.emplace_back("lamp_spacing must equal 2 * obstacle_spacing (bollards and lamps alternate)");
  if (lamps_per_sidewalk < 0) out.emplace_back("lamps_per_sidewalk must be >= 0");
  if (cylinder_segments < 3) out.emplace_back("cylinder_segments must be >= 3");
  const double az = alley_z();
  if (!(az - alley_width / 2.0 > 0.0 && az + alley_width / 2.0 < road_length))
    out.emplace_back("alley must lie within the road length");
  const auto stations = station_offsets();
  if (stations.size() != 10) out.emplace_back("exactly 10 camera stations are required");
  for (std::size_t i = 0; i < stations.size(); ++i) {
    if (!(stations[i] >= 0.0 && stations[i] <= road_length))
      out.push_back("camera station " + std::to_string(i) + " lies outside [0, road_length]");
    if (i > 0 && !(stations[i] > stations[i - 1]))
      out.emplace_back("camera station offsets must be strictly increasing");
  }
  return out;
}

void SceneConfig::validate() const {
  auto list = issues();
  if (!list.empty()) throw ValidationError(std::move(list));
}

namespace {

struct Field {
  const char* key;
  double SceneConfig::*member;
};

constexpr Field kRealFields[] = {
    {"road_width", &SceneConfig::road_width},
    {"road_length", &SceneConfig::road_length},
    {"alley_width", &SceneConfig::alley_width},
    {"sidewalk_width", &SceneConfig::sidewalk_width},
    {"sidewalk_height", &SceneConfig::sidewalk_height},
    {"building_height", &SceneConfig::building_height},
    {"building_depth", &SceneConfig::building_depth},
    {"bollard_radius", &SceneConfig::bollard_radius},
    {"bollard_height", &SceneConfig::bollard_height},
    {"bollard_curb_offset", &SceneConfig::bollard_curb_offset},
    {"obstacle_spacing", &SceneConfig::obstacle_spacing},
    {"obstacle_start", &SceneConfig::obstacle_start},
    {"lamp_radius", &SceneConfig::lamp_radius},
    {"lamp_height", &SceneConfig::lamp_height},
    {"lamp_curb_offset", &SceneConfig::lamp_curb_offset},
    {"lamp_spacing", &SceneConfig::lamp_spacing},
};

}  // namespace

SceneConfig scene_config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scene: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scene: top level must be an object");
  SceneConfig cfg;
  for (const auto& [key, value] : j.items()) {
    try {
      const auto* field = std::find_if(std::begin(kRealFields), std::end(kRealFields),
                                       [&](const Field& f) { return key == f.key; });
      if (field != std::end(kRealFields)) {
        cfg.*(field->member) = value.get<double>();
      } else if (key == "alley_center") {
        if (!value.is_null()) cfg.alley_center = value.get<double>();
      } else if (key == "lamps_per_sidewalk") {
        cfg.lamps_per_sidewalk = value.get<int>();
      } else if (key == "cylinder_segments") {
        cfg.cylinder_segments = value.get<int>();
      } else if (key == "driving_side") {
        cfg.driving_side = parse_driving_side(value.get<std::string>());
      } else if (key == "camera_station_offsets") {
        cfg.camera_station_offsets = value.get<std::vector<double>>();
      } else {
        throw ParseError("scene: unknown field '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError("scene." + key + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scene file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return scene_config_from_json(buf.str());
}

std::string scene_config_to_json(const SceneConfig& cfg) {
  nlohmann::ordered_json j;
  for (const auto& f : kRealFields) j[f.key] = cfg.*(f.member);
  j["alley_center"] = cfg.alley_z();
  j["lamps_per_sidewalk"] = cfg.lamps_per_sidewalk;
  j["cylinder_segments"] = cfg.cylinder_segments;
  j["driving_side"] = std::string(to_string(cfg.driving_side));
  j["camera_station_offsets"] = cfg.station_offsets();
  return j.dump(2) + "\n";
}

const Slot& StaticScene::slot(int id) const {
  if (id < 1 || id > kSlotCount) throw Error("slot " + std::to_string(id) + " outside 1..8");
  return slots[static_cast<std::size_t>(id - 1)];
}

std::size_t StaticScene::count(ObstacleKind kind) const {
  return static_cast<std::size_t>(std::count_if(obstacles.begin(), obstacles.end(),
                                                [kind](const Obstacle& o) { return o.kind == kind; }));
}

std::vector<Obstacle> sidewalk_obstacles(const SceneConfig& cfg, double side_sign) {
  const double curb = cfg.road_width / 2.0;
  const double alley = cfg.alley_z();
  std::vector<Obstacle> out;
  int lamps = 0;
  for (int k = 0;; ++k) {
    const double z = cfg.obstacle_start + k * cfg.obstacle_spacing;
    if (z > cfg.road_length - cfg.obstacle_start) break;
    const bool bollard = k % 2 == 0;
    const double r = bollard ? cfg.bollard_radius : cfg.lamp_radius;
    if (std::abs(z - alley) < cfg.alley_width / 2.0 + r) continue;
    if (bollard) {
      const double x = curb + cfg.bollard_curb_offset + r;
      out.push_back({ObstacleKind::Bollard, {side_sign * x, cfg.sidewalk_height, z}, r,
                     cfg.bollard_height});
    } else if (lamps < cfg.lamps_per_sidewalk) {
      ++lamps;
      const double x = curb + cfg.lamp_curb_offset + r;
      out.push_back({ObstacleKind::Lamp, {side_sign * x, cfg.sidewalk_height, z}, r, cfg.lamp_height});
    }
  }
  return out;
}

namespace {

StaticScene build_right_hand(const SceneConfig& cfg) {
  StaticScene scene;
  scene.config = cfg;
  scene.config.driving_side = DrivingSide::Right;

  const double curb = cfg.road_width / 2.0;
  const double walk = curb + cfg.sidewalk_width;
  const double outer = walk + cfg.building_depth;
  const double L = cfg.road_length;
  const double az = cfg.alley_z();
  const double a0 = az - cfg.alley_width / 2.0;
  const double a1 = az + cfg.alley_width / 2.0;

  TriMesh& mesh = scene.mesh;
  const auto g0 = mesh.add_vertex({-outer, 0.0, 0.0});
  const auto g1 = mesh.add_vertex({outer, 0.0, 0.0});
  const auto g2 = mesh.add_vertex({outer, 0.0, L});
  const auto g3 = mesh.add_vertex({-outer, 0.0, L});
  mesh.add_triangle(g0, g2, g1, Owner::Static);
  mesh.add_triangle(g0, g3, g2, Owner::Static);

  for (double s : {-1.0, 1.0}) {
    auto span_x = [s](double a, double b) { return s < 0 ? std::pair{-b, -a} : std::pair{a, b}; };
    const auto [sx0, sx1] = span_x(curb, walk);
    add_box(mesh, {{sx0, 0.0, 0.0}, {sx1, cfg.sidewalk_height, L}}, Owner::Static);
    const auto [bx0, bx1] = span_x(walk, outer);
    add_box(mesh, {{bx0, 0.0, 0.0}, {bx1, cfg.building_height, a0}}, Owner::Static);
    add_box(mesh, {{bx0, 0.0, a1}, {bx1, cfg.building_height, L}}, Owner::Static);
  }

  for (double s : {-1.0, 1.0}) {
    for (const auto& o : sidewalk_obstacles(cfg, s)) {
      add_cylinder(mesh, o.base, o.radius, o.height, cfg.cylinder_segments, Owner::Static);
      scene.obstacles.push_back(o);
    }
  }

  const double lane = cfg.road_width / 4.0;
  const double lead = cfg.alley_width / 2.0;
  for (int r = 0; r < 3; ++r) {
    scene.slots[static_cast<std::size_t>(r)] = {r + 1, Facing::S, {-lane, 0.0, az + lead}, r};
    scene.slots[static_cast<std::size_t>(r + 4)] = {r + 5, Facing::N, {lane, 0.0, az - lead}, r};
  }
  scene.slots[3] = {4, Facing::E, {-curb, 0.0, az}, 0};
  scene.slots[7] = {8, Facing::W, {curb, 0.0, az}, 0};

  const double station_x = -(curb + cfg.sidewalk_width / 2.0);
  const auto offsets = cfg.station_offsets();
  for (std::size_t i = 0; i < offsets.size(); ++i)
    scene.stations.push_back(
        {static_cast<char>('A' + i), {station_x, cfg.sidewalk_height, offsets[i]}});
  return scene;
}

}  // namespace

StaticScene build_street(const SceneConfig& cfg) {
  cfg.validate();
  StaticScene scene = build_right_hand(cfg);
  if (cfg.driving_side == DrivingSide::Left) return mirror_scene(scene);
  return scene;
}

StaticScene mirror_scene(const StaticScene& scene) {
  StaticScene out;
  out.config = scene.config;
  out.config.driving_side =
      scene.config.driving_side == DrivingSide::Right ? DrivingSide::Left : DrivingSide::Right;
  out.mesh = scene.mesh.transformed([](const Vec3& v) { return mirror_x(v); });
  out.obstacles = scene.obstacles;
  for (auto& o : out.obstacles) o.base = mirror_x(o.base);
  out.slots = scene.slots;
  for (auto& s : out.slots) {
    s.anchor = mirror_x(s.anchor);
    s.facing = mirror(s.facing);
  }
  out.stations = scene.stations;
  for (auto& st : out.stations) st.ground = mirror_x(st.ground);
  out.mirrored = !scene.mirrored;
  return out;
}

std::vector<PlacedVehicle> place_vehicles(const StaticScene& scene, const Scenario& scenario,
                                          const VehicleModel& model) {
  std::vector<PlacedVehicle> placed;
  auto place = [&](int id, Owner role) {
    const Slot& s = scene.slot(id);
    PlacedVehicle v;
    v.slot = id;
    v.role = role;
    v.facing = s.facing;
    v.pivot = s.pivot(model.spec.pivot_spacing);
    v.reflected = scene.mirrored && model.mirror_symmetric;
    placed.push_back(v);
  };
  place(scenario.target, Owner::Target);
  for (int f : scenario.fillers) {
    if (f == scenario.target) throw Error("slot " + std::to_string(f) + " used twice in a scenario");
    place(f, Owner::Filler);
  }
  std::vector<Aabb> boxes;
  for (const auto& v : placed) boxes.push_back(v.world_bounds(model.bounds));
  for (std::size_t a = 0; a < boxes.size(); ++a) {
    for (std::size_t b = a + 1; b < boxes.size(); ++b) {
      if (placed[a].slot == placed[b].slot)
        throw Error("slot " + std::to_string(placed[a].slot) + " used twice in a scenario");
      if (boxes[a].overlaps_interior(boxes[b]))
        throw Error("vehicles in slots " + std::to_string(placed[a].slot) + " and " +
                    std::to_string(placed[b].slot) + " overlap");
    }
  }
  return placed;
}

std::vector<std::string> check_scene(const StaticScene& scene) {
  std::vector<std::string> issues = scene.config.issues();
  const auto& cfg = scene.config;
  const double curb = cfg.road_width / 2.0;
  const double sign = scene.mirrored ? 1.0 : -1.0;  // camera sidewalk side
  for (const auto& o : scene.obstacles) {
    if (std::abs(o.base.x) - o.radius < curb)
      issues.push_back("obstacle at z=" + std::to_string(o.base.z) + " intrudes into the roadway");
  }
  for (const auto& st : scene.stations) {
    const std::string who = std::string("station ") + st.label;
    const double x = sign * st.ground.x;
    if (st.ground.y != cfg.sidewalk_height) issues.push_back(who + " is not on the sidewalk top");
    if (!(x >= curb && x <= curb + cfg.sidewalk_width))
      issues.push_back(who + " is not on the camera sidewalk");
    for (const auto& o : scene.obstacles) {
      const double dx = st.ground.x - o.base.x, dz = st.ground.z - o.base.z;
      if (std::sqrt(dx * dx + dz * dz) <= o.radius) issues.push_back(who + " stands inside an obstacle");
    }
  }
  return issues;
}

}  // namespace sightline
