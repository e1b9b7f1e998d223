#include <gtest/gtest.h>

#include "sightline/error.hpp"
#include "sightline/scene.hpp"

using namespace sightline;

namespace {

std::vector<double> obstacle_z(const StaticScene& s, double side) {
  std::vector<double> z;
  for (const auto& o : s.obstacles)
    if (o.base.x * side > 0) z.push_back(o.base.z);
  return z;
}

}  // namespace

TEST(Street, DefaultObstacleCounts) {
  const auto s = build_street(SceneConfig{});
  EXPECT_EQ(s.count(ObstacleKind::Bollard), 12u);
  EXPECT_EQ(s.count(ObstacleKind::Lamp), 12u);
  EXPECT_TRUE(check_scene(s).empty());
}

TEST(Street, ObstacleWalkPositions) {
  // 4.0 + 4.5 k up to road_length - 4.0; the alley at 28.86 leaves room for all twelve
  const auto s = build_street(SceneConfig{});
  std::vector<double> want;
  for (int k = 0; k < 12; ++k) want.push_back(4.0 + 4.5 * k);
  for (double side : {-1.0, 1.0}) {
    const auto z = obstacle_z(s, side);
    ASSERT_EQ(z.size(), want.size());
    for (std::size_t i = 0; i < z.size(); ++i) EXPECT_DOUBLE_EQ(z[i], want[i]);
  }
  for (const auto& o : s.obstacles) {
    const bool even = static_cast<int>(std::lround((o.base.z - 4.0) / 4.5)) % 2 == 0;
    EXPECT_EQ(o.kind, even ? ObstacleKind::Bollard : ObstacleKind::Lamp);
  }
}

TEST(Street, NoObstacleInAlleyMouth) {
  SceneConfig cfg;
  cfg.alley_center = 26.5;  // right on a lamp position
  const auto s = build_street(cfg);
  for (const auto& o : s.obstacles)
    EXPECT_GE(std::abs(o.base.z - 26.5), cfg.alley_width / 2 + o.radius);
  EXPECT_EQ(s.count(ObstacleKind::Lamp), 10u);
  EXPECT_TRUE(check_scene(s).empty());
}

TEST(Street, LampCapApplies) {
  SceneConfig cfg;
  cfg.lamps_per_sidewalk = 2;
  EXPECT_EQ(build_street(cfg).count(ObstacleKind::Lamp), 4u);
}

TEST(Street, ObstaclesSitOnTheSidewalks) {
  const SceneConfig cfg;
  const auto s = build_street(cfg);
  for (const auto& o : s.obstacles) {
    EXPECT_DOUBLE_EQ(o.base.y, cfg.sidewalk_height);
    EXPECT_GE(std::abs(o.base.x) - o.radius, cfg.road_width / 2);
    EXPECT_LE(std::abs(o.base.x) + o.radius, cfg.road_width / 2 + cfg.sidewalk_width);
  }
}

TEST(Street, TenStationsOnTheWestSidewalk) {
  const SceneConfig cfg;
  const auto s = build_street(cfg);
  ASSERT_EQ(s.stations.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(s.stations[i].label, static_cast<char>('A' + i));
    EXPECT_DOUBLE_EQ(s.stations[i].ground.x, -(cfg.road_width / 2 + cfg.sidewalk_width / 2));
    EXPECT_NEAR(s.stations[i].ground.z, cfg.road_length * (i + 0.5) / 10, 1e-12);
  }
}

TEST(Street, SlotFacings) {
  const auto s = build_street(SceneConfig{});
  const Facing want[] = {Facing::S, Facing::S, Facing::S, Facing::E, Facing::N, Facing::N, Facing::N, Facing::W};
  for (int id = 1; id <= 8; ++id) EXPECT_EQ(s.slot(id).facing, want[id - 1]) << id;
  EXPECT_THROW(s.slot(9), Error);
}

TEST(SceneConfig, ValidationListsEveryIssue) {
  SceneConfig cfg;
  cfg.road_width = -1;
  cfg.bollard_radius = 0;
  cfg.camera_station_offsets = {1, 2, 3};
  try {
    cfg.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_GE(e.issues().size(), 3u);
  }
  EXPECT_THROW(build_street(cfg), ValidationError);
}

TEST(SceneConfig, JsonRoundTripAndStrictness) {
  SceneConfig cfg;
  cfg.driving_side = DrivingSide::Left;
  cfg.lamps_per_sidewalk = 4;
  const auto text = scene_config_to_json(cfg);
  const auto back = scene_config_from_json(text);
  EXPECT_EQ(back.driving_side, DrivingSide::Left);
  EXPECT_EQ(back.lamps_per_sidewalk, 4);
  EXPECT_EQ(scene_config_to_json(back), text);
  EXPECT_THROW(scene_config_from_json(R"({"road_widht": 7})"), ParseError);
  EXPECT_THROW(scene_config_from_json(R"({"road_width": "wide"})"), ParseError);
  EXPECT_DOUBLE_EQ(scene_config_from_json(R"({"road_width": 8})").road_width, 8.0);
}

TEST(Placement, InLineSpacingAndBumperGap) {
  const auto s = build_street(SceneConfig{});
  const auto model = proxy_vehicle(Catalog::builtin().at("suv"));
  const auto placed = place_vehicles(s, {5, {6}}, model);
  ASSERT_EQ(placed.size(), 2u);
  EXPECT_EQ(placed[0].role, Owner::Target);
  EXPECT_EQ(placed[1].role, Owner::Filler);
  EXPECT_NEAR(placed[0].pivot.z - placed[1].pivot.z, 5.970, 1e-12);
  const Aabb lead = placed[0].world_bounds(model.bounds), follow = placed[1].world_bounds(model.bounds);
  EXPECT_NEAR(lead.min.z - follow.max.z, 1.26, 1e-9);
}

TEST(Placement, SouthboundQueueRunsNorth) {
  const auto s = build_street(SceneConfig{});
  const auto model = proxy_vehicle(Catalog::builtin().at("sedan"));
  const auto placed = place_vehicles(s, {1, {2, 3}}, model);
  EXPECT_LT(placed[0].pivot.z, placed[1].pivot.z);
  EXPECT_LT(placed[1].pivot.z, placed[2].pivot.z);
  for (const auto& v : placed) EXPECT_LT(v.pivot.x, 0.0);
}

TEST(Placement, EveryDefaultScenarioFitsForEveryVehicle) {
  const auto s = build_street(SceneConfig{});
  for (const auto& spec : Catalog::builtin().vehicles()) {
    const auto model = proxy_vehicle(spec);
    for (const auto& plan : MatrixConfig::literal20().facings) {
      const int n = plan.vehicle_counts.back();
      for (const auto& sc : enumerate_scenarios(plan.target_slots, plan.filler_slots, n))
        EXPECT_NO_THROW(place_vehicles(s, sc, model)) << spec.name;
    }
  }
}

TEST(Placement, OverlapIsAnError) {
  auto s = build_street(SceneConfig{});
  s.slots[1].anchor = s.slots[0].anchor;
  s.slots[1].rank = 0;
  const auto model = proxy_vehicle(Catalog::builtin().at("sedan"));
  EXPECT_THROW(place_vehicles(s, {1, {2}}, model), Error);
  EXPECT_THROW(place_vehicles(build_street(SceneConfig{}), {1, {1}}, model), Error);
}

TEST(Mirror, IsAnInvolution) {
  const auto s = build_street(SceneConfig{});
  const auto m = mirror_scene(s);
  const auto mm = mirror_scene(m);
  EXPECT_TRUE(m.mirrored);
  EXPECT_FALSE(mm.mirrored);
  EXPECT_EQ(mm.mesh, s.mesh);
  for (int id = 1; id <= 8; ++id) {
    EXPECT_EQ(mm.slot(id).anchor, s.slot(id).anchor);
    EXPECT_EQ(mm.slot(id).facing, s.slot(id).facing);
    EXPECT_EQ(m.slot(id).facing, mirror(s.slot(id).facing));
  }
  for (std::size_t i = 0; i < s.stations.size(); ++i) {
    EXPECT_EQ(mm.stations[i].ground, s.stations[i].ground);
    EXPECT_EQ(m.stations[i].ground, mirror_x(s.stations[i].ground));
  }
  EXPECT_TRUE(check_scene(m).empty());
}

TEST(Mirror, LeftHandStreetIsTheMirrorImage) {
  SceneConfig cfg;
  cfg.driving_side = DrivingSide::Left;
  const auto left = build_street(cfg);
  EXPECT_EQ(left.driving_side(), DrivingSide::Left);
  EXPECT_EQ(left.mesh, mirror_scene(build_street(SceneConfig{})).mesh);
  EXPECT_GT(left.stations[0].ground.x, 0.0);
  EXPECT_EQ(left.slot(4).facing, Facing::W);
}

TEST(Mirror, ReflectedPlacementMirrorsTheWorldMesh) {
  const auto s = build_street(SceneConfig{});
  const auto m = mirror_scene(s);
  const auto model = proxy_vehicle(Catalog::builtin().at("sedan"));
  const auto a = place_vehicles(s, {4, {1}}, model);
  const auto b = place_vehicles(m, {4, {1}}, model);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto wa = a[i].world_mesh(model.mesh);
    const auto wb = b[i].world_mesh(model.mesh);
    ASSERT_EQ(wa.vertex_count(), wb.vertex_count());
    for (std::size_t v = 0; v < wa.vertex_count(); ++v) EXPECT_EQ(wb.vertices()[v], mirror_x(wa.vertices()[v]));
  }
}
