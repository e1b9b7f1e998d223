#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "sightline/error.hpp"
#include "sightline/obj.hpp"
#include "sightline/vehicle.hpp"
#include "support.hpp"

using namespace sightline;

namespace {

Vec3 bounds_extent(const Aabb& b) { return b.extent(); }

std::vector<Aabb> boxes_named(const ElementMap& m, std::string_view name) {
  std::vector<Aabb> out;
  for (const auto& b : m.boxes())
    if (b.name == name) out.push_back(b.box);
  return out;
}

}  // namespace

TEST(Catalog, ShipsFifteenValidVehicles) {
  const auto& cat = Catalog::builtin();
  ASSERT_EQ(cat.vehicles().size(), 15u);
  std::set<std::string> names;
  for (const auto& v : cat.vehicles()) {
    EXPECT_NO_THROW(v.validate()) << v.name;
    EXPECT_TRUE(names.insert(v.name).second);
    ASSERT_TRUE(v.bumper_gap) << v.name;
    EXPECT_NEAR(v.gap(), *v.bumper_gap, 0.01) << v.name;
  }
}

TEST(Catalog, PivotSpacingFollowsCategory) {
  const auto& cat = Catalog::builtin();
  const std::map<SizeCategory, double> pivots{
      {SizeCategory::S, 3.792}, {SizeCategory::M, 5.970}, {SizeCategory::L, 7.240}, {SizeCategory::XL, 13.730}};
  for (const auto& v : cat.vehicles()) EXPECT_DOUBLE_EQ(v.pivot_spacing, pivots.at(v.category)) << v.name;
  EXPECT_NEAR(cat.at("suv").gap(), 1.26, 1e-9);
  EXPECT_NEAR(cat.at("panel_van").pivot_spacing, 4.89 + 1.08, 1e-9);
}

TEST(Catalog, UnknownNameListsKnownOnes) {
  try {
    Catalog::builtin().at("hovercraft");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("sedan"), std::string::npos);
  }
}

TEST(Catalog, FromJsonResolvesRelativePaths) {
  const auto cat = Catalog::from_json(
      R"({"categories": {"M": {"pivot_spacing": 5.97}},
          "vehicles": [{"name": "x", "category": "M", "height": 1.4, "width": 1.8, "length": 4.5,
                        "mesh": "x.obj", "elements": "x.json"}]})",
      "/data/cars");
  const auto& v = cat.at("x");
  EXPECT_DOUBLE_EQ(v.pivot_spacing, 5.97);
  EXPECT_EQ(*v.mesh_path, std::filesystem::path("/data/cars/x.obj"));
  EXPECT_EQ(*v.element_map_path, std::filesystem::path("/data/cars/x.json"));
}

TEST(Catalog, RejectsBrokenEntries) {
  EXPECT_THROW(Catalog::from_json("{"), ParseError);
  EXPECT_THROW(Catalog::from_json(R"({"vehicles": [{"name": "x"}]})"), ParseError);
  EXPECT_THROW(Catalog::from_json(
                   R"({"vehicles": [{"name": "x", "category": "Q", "height": 1, "width": 1, "length": 1, "pivot_spacing": 2}]})"),
               Error);
  EXPECT_THROW(Catalog::from_json(
                   R"({"vehicles": [{"name": "x", "category": "S", "height": 1, "width": 1, "length": 3, "pivot_spacing": 2}]})"),
               ValidationError);
}

TEST(VehicleSpec, CategoryMismatchIsOnlyAWarning) {
  const auto& minibus = Catalog::builtin().at("minibus");
  EXPECT_NO_THROW(minibus.validate());
  EXPECT_FALSE(minibus.warnings().empty());
  EXPECT_TRUE(Catalog::builtin().at("sedan").warnings().empty());
}

TEST(VehicleSpec, LengthThresholds) {
  EXPECT_EQ(category_for_length(3.99), SizeCategory::S);
  EXPECT_EQ(category_for_length(4.0), SizeCategory::M);
  EXPECT_EQ(category_for_length(6.0), SizeCategory::L);
  EXPECT_EQ(category_for_length(8.0), SizeCategory::XL);
}

TEST(Proxy, BoundsMatchPublishedDimensions) {
  const auto suv = proxy_vehicle(Catalog::builtin().at("suv"));
  const Vec3 e = bounds_extent(suv.bounds);
  EXPECT_NEAR(e.x, 2.08, 1e-9);
  EXPECT_NEAR(e.y, 1.63, 1e-9);
  EXPECT_NEAR(e.z, 4.71, 1e-9);
  const auto moto = proxy_vehicle(Catalog::builtin().at("motorcycle"));
  const Vec3 m = bounds_extent(moto.bounds);
  EXPECT_NEAR(m.x, 0.86, 1e-9);
  EXPECT_NEAR(m.y, 1.15, 1e-9);
  EXPECT_NEAR(m.z, 2.14, 1e-9);
  // local frame: front bumper plane at z = 0, wheels on the ground
  EXPECT_DOUBLE_EQ(suv.bounds.max.z, 0.0);
  EXPECT_DOUBLE_EQ(suv.bounds.min.y, 0.0);
  EXPECT_DOUBLE_EQ(suv.bounds.min.x, -suv.bounds.max.x);
}

TEST(Proxy, EveryVehicleHasConsistentElementMap) {
  for (const auto& spec : Catalog::builtin().vehicles()) {
    const auto model = proxy_vehicle(spec);
    EXPECT_TRUE(model.mirror_symmetric) << spec.name;
    EXPECT_TRUE(is_mirror_symmetric(model.mesh)) << spec.name;
    EXPECT_EQ(model.mesh, proxy_vehicle(spec).mesh) << spec.name;

    std::set<int> priorities;
    for (const auto& b : model.elements.boxes()) {
      EXPECT_TRUE(model.bounds.contains(b.box)) << spec.name << " " << b.name;
      EXPECT_TRUE(priorities.insert(b.priority).second);
    }
    // present and absent split the vocabulary
    std::set<std::string> all;
    for (const auto& p : model.elements.present()) all.insert(p);
    for (const auto& a : model.elements.absent()) EXPECT_TRUE(all.insert(a).second) << spec.name << " " << a;
    EXPECT_EQ(all.size(), kElementCount) << spec.name;
  }
}

TEST(Proxy, HeadlightsTouchTheFrontBumperPlane) {
  for (const auto& spec : Catalog::builtin().vehicles()) {
    const auto model = proxy_vehicle(spec);
    const auto lights = boxes_named(model.elements, "Headlights");
    ASSERT_FALSE(lights.empty()) << spec.name;
    // the bike lamp hangs off the fork, behind the front wheel
    if (spec.style == ProxyStyle::Bike) {
      for (const auto& b : lights) EXPECT_GT(b.min.z, -0.5 * spec.length) << spec.name;
      continue;
    }
    for (const auto& b : lights) EXPECT_DOUBLE_EQ(b.max.z, 0.0) << spec.name;
  }
}

TEST(Proxy, FrontFendersSpanTheFrontWheelArches) {
  for (const auto& spec : Catalog::builtin().vehicles()) {
    const auto model = proxy_vehicle(spec);
    const auto fenders = boxes_named(model.elements, "Front Fenders");
    const auto wheels = boxes_named(model.elements, "Front Wheels");
    ASSERT_FALSE(fenders.empty()) << spec.name;
    ASSERT_FALSE(wheels.empty()) << spec.name;
    for (const auto& w : wheels) {
      bool covered = false;
      for (const auto& f : fenders) {
        covered |= f.min.z <= w.min.z && f.max.z >= w.max.z && f.max.y > w.max.y &&
                   f.min.x <= w.max.x && f.max.x >= w.min.x;
      }
      EXPECT_TRUE(covered) << spec.name;
    }
  }
}

TEST(ElementMap, HighestPriorityWinsAndPointsAreClamped) {
  const Aabb bounds{{-1, 0, -4}, {1, 1.5, 0}};
  const ElementMap map(bounds,
                       {{"Hood", {{-1, 0, -2}, {1, 1.5, 0}}, 1}, {"Headlights", {{0.5, 0, -0.5}, {1, 1, 0}}, 2}},
                       {"Trunk"});
  EXPECT_EQ(map.element_of({0.7, 0.5, -0.2}), "Headlights");
  EXPECT_EQ(map.element_of({0.0, 0.5, -0.2}), "Hood");
  EXPECT_EQ(map.element_of({1.04, 0.5, 0.03}), "Headlights");  // outside the body, clamped in
  EXPECT_FALSE(map.element_of({0, 0.5, -3}));
  EXPECT_TRUE(map.is_absent("Trunk"));
}

TEST(ElementMap, RejectsInvalidDefinitions) {
  const Aabb bounds{{-1, 0, -4}, {1, 1.5, 0}};
  EXPECT_THROW(ElementMap(bounds, {{"Spoiler", bounds, 1}}, {}), ValidationError);
  EXPECT_THROW(ElementMap(bounds, {{"Hood", bounds, 1}, {"Roof", bounds, 1}}, {}), ValidationError);
  EXPECT_THROW(ElementMap(bounds, {{"Hood", {{3, 3, 3}, {4, 4, 4}}, 1}}, {}), ValidationError);
  EXPECT_THROW(ElementMap(bounds, {{"Hood", bounds, 1}}, {"Hood"}), ValidationError);
}

TEST(ElementMap, JsonRoundTrip) {
  const auto model = proxy_vehicle(Catalog::builtin().at("sedan"));
  const std::string text = element_map_to_json(model.elements);
  const ElementMap back = element_map_from_json(text);
  EXPECT_EQ(element_map_to_json(back), text);
  EXPECT_THROW(element_map_from_json(R"({"bounds": {"min": [0,0], "max": [1,1,1]}, "elements": []})"), ParseError);
}

TEST(Obj, RoundTripPreservesMesh) {
  const auto model = proxy_vehicle(Catalog::builtin().at("panel_van"));
  std::stringstream s;
  write_obj(s, model.mesh);
  const auto back = read_obj(s, Owner::Target);
  EXPECT_EQ(back.dropped_degenerate, 0u);
  EXPECT_EQ(back.mesh, model.mesh);
}

TEST(Obj, FanTriangulatesAndDropsDegenerates) {
  std::istringstream in(
      "# quad plus a sliver\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 2 0 0\n"
      "vn 0 0 1\nf 1/1/1 2/2/1 3/3/1 4/4/1\nf 1 2 5\n");
  const auto r = read_obj(in);
  EXPECT_EQ(r.mesh.triangle_count(), 2u);
  EXPECT_EQ(r.dropped_degenerate, 1u);
}

TEST(Obj, ReportsLineNumbers) {
  std::istringstream in("v 0 0 0\nv 1 0 0\nf 1 2 9\n");
  try {
    read_obj(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(LoadVehicle, ExternalMeshWithElementMap) {
  support::TempDir dir("vehicle");
  const auto proxy = proxy_vehicle(Catalog::builtin().at("sedan"));
  {
    std::ofstream obj(dir.path() / "car.obj");
    write_obj(obj, proxy.mesh);
    std::ofstream map(dir.path() / "car.json");
    map << element_map_to_json(proxy.elements);
  }
  VehicleSpec spec = Catalog::builtin().at("sedan");
  spec.mesh_path = dir.path() / "car.obj";
  spec.element_map_path = dir.path() / "car.json";
  const auto model = load_vehicle(spec);
  EXPECT_EQ(model.mesh, proxy.mesh);
  EXPECT_EQ(model.bounds, proxy.bounds);
  EXPECT_TRUE(model.mirror_symmetric);
  EXPECT_EQ(model.elements.boxes().size(), proxy.elements.boxes().size());
}

TEST(MirrorSymmetry, DetectsAsymmetricMesh) {
  TriMesh m;
  const auto a = m.add_vertex({0.1, 0, 0}), b = m.add_vertex({1, 0, 0}), c = m.add_vertex({0.5, 1, 0});
  m.add_triangle(a, b, c, Owner::Target);
  EXPECT_FALSE(is_mirror_symmetric(m));
}

TEST(PlacedVehicle, LocalWorldRoundTrip) {
  for (Facing f : kAllFacings) {
    const PlacedVehicle v{1, Owner::Target, f, {3, 0.1, 20}, false};
    const Vec3 p{0.4, 1.2, -2.5};
    const Vec3 back = v.to_local(v.to_world(p));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(back[i], p[i], 1e-12);
    // local +z is the travel direction
    const Vec3 fwd = v.to_world({0, 0, 1}) - v.to_world({0, 0, 0});
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(fwd[i], forward_of(f)[i], 1e-12);
  }
}
