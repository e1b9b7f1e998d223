#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "sightline/error.hpp"
#include "sightline/grid.hpp"
#include "sightline/vehicle.hpp"
#include "support.hpp"

using namespace sightline;

namespace {

// Distance from p to the surface of an axis-aligned box, computed directly.
double box_surface_distance(const Aabb& b, const Vec3& p) {
  const Vec3 q = b.clamp(p);
  if (q == p) {
    double inside = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) inside = std::min({inside, p[a] - b.min[a], b.max[a] - p[a]});
    return inside;
  }
  return length(p - q);
}

double mesh_distance(const TriMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh.triangle_count(); ++i) {
    const auto t = mesh.triangle(i);
    best = std::min(best, length(p - closest_point_on_triangle(p, t[0], t[1], t[2])));
  }
  return best;
}

}  // namespace

TEST(Grid, UnitCubeHasTwentySixPoints) {
  TriMesh cube;
  const Aabb box{{0, 0, 0}, {1, 1, 1}};
  add_box(cube, box, Owner::Target);
  const auto grid = build_grid(cube, 0.5);
  EXPECT_EQ(grid.size(), 26u);
  for (const auto& idx : grid.points()) {
    EXPECT_LE(box_surface_distance(box, grid.position(idx)), grid.snap_threshold());
    EXPECT_FALSE(idx == (LatticeIndex{1, 1, 1}));
  }
  EXPECT_DOUBLE_EQ(grid.snap_threshold(), 0.5 * std::sqrt(3.0) / 2.0);
}

TEST(Grid, BoxLatticeMatchesAnalyticDistance) {
  TriMesh mesh;
  const Aabb box{{-0.83, 0.0, -2.41}, {0.83, 1.37, 0.0}};
  add_box(mesh, box, Owner::Target);
  const double s = 0.1;
  const auto grid = build_grid(mesh, s);
  std::set<LatticeIndex> want;
  for (int i = -20; i <= 20; ++i)
    for (int j = -5; j <= 20; ++j)
      for (int k = -30; k <= 5; ++k)
        if (box_surface_distance(box, {i * s, j * s, k * s}) <= default_snap_threshold(s) &&
            i >= std::floor(box.min.x / s) && i <= std::ceil(box.max.x / s) &&
            j >= std::floor(box.min.y / s) && j <= std::ceil(box.max.y / s) &&
            k >= std::floor(box.min.z / s) && k <= std::ceil(box.max.z / s))
          want.insert({i, j, k});
  const std::set<LatticeIndex> got(grid.points().begin(), grid.points().end());
  EXPECT_EQ(got, want);
}

TEST(Grid, SuvLatticeIsExactlyTheNearSurfaceSet) {
  const auto model = proxy_vehicle(Catalog::builtin().at("suv"));
  const double s = 0.05;
  const auto grid = build_grid(model.mesh, s, true);
  const double limit = default_snap_threshold(s);
  EXPECT_NEAR(limit, 0.0433, 1e-4);
  std::set<LatticeIndex> retained(grid.points().begin(), grid.points().end());
  for (const auto& idx : grid.points()) {
    // symmetric construction keeps a point whose mirror qualifies; the proxy is symmetric anyway
    EXPECT_LE(mesh_distance(model.mesh, grid.position(idx)), limit + 1e-12);
    EXPECT_TRUE(retained.contains({-idx[0], idx[1], idx[2]}));
  }
  // completeness on a sample of the lattice block
  std::mt19937_64 rng(1);
  const auto lo = grid.origin(), hi = grid.upper();
  for (int n = 0; n < 20000; ++n) {
    LatticeIndex idx;
    for (int a = 0; a < 3; ++a) idx[a] = std::uniform_int_distribution<int>(lo[a], hi[a])(rng);
    const bool near = mesh_distance(model.mesh, grid.position(idx)) <= limit;
    EXPECT_EQ(near, retained.contains(idx));
  }
}

TEST(Grid, OriginIsFlooredBoundsMinimum) {
  const auto model = proxy_vehicle(Catalog::builtin().at("sedan"));
  const auto grid = build_grid(model.mesh, 0.05, true);
  EXPECT_EQ(grid.origin()[0], static_cast<int>(std::floor(model.bounds.min.x / 0.05)));
  EXPECT_EQ(grid.origin()[2], static_cast<int>(std::floor(model.bounds.min.z / 0.05)));
  EXPECT_TRUE(std::is_sorted(grid.points().begin(), grid.points().end()));
}

TEST(Grid, FindAndSnap) {
  const GridPointMap grid(1.0, 1.0, {-2, 0, 0}, {2, 0, 0}, {{-1, 0, 0}, {1, 0, 0}});
  EXPECT_EQ(grid.find({1, 0, 0}), 1u);
  EXPECT_FALSE(grid.find({0, 0, 0}));
  EXPECT_FALSE(grid.find({7, 0, 0}));
  EXPECT_EQ(grid.snap({0.9, 0.1, 0}), 1u);
  EXPECT_EQ(grid.snap({-1.2, 0, 0}), 0u);
  EXPECT_FALSE(grid.snap({3.5, 0, 0}));
  // equidistant: smaller |i| ties, then j, k, then the smaller i
  EXPECT_EQ(grid.snap({0, 0, 0}), 0u);
}

TEST(Grid, SnapPicksNearestRetainedPoint) {
  const auto model = proxy_vehicle(Catalog::builtin().at("sedan"));
  const auto grid = build_grid(model.mesh, 0.1, true);
  std::mt19937_64 rng(9);
  for (int n = 0; n < 2000; ++n) {
    const Vec3 p = support::random_point(rng, -1, 1) + Vec3{0, 0.7, -2.2};
    const auto got = grid.snap(p);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& idx : grid.points()) best = std::min(best, length(grid.position(idx) - p));
    if (best <= grid.snap_threshold()) {
      ASSERT_TRUE(got);
      EXPECT_DOUBLE_EQ(length(grid.position(*got) - p), best);
    } else {
      EXPECT_FALSE(got);
    }
  }
}

TEST(Grid, RejectsBadSpacing) {
  TriMesh cube;
  add_box(cube, {{0, 0, 0}, {1, 1, 1}}, Owner::Target);
  EXPECT_THROW(build_grid(cube, 0.0), ValidationError);
  EXPECT_THROW(build_grid(cube, -1.0), ValidationError);
  EXPECT_THROW(build_grid(TriMesh{}, 0.1), Error);
  // coarser than the mesh is allowed
  EXPECT_GT(build_grid(cube, 2.0).size(), 0u);
}
