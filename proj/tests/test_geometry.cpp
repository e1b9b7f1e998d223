#include <gtest/gtest.h>

#include <random>

#include "sightline/error.hpp"
#include "sightline/geometry.hpp"
#include "support.hpp"

using namespace sightline;

namespace {

const Vec3 kA{0, 0, 0}, kB{1, 0, 0}, kC{0, 1, 0};

Segment down_z(double x, double y) { return Segment::make({x, y, 1}, {0, 0, -1}, 0.0, 10.0); }

}  // namespace

TEST(Segment, RejectsNonUnitDirection) {
  EXPECT_THROW(Segment::make({0, 0, 0}, {0, 0, 2}, 0, 1), ValidationError);
  EXPECT_THROW(Segment::make({0, 0, 0}, {0, 0, 1}, 1, 1), ValidationError);
  EXPECT_THROW(Segment::make({0, 0, 0}, {0, 0, 1}, -1, 1), ValidationError);
  EXPECT_NO_THROW(Segment::make({0, 0, 0}, {0, 0, 1}, 0, 1));
}

TEST(RayTriangle, InteriorHitDistance) {
  auto h = ray_triangle_intersect(down_z(0.25, 0.25), kA, kB, kC);
  ASSERT_TRUE(h);
  EXPECT_DOUBLE_EQ(h->t, 1.0);
}

TEST(RayTriangle, EdgesAndVerticesCount) {
  EXPECT_TRUE(ray_triangle_intersect(down_z(0.5, 0.0), kA, kB, kC));
  EXPECT_TRUE(ray_triangle_intersect(down_z(0.5, 0.5), kA, kB, kC));
  EXPECT_TRUE(ray_triangle_intersect(down_z(0.0, 0.0), kA, kB, kC));
  EXPECT_TRUE(ray_triangle_intersect(down_z(1.0, 0.0), kA, kB, kC));
  EXPECT_FALSE(ray_triangle_intersect(down_z(0.51, 0.51), kA, kB, kC));
}

TEST(RayTriangle, TwoSided) {
  auto up = Segment::make({0.2, 0.2, -1}, {0, 0, 1}, 0.0, 10.0);
  ASSERT_TRUE(ray_triangle_intersect(up, kA, kB, kC));
  ASSERT_TRUE(ray_triangle_intersect(up, kA, kC, kB));
}

TEST(RayTriangle, ParallelMisses) {
  auto s = Segment::make({-1, 0.2, 0}, {1, 0, 0}, 0.0, 10.0);
  EXPECT_FALSE(ray_triangle_intersect(s, kA, kB, kC));
}

TEST(RayTriangle, IntervalIsClosed) {
  EXPECT_TRUE(ray_triangle_intersect(Segment::make({0.2, 0.2, 1}, {0, 0, -1}, 1.0, 2.0), kA, kB, kC));
  EXPECT_TRUE(ray_triangle_intersect(Segment::make({0.2, 0.2, 1}, {0, 0, -1}, 0.0, 1.0), kA, kB, kC));
  EXPECT_FALSE(ray_triangle_intersect(Segment::make({0.2, 0.2, 1}, {0, 0, -1}, 0.0, 0.99), kA, kB, kC));
  EXPECT_FALSE(ray_triangle_intersect(Segment::make({0.2, 0.2, 1}, {0, 0, -1}, 1.01, 3.0), kA, kB, kC));
}

TEST(RayTriangle, MatchesPlaneIntersectionOracle) {
  // Independent oracle: intersect the plane, then test barycentrics by area ratios.
  std::mt19937_64 rng(7);
  int hits = 0, disagree = 0;
  for (int i = 0; i < 2000; ++i) {
    const Vec3 a = support::random_point(rng, -1, 1), b = support::random_point(rng, -1, 1),
               c = support::random_point(rng, -1, 1);
    if (triangle_area(a, b, c) < 1e-3) continue;
    // aim near the triangle so that roughly half the rays hit
    const Vec3 o = support::random_point(rng, -3, 3);
    std::uniform_real_distribution<double> w(-0.3, 1.0);
    const Vec3 d = normalize(a + (b - a) * w(rng) + (c - a) * w(rng) - o);
    const auto seg = Segment::make(o, d, 0.0, 100.0);
    const Vec3 n = cross(b - a, c - a);
    const double denom = dot(n, d);
    std::optional<double> expected;
    if (std::abs(denom) > 1e-9) {
      const double t = dot(n, a - o) / denom;
      const Vec3 p = o + d * t;
      const double total = length(n);
      const double s = length(cross(b - p, c - p)) + length(cross(c - p, a - p)) + length(cross(a - p, b - p));
      if (t >= 0 && std::abs(s - total) < 1e-9 * std::max(1.0, total)) expected = t;
    }
    const auto got = ray_triangle_intersect(seg, a, b, c);
    // the two tests may only disagree on grazing rays
    if (expected.has_value() != got.has_value()) {
      ++disagree;
      continue;
    }
    if (got) {
      EXPECT_NEAR(got->t, *expected, 1e-9);
      ++hits;
    }
  }
  EXPECT_GT(hits, 300);
  EXPECT_LE(disagree, 2);
}

TEST(TriMesh, RejectsDegenerateAndOutOfRange) {
  TriMesh m;
  auto a = m.add_vertex({0, 0, 0}), b = m.add_vertex({1, 0, 0}), c = m.add_vertex({2, 0, 0});
  EXPECT_THROW(m.add_triangle(a, b, c, Owner::Static), Error);
  EXPECT_THROW(m.add_triangle(a, b, 7, Owner::Static), Error);
  EXPECT_THROW(m.add_vertex({std::nan(""), 0, 0}), Error);
}

TEST(TriMesh, BoxIsClosedAndBounded) {
  TriMesh m;
  const Aabb box{{-1, 0, 2}, {1, 3, 5}};
  add_box(m, box, Owner::Filler);
  EXPECT_EQ(m.triangle_count(), 12u);
  EXPECT_EQ(mesh_bounds(m), box);
  for (auto o : m.owners()) EXPECT_EQ(o, Owner::Filler);
  // an axis line through the centre crosses two faces, each on its diagonal edge
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 d{0, 0, 0};
    d[axis] = 1;
    const Vec3 start = box.center() - d * 10.0;
    const auto seg = Segment::make(start, d, 0, 20);
    int n = 0;
    for (std::size_t i = 0; i < m.triangle_count(); ++i) {
      const auto t = m.triangle(i);
      n += ray_triangle_intersect(seg, t[0], t[1], t[2]) ? 1 : 0;
    }
    EXPECT_EQ(n, 4) << "axis " << axis;
  }
}

TEST(TriMesh, EmptyBoundsThrow) { EXPECT_THROW(mesh_bounds(TriMesh{}), Error); }

TEST(TriMesh, CylinderStaysInsideRadius) {
  TriMesh m;
  add_cylinder(m, {2, 0.1, -3}, 0.3, 9.0, 16, Owner::Static);
  const Aabb b = mesh_bounds(m);
  EXPECT_DOUBLE_EQ(b.min.y, 0.1);
  EXPECT_DOUBLE_EQ(b.max.y, 9.1);
  for (const auto& v : m.vertices()) EXPECT_LE(std::hypot(v.x - 2, v.z + 3), 0.3 + 1e-12);
}

TEST(Aabb, SlabIntersection) {
  const Aabb box{{0, 0, 0}, {1, 1, 1}};
  auto r = intersect_box(box, {-1, 0.5, 0.5}, {1, 0, 0}, 0, 10);
  ASSERT_TRUE(r);
  EXPECT_DOUBLE_EQ(r->first, 1.0);
  EXPECT_DOUBLE_EQ(r->second, 2.0);
  EXPECT_FALSE(intersect_box(box, {-1, 2, 0.5}, {1, 0, 0}, 0, 10));
  EXPECT_FALSE(intersect_box(box, {-1, 0.5, 0.5}, {1, 0, 0}, 0, 0.5));
}

TEST(ClosestPoint, RegionsOfATriangle) {
  const Vec3 in = closest_point_on_triangle({0.2, 0.2, 5}, kA, kB, kC);
  EXPECT_NEAR(in.x, 0.2, 1e-12);
  EXPECT_NEAR(in.y, 0.2, 1e-12);
  EXPECT_NEAR(in.z, 0.0, 1e-12);
  EXPECT_EQ(closest_point_on_triangle({-1, -1, 0}, kA, kB, kC), kA);
  EXPECT_EQ(closest_point_on_triangle({3, -1, 0}, kA, kB, kC), kB);
  const Vec3 e = closest_point_on_triangle({1, 1, 0}, kA, kB, kC);
  EXPECT_NEAR(e.x, 0.5, 1e-12);
  EXPECT_NEAR(e.y, 0.5, 1e-12);
}
