#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "sightline/error.hpp"
#include "sightline/grid.hpp"
#include "sightline/render.hpp"
#include "sightline/vehicle.hpp"

using namespace sightline;

namespace {

// Box vehicle whose lattice is populated: roof points get `roof`, the rest `side`.
struct BoxCase {
  TriMesh mesh;
  Heatmap heat;
};

BoxCase box_case(std::uint64_t roof, std::uint64_t side) {
  BoxCase c;
  const Aabb box{{-0.8, 0.0, -4.0}, {0.8, 1.4, 0.0}};
  add_box(c.mesh, box, Owner::Target);
  const auto grid = build_grid(c.mesh, 0.1, true);
  std::vector<std::uint64_t> counts(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) counts[i] = grid.points()[i][1] >= 14 ? roof : side;
  c.heat = heatmap_from_counts("box", grid, counts, roof, {});
  return c;
}

}  // namespace

TEST(Colorize, RampEndpointsAndMidpoint) {
  EXPECT_EQ(colorize(0, 10), (Rgb{0, 0, 255}));
  EXPECT_EQ(colorize(10, 10), (Rgb{255, 0, 0}));
  EXPECT_EQ(colorize(5, 10), (Rgb{0, 255, 0}));
  EXPECT_EQ(colorize(20, 10), (Rgb{255, 0, 0}));
  EXPECT_EQ(colorize(3, 0), (Rgb{0, 0, 255}));
}

TEST(Colorize, HueFallsMonotonically) {
  // red rises while blue falls along the ramp
  Rgb prev = colorize(0, 1000);
  for (std::uint64_t c = 1; c <= 1000; ++c) {
    const Rgb now = colorize(c, 1000);
    EXPECT_LE(now.b, prev.b);
    if (c > 500) EXPECT_GE(now.r, prev.r);
    prev = now;
  }
}

TEST(Views, NamesRoundTrip) {
  for (View v : kAllViews) {
    EXPECT_EQ(parse_view(to_string(v)), v);
    EXPECT_NEAR(length(view_direction(v)), 1.0, 1e-12);
  }
  EXPECT_THROW(parse_view("underneath"), Error);
}

TEST(Render, ImageHasRequestedSize) {
  const auto c = box_case(10, 1);
  for (View v : kAllViews) {
    ViewSpec spec;
    spec.view = v;
    spec.width = 320;
    spec.height = 200;
    const Image img = render_view(c.mesh, c.heat, spec);
    EXPECT_EQ(img.width, 320);
    EXPECT_EQ(img.height, 200);
    EXPECT_EQ(img.rgb.size(), 320u * 200u * 3u);
  }
}

TEST(Render, TopViewShowsOnlyRoofPoints) {
  const auto c = box_case(10, 1);
  ViewSpec spec;
  spec.view = View::Top;
  spec.width = 300;
  spec.height = 400;
  const Image img = render_view(c.mesh, c.heat, spec);
  const Rgb roof = colorize(10, 10), side = colorize(1, 10);
  int roof_pixels = 0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const Rgb p = img.at(x, y);
      EXPECT_NE(p, side) << x << "," << y;
      roof_pixels += p == roof;
    }
  }
  EXPECT_GT(roof_pixels, 1000);
}

TEST(Render, SymmetricHeatmapGivesSymmetricTopView) {
  const auto c = box_case(7, 3);
  ViewSpec spec;
  spec.view = View::Top;
  spec.width = 256;
  spec.height = 256;
  const Image img = render_view(c.mesh, c.heat, spec);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) ASSERT_EQ(img.at(x, y), img.at(img.width - 1 - x, y)) << x << "," << y;
}

TEST(Render, DeterministicAndPpmEncoded) {
  const auto model = proxy_vehicle(Catalog::builtin().at("sedan"));
  const auto grid = build_grid(model.mesh, 0.1, true);
  std::vector<std::uint64_t> counts(grid.size());
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = i % 17;
  const auto heat = heatmap_from_counts("sedan", grid, counts, 20, {});
  ViewSpec spec;
  spec.view = View::FrontLeft;
  spec.width = 160;
  spec.height = 120;
  const Image a = render_view(model.mesh, heat, spec), b = render_view(model.mesh, heat, spec);
  EXPECT_EQ(a, b);
  std::ostringstream ppm;
  write_ppm(ppm, a);
  const std::string header = "P6\n160 120\n255\n";
  EXPECT_EQ(ppm.str().substr(0, header.size()), header);
  EXPECT_EQ(ppm.str().size(), header.size() + 160u * 120u * 3u);
}

TEST(Ply, HeaderMatchesPointCount) {
  const auto c = box_case(10, 1);
  const std::string ply = export_ply(c.heat);
  EXPECT_NE(ply.find("element vertex " + std::to_string(c.heat.points.size()) + "\n"), std::string::npos);
  const auto body = ply.substr(ply.find("end_header\n") + 11);
  EXPECT_EQ(static_cast<std::size_t>(std::count(body.begin(), body.end(), '\n')), c.heat.points.size());
  EXPECT_EQ(export_ply(c.heat), ply);
}

TEST(Ply, EmptyHeatmap) {
  Heatmap h;
  h.grid = {{0, 0, 0}, 0.1, 0.05};
  const std::string ply = export_ply(h);
  EXPECT_NE(ply.find("element vertex 0\n"), std::string::npos);
  EXPECT_EQ(ply.substr(ply.size() - 11), "end_header\n");
}

TEST(Ply, NormalizationByCaptures) {
  Heatmap h;
  h.grid = {{0, 0, 0}, 0.5, 0.4};
  h.captures_total = 10;
  h.points = {{{1, 2, 3}, 5}};
  EXPECT_NE(export_ply(h, Normalization::MapMax).find("0.500000 1.000000 1.500000 255 0 0 5\n"), std::string::npos);
  EXPECT_NE(export_ply(h, Normalization::CapturesTotal).find(" 0 255 0 5\n"), std::string::npos);
}
