#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sightline/geometry.hpp"
#include "sightline/heatmap.hpp"

namespace sightline {

struct Rgb {
  std::uint8_t r{0};
  std::uint8_t g{0};
  std::uint8_t b{0};
  bool operator==(const Rgb&) const = default;
};

/// Hue ramp from blue (240 degrees) at 0 to red (0 degrees) at max_count,
/// full saturation and value.
Rgb colorize(std::uint64_t count, std::uint64_t max_count);

enum class View { Front, FrontRight, Right, BackRight, Back, BackLeft, Left, FrontLeft, Top };

inline constexpr std::array<View, 9> kAllViews{View::Front,    View::FrontRight, View::Right,
                                               View::BackRight, View::Back,      View::BackLeft,
                                               View::Left,     View::FrontLeft,  View::Top};

std::string_view to_string(View v);
View parse_view(std::string_view text);
/// Direction the camera looks along, in the vehicle-local frame.
Vec3 view_direction(View v);

enum class Normalization { MapMax, CapturesTotal };

struct ViewSpec {
  View view{View::Front};
  int width{1024};
  int height{768};
  double scale{0.0};  // pixels per meter; 0 fits the mesh into the image
  Normalization normalization{Normalization::MapMax};
};

struct Image {
  int width{0};
  int height{0};
  std::vector<std::uint8_t> rgb;  // row-major, top row first

  Rgb at(int x, int y) const {
    const auto i = 3 * (static_cast<std::size_t>(y) * width + x);
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
  bool operator==(const Image&) const = default;
};

/// Orthographic depth-buffered render of the mesh in gray with the heatmap's
/// points splatted as coloured squares of one lattice spacing.
Image render_view(const TriMesh& mesh, const Heatmap& heatmap, const ViewSpec& spec);

void write_ppm(std::ostream& out, const Image& image);

/// ASCII PLY point cloud: one coloured vertex per heatmap point, in point order.
std::string export_ply(const Heatmap& heatmap, Normalization normalization = Normalization::MapMax);

}  // namespace sightline
