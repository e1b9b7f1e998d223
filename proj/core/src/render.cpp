#include "sightline/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "sightline/error.hpp"

namespace sightline {

Rgb colorize(std::uint64_t count, std::uint64_t max_count) {
  if (max_count == 0) return {0, 0, 255};
  const double ratio = std::min(1.0, static_cast<double>(count) / static_cast<double>(max_count));
  const double hue = 240.0 * (1.0 - ratio);
  const double sector = hue / 60.0;
  const int k = std::min(5, static_cast<int>(sector));
  const double f = sector - k;
  double r = 0, g = 0, b = 0;
  switch (k) {
    case 0: r = 1; g = f; break;
    case 1: r = 1 - f; g = 1; break;
    case 2: g = 1; b = f; break;
    case 3: g = 1 - f; b = 1; break;
    case 4: r = f; b = 1; break;
    default: r = 1; b = 1 - f; break;
  }
  auto byte = [](double v) { return static_cast<std::uint8_t>(std::lround(255.0 * v)); };
  return {byte(r), byte(g), byte(b)};
}

std::string_view to_string(View v) {
  switch (v) {
    case View::Front: return "front";
    case View::FrontRight: return "front-right";
    case View::Right: return "right";
    case View::BackRight: return "back-right";
    case View::Back: return "back";
    case View::BackLeft: return "back-left";
    case View::Left: return "left";
    case View::FrontLeft: return "front-left";
    case View::Top: return "top";
  }
  return "?";
}

View parse_view(std::string_view text) {
  for (auto v : kAllViews)
    if (to_string(v) == text) return v;
  throw Error("unknown view '" + std::string(text) + "'");
}

Vec3 view_direction(View v) {
  const double h = std::sqrt(0.5);
  switch (v) {
    case View::Front: return {0, 0, -1};
    case View::FrontRight: return {-h, 0, -h};
    case View::Right: return {-1, 0, 0};
    case View::BackRight: return {-h, 0, h};
    case View::Back: return {0, 0, 1};
    case View::BackLeft: return {h, 0, h};
    case View::Left: return {1, 0, 0};
    case View::FrontLeft: return {h, 0, -h};
    case View::Top: return {0, -1, 0};
  }
  return {0, 0, -1};
}

namespace {

struct Projector {
  Vec3 dir, right, up;
  double cx{0}, cy{0}, scale{1};

  // Screen offset from the image centre in pixels (x right, y up) and depth.
  Vec3 project(const Vec3& p) const {
    return {(dot(p, right) - cx) * scale, (dot(p, up) - cy) * scale, dot(p, dir)};
  }
};

double edge(double ax, double ay, double bx, double by, double px, double py) {
  return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

}  // namespace

Image render_view(const TriMesh& mesh, const Heatmap& heatmap, const ViewSpec& spec) {
  if (spec.width < 1 || spec.height < 1) throw ValidationError({"image size must be positive"});
  Projector pr;
  pr.dir = view_direction(spec.view);
  const Vec3 world_up = spec.view == View::Top ? Vec3{0, 0, 1} : Vec3{0, 1, 0};
  pr.right = cross(world_up, pr.dir);
  pr.up = cross(pr.dir, pr.right);

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& v : mesh.vertices()) {
    x0 = std::min(x0, dot(v, pr.right));
    x1 = std::max(x1, dot(v, pr.right));
    y0 = std::min(y0, dot(v, pr.up));
    y1 = std::max(y1, dot(v, pr.up));
  }
  if (mesh.empty()) x0 = x1 = y0 = y1 = 0.0;
  pr.cx = (x0 + x1) / 2.0;
  pr.cy = (y0 + y1) / 2.0;
  pr.scale = spec.scale;
  if (pr.scale <= 0.0) {
    const double ex = std::max(x1 - x0, 1e-9), ey = std::max(y1 - y0, 1e-9);
    pr.scale = 0.9 * std::min(spec.width / ex, spec.height / ey);
  }

  const int W = spec.width, H = spec.height;
  const auto n = static_cast<std::size_t>(W) * H;
  Image img{W, H, std::vector<std::uint8_t>(3 * n, 255)};
  std::vector<double> zbuf(n, std::numeric_limits<double>::infinity());
  // Pixel centre relative to the image centre; exact for integer sizes.
  auto px = [W](int x) { return x + 0.5 - W / 2.0; };
  auto py = [H](int y) { return H / 2.0 - (y + 0.5); };
  auto col = [W](double a) { return a + W / 2.0 - 0.5; };
  auto row = [H](double b) { return H / 2.0 - b - 0.5; };

  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto [a, b, c] = mesh.triangle(t);
    const Vec3 pa = pr.project(a), pb = pr.project(b), pc = pr.project(c);
    const double area = edge(pa.x, pa.y, pb.x, pb.y, pc.x, pc.y);
    if (area == 0.0) continue;
    const Vec3 normal = normalize(cross(b - a, c - a));
    const auto gray = static_cast<std::uint8_t>(std::lround(60.0 + 160.0 * std::abs(dot(normal, pr.dir))));
    const int xa = std::max(0, static_cast<int>(std::floor(col(std::min({pa.x, pb.x, pc.x})))));
    const int xb = std::min(W - 1, static_cast<int>(std::ceil(col(std::max({pa.x, pb.x, pc.x})))));
    const int ya = std::max(0, static_cast<int>(std::floor(row(std::max({pa.y, pb.y, pc.y})))));
    const int yb = std::min(H - 1, static_cast<int>(std::ceil(row(std::min({pa.y, pb.y, pc.y})))));
    for (int y = ya; y <= yb; ++y) {
      for (int x = xa; x <= xb; ++x) {
        const double qx = px(x), qy = py(y);
        const double w0 = edge(pb.x, pb.y, pc.x, pc.y, qx, qy);
        const double w1 = edge(pc.x, pc.y, pa.x, pa.y, qx, qy);
        const double w2 = edge(pa.x, pa.y, pb.x, pb.y, qx, qy);
        const bool inside = (w0 >= 0 && w1 >= 0 && w2 >= 0) || (w0 <= 0 && w1 <= 0 && w2 <= 0);
        if (!inside) continue;
        const double depth = (w0 * pa.z + w1 * pb.z + w2 * pc.z) / area;
        const auto i = static_cast<std::size_t>(y) * W + x;
        if (depth < zbuf[i]) {
          zbuf[i] = depth;
          img.rgb[3 * i] = img.rgb[3 * i + 1] = img.rgb[3 * i + 2] = gray;
        }
      }
    }
  }

  const std::uint64_t max_count = spec.normalization == Normalization::MapMax
                                      ? heatmap.max_count()
                                      : heatmap.captures_total;
  const double half = heatmap.grid.spacing * pr.scale / 2.0;
  const double bias = heatmap.grid.spacing;
  std::vector<double> pdepth(n, std::numeric_limits<double>::infinity());
  std::vector<std::uint64_t> pcount(n, 0);
  for (const auto& p : heatmap.points) {
    const Vec3 s = pr.project(heatmap.local_position(p.ijk));
    const int xa = std::max(0, static_cast<int>(std::floor(col(s.x - half))));
    const int xb = std::min(W - 1, static_cast<int>(std::ceil(col(s.x + half))));
    const int ya = std::max(0, static_cast<int>(std::floor(row(s.y + half))));
    const int yb = std::min(H - 1, static_cast<int>(std::ceil(row(s.y - half))));
    const Rgb color = colorize(p.count, max_count);
    for (int y = ya; y <= yb; ++y) {
      for (int x = xa; x <= xb; ++x) {
        if (std::abs(px(x) - s.x) > half || std::abs(py(y) - s.y) > half) continue;
        const auto i = static_cast<std::size_t>(y) * W + x;
        if (s.z > zbuf[i] + bias) continue;  // behind the surface
        if (s.z < pdepth[i] || (s.z == pdepth[i] && p.count > pcount[i])) {
          pdepth[i] = s.z;
          pcount[i] = p.count;
          img.rgb[3 * i] = color.r;
          img.rgb[3 * i + 1] = color.g;
          img.rgb[3 * i + 2] = color.b;
        }
      }
    }
  }
  return img;
}

void write_ppm(std::ostream& out, const Image& image) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.rgb.data()),
            static_cast<std::streamsize>(image.rgb.size()));
}

std::string export_ply(const Heatmap& heatmap, Normalization normalization) {
  const std::uint64_t max_count =
      normalization == Normalization::MapMax ? heatmap.max_count() : heatmap.captures_total;
  std::string out = "ply\nformat ascii 1.0\nelement vertex " + std::to_string(heatmap.points.size()) +
                    "\nproperty float x\nproperty float y\nproperty float z\n"
                    "property uchar red\nproperty uchar green\nproperty uchar blue\n"
                    "property double count\nend_header\n";
  char line[160];
  for (const auto& p : heatmap.points) {
    const Vec3 v = heatmap.local_position(p.ijk);
    const Rgb c = colorize(p.count, max_count);
    std::snprintf(line, sizeof line, "%.6f %.6f %.6f %u %u %u %llu\n", v.x, v.y, v.z,
                  static_cast<unsigned>(c.r), static_cast<unsigned>(c.g), static_cast<unsigned>(c.b),
                  static_cast<unsigned long long>(p.count));
    out += line;
  }
  return out;
}

}  // namespace sightline
