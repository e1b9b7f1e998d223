#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "sightline/geometry.hpp"

namespace sightline::support {

// Linear-scan first hit: smallest t, lowest triangle index among ties.
inline std::optional<Hit> brute_first_hit(const TriMesh& mesh, const Segment& seg) {
  std::optional<double> best_t;
  for (std::size_t i = 0; i < mesh.triangle_count(); ++i) {
    const auto tri = mesh.triangle(i);
    if (auto h = ray_triangle_intersect(seg, tri[0], tri[1], tri[2]))
      if (!best_t || h->t < *best_t) best_t = h->t;
  }
  if (!best_t) return std::nullopt;
  for (std::size_t i = 0; i < mesh.triangle_count(); ++i) {
    const auto tri = mesh.triangle(i);
    auto h = ray_triangle_intersect(seg, tri[0], tri[1], tri[2]);
    if (h && h->t <= *best_t + kHitTieEpsilon)
      return Hit{h->t, seg.at(h->t), static_cast<std::uint32_t>(i), mesh.owners()[i]};
  }
  return std::nullopt;
}

inline Vec3 random_point(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return {d(rng), d(rng), d(rng)};
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Vec3 v{n(rng), n(rng), n(rng)};
    if (length(v) > 1e-6) return normalize(v);
  }
}

// Random small triangles scattered through a cube.
inline TriMesh random_soup(std::mt19937_64& rng, std::size_t count, double extent, double size) {
  TriMesh mesh;
  while (mesh.triangle_count() < count) {
    const Vec3 c = random_point(rng, -extent, extent);
    const Vec3 a = c + random_point(rng, -size, size);
    const Vec3 b = c + random_point(rng, -size, size);
    const Vec3 d = c + random_point(rng, -size, size);
    if (triangle_area(a, b, d) <= 1e-6) continue;
    const auto ia = mesh.add_vertex(a), ib = mesh.add_vertex(b), id = mesh.add_vertex(d);
    mesh.add_triangle(ia, ib, id, mesh.triangle_count() % 3 == 0 ? Owner::Target : Owner::Static);
  }
  return mesh;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("sightline_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace sightline::support
