#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace sightline {

// World frame: +X east, +Y up, +Z north. Vehicle-local frame: +Z forward,
// +X towards the vehicle's right, +Y up, front bumper plane at z = 0.
struct Vec3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalize(const Vec3& v) { return v / length(v); }

constexpr Vec3 min(const Vec3& a, const Vec3& b) {
  return {a.x < b.x ? a.x : b.x, a.y < b.y ? a.y : b.y, a.z < b.z ? a.z : b.z};
}

constexpr Vec3 max(const Vec3& a, const Vec3& b) {
  return {a.x > b.x ? a.x : b.x, a.y > b.y ? a.y : b.y, a.z > b.z ? a.z : b.z};
}

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Reflection about the x = 0 plane.
constexpr Vec3 mirror_x(const Vec3& v) { return {-v.x, v.y, v.z}; }

// Fixed tolerances of the geometric kernel.
inline constexpr double kMinTriangleArea = 1e-12;
inline constexpr double kHitTieEpsilon = 1e-12;
inline constexpr double kUnitNormTolerance = 1e-9;

struct Aabb {
  Vec3 min{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity()};
  Vec3 max{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};

  constexpr Aabb() = default;
  constexpr Aabb(const Vec3& lo, const Vec3& hi) : min(lo), max(hi) {}

  bool empty() const { return min.x > max.x || min.y > max.y || min.z > max.z; }
  void expand(const Vec3& p) {
    min = sightline::min(min, p);
    max = sightline::max(max, p);
  }
  void expand(const Aabb& b) {
    min = sightline::min(min, b.min);
    max = sightline::max(max, b.max);
  }
  Vec3 extent() const { return max - min; }
  Vec3 center() const { return (min + max) * 0.5; }
  int longest_axis() const;
  bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
           p.z <= max.z;
  }
  bool contains(const Aabb& b) const { return contains(b.min) && contains(b.max); }
  /// Interiors overlap (touching faces do not count).
  bool overlaps_interior(const Aabb& b) const {
    return min.x < b.max.x && b.min.x < max.x && min.y < b.max.y && b.min.y < max.y &&
           min.z < b.max.z && b.min.z < max.z;
  }
  Vec3 clamp(const Vec3& p) const { return sightline::max(min, sightline::min(max, p)); }
  Aabb padded(double pad) const {
    return {min - Vec3{pad, pad, pad}, max + Vec3{pad, pad, pad}};
  }
  bool operator==(const Aabb&) const = default;
};

/// Parametric interval of a ray against a box; nullopt if the ray misses it
/// within [t_lo, t_hi].
std::optional<std::pair<double, double>> intersect_box(const Aabb& box, const Vec3& origin,
                                                       const Vec3& direction, double t_lo,
                                                       double t_hi);

/// Ray segment origin + t * direction, t in [t_min, t_max]; direction is unit length.
struct Segment {
  Vec3 origin;
  Vec3 direction;
  double t_min{0.0};
  double t_max{0.0};

  /// Validating constructor; throws Error on a non-unit direction or an empty interval.
  static Segment make(const Vec3& origin, const Vec3& direction, double t_min, double t_max);
  Vec3 at(double t) const { return origin + direction * t; }
};

enum class Owner : std::uint8_t { Static = 0, Target = 1, Filler = 2 };

const char* to_string(Owner owner);

using TriangleIndices = std::array<std::uint32_t, 3>;

/// Indexed triangle soup with a per-triangle owner tag.
class TriMesh {
 public:
  std::uint32_t add_vertex(const Vec3& v);
  /// Throws Error if an index is out of range or the triangle is degenerate.
  void add_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c, Owner owner);
  /// Appends another mesh, re-tagging its triangles with `owner`.
  void append(const TriMesh& other, Owner owner);
  void append(const TriMesh& other);

  std::span<const Vec3> vertices() const { return vertices_; }
  std::span<const TriangleIndices> triangles() const { return triangles_; }
  std::span<const Owner> owners() const { return owners_; }
  std::size_t triangle_count() const { return triangles_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  bool empty() const { return triangles_.empty(); }

  std::array<Vec3, 3> triangle(std::size_t i) const {
    const auto& t = triangles_[i];
    return {vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]};
  }

  /// Returns a copy with every vertex passed through `f`; triangle order is preserved.
  template <typename F>
  TriMesh transformed(F&& f) const {
    TriMesh out = *this;
    for (auto& v : out.vertices_) v = f(v);
    return out;
  }

  void reserve(std::size_t vertices, std::size_t triangles);
  bool operator==(const TriMesh&) const = default;

 private:
  std::vector<Vec3> vertices_;
  std::vector<TriangleIndices> triangles_;
  std::vector<Owner> owners_;
};

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Appends a closed axis-aligned box (12 triangles, outward winding).
void add_box(TriMesh& mesh, const Aabb& box, Owner owner);

/// Appends a closed vertical prism approximating a cylinder standing on `base`.
void add_cylinder(TriMesh& mesh, const Vec3& base, double radius, double height, int segments,
                  Owner owner);

/// Tight bounds over all vertices referenced by triangles. Throws Error("empty mesh").
Aabb mesh_bounds(const TriMesh& mesh);

struct TriangleHit {
  double t;
  double u;
  double v;
};

/// Two-sided Moller-Trumbore test. Barycentric range is closed, so hits on
/// edges and vertices count; t must lie in [t_min, t_max].
std::optional<TriangleHit> ray_triangle_intersect(const Segment& seg, const Vec3& v0,
                                                  const Vec3& v1, const Vec3& v2);

struct Hit {
  double t;
  Vec3 point;
  std::uint32_t triangle;
  Owner owner;
};

/// Closest point on triangle (a, b, c) to p.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace sightline
