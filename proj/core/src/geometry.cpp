#include "sightline/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "sightline/error.hpp"

namespace sightline {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "validation failed:";
  for (const auto& issue : issues) {
    out += "\n  - ";
    out += issue;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

int Aabb::longest_axis() const {
  const Vec3 e = extent();
  if (e.x >= e.y && e.x >= e.z) return 0;
  return e.y >= e.z ? 1 : 2;
}

std::optional<std::pair<double, double>> intersect_box(const Aabb& box, const Vec3& origin,
                                                       const Vec3& direction, double t_lo,
                                                       double t_hi) {
  for (int axis = 0; axis < 3; ++axis) {
    const double o = origin[axis];
    const double d = direction[axis];
    if (d == 0.0) {
      if (o < box.min[axis] || o > box.max[axis]) return std::nullopt;
      continue;
    }
    const double inv = 1.0 / d;
    double t0 = (box.min[axis] - o) * inv;
    double t1 = (box.max[axis] - o) * inv;
    if (t0 > t1) std::swap(t0, t1);
    t_lo = std::max(t_lo, t0);
    t_hi = std::min(t_hi, t1);
    if (t_lo > t_hi) return std::nullopt;
  }
  return std::make_pair(t_lo, t_hi);
}

Segment Segment::make(const Vec3& origin, const Vec3& direction, double t_min, double t_max) {
  std::vector<std::string> issues;
  if (!is_finite(origin)) issues.emplace_back("segment origin is not finite");
  if (!is_finite(direction) || std::abs(length(direction) - 1.0) > kUnitNormTolerance)
    issues.emplace_back("segment direction is not unit length");
  if (!(t_min >= 0.0)) issues.emplace_back("segment t_min must be >= 0");
  if (!(t_min < t_max)) issues.emplace_back("segment requires t_min < t_max");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return Segment{origin, direction, t_min, t_max};
}

const char* to_string(Owner owner) {
  switch (owner) {
    case Owner::Static:
      return "static";
    case Owner::Target:
      return "target";
    case Owner::Filler:
      return "filler";
  }
  return "unknown";
}

std::uint32_t TriMesh::add_vertex(const Vec3& v) {
  if (!is_finite(v)) throw Error("mesh vertex is not finite");
  vertices_.push_back(v);
  return static_cast<std::uint32_t>(vertices_.size() - 1);
}

void TriMesh::add_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c, Owner owner) {
  const auto n = vertices_.size();
  if (a >= n || b >= n || c >= n) throw Error("triangle index out of range");
  if (triangle_area(vertices_[a], vertices_[b], vertices_[c]) <= kMinTriangleArea)
    throw Error("degenerate triangle");
  triangles_.push_back({a, b, c});
  owners_.push_back(owner);
}

void TriMesh::append(const TriMesh& other, Owner owner) {
  const auto base = static_cast<std::uint32_t>(vertices_.size());
  vertices_.insert(vertices_.end(), other.vertices_.begin(), other.vertices_.end());
  for (const auto& t : other.triangles_) {
    triangles_.push_back({t[0] + base, t[1] + base, t[2] + base});
    owners_.push_back(owner);
  }
}

void TriMesh::append(const TriMesh& other) {
  const auto first = owners_.size();
  append(other, Owner::Static);
  std::copy(other.owners_.begin(), other.owners_.end(), owners_.begin() + first);
}

void TriMesh::reserve(std::size_t vertices, std::size_t triangles) {
  vertices_.reserve(vertices);
  triangles_.reserve(triangles);
  owners_.reserve(triangles);
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * length(cross(b - a, c - a));
}

void add_box(TriMesh& mesh, const Aabb& box, Owner owner) {
  const Vec3& lo = box.min;
  const Vec3& hi = box.max;
  std::array<std::uint32_t, 8> v{};
  for (int i = 0; i < 8; ++i) {
    v[i] = mesh.add_vertex({(i & 1) ? hi.x : lo.x, (i & 2) ? hi.y : lo.y, (i & 4) ? hi.z : lo.z});
  }
  // Faces as quads (outward winding): -x, +x, -y, +y, -z, +z.
  constexpr std::array<std::array<int, 4>, 6> faces{{
      {0, 4, 6, 2},
      {1, 3, 7, 5},
      {0, 1, 5, 4},
      {2, 6, 7, 3},
      {0, 2, 3, 1},
      {4, 5, 7, 6},
  }};
  for (const auto& f : faces) {
    mesh.add_triangle(v[f[0]], v[f[1]], v[f[2]], owner);
    mesh.add_triangle(v[f[0]], v[f[2]], v[f[3]], owner);
  }
}

void add_cylinder(TriMesh& mesh, const Vec3& base, double radius, double height, int segments,
                  Owner owner) {
  std::vector<std::uint32_t> bottom;
  std::vector<std::uint32_t> top;
  bottom.reserve(segments);
  top.reserve(segments);
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / segments;
    const Vec3 offset{radius * std::cos(a), 0.0, radius * std::sin(a)};
    bottom.push_back(mesh.add_vertex(base + offset));
    top.push_back(mesh.add_vertex(base + offset + Vec3{0.0, height, 0.0}));
  }
  const auto bottom_center = mesh.add_vertex(base);
  const auto top_center = mesh.add_vertex(base + Vec3{0.0, height, 0.0});
  for (int i = 0; i < segments; ++i) {
    const int j = (i + 1) % segments;
    mesh.add_triangle(bottom[i], top[i], top[j], owner);
    mesh.add_triangle(bottom[i], top[j], bottom[j], owner);
    mesh.add_triangle(bottom_center, bottom[i], bottom[j], owner);
    mesh.add_triangle(top_center, top[j], top[i], owner);
  }
}

Aabb mesh_bounds(const TriMesh& mesh) {
  if (mesh.empty()) throw Error("empty mesh");
  Aabb box;
  for (const auto& t : mesh.triangles()) {
    for (auto idx : t) box.expand(mesh.vertices()[idx]);
  }
  return box;
}

std::optional<TriangleHit> ray_triangle_intersect(const Segment& seg, const Vec3& v0,
                                                  const Vec3& v1, const Vec3& v2) {
  const Vec3 e1 = v1 - v0;
  const Vec3 e2 = v2 - v0;
  const Vec3 p = cross(seg.direction, e2);
  const double det = dot(e1, p);
  if (det == 0.0) return std::nullopt;
  const double inv_det = 1.0 / det;
  const Vec3 s = seg.origin - v0;
  const double u = dot(s, p) * inv_det;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const Vec3 q = cross(s, e1);
  const double v = dot(seg.direction, q) * inv_det;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  const double t = dot(e2, q) * inv_det;
  if (t < seg.t_min || t > seg.t_max) return std::nullopt;
  return TriangleHit{t, u, v};
}

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Voronoi-region walk over vertices, edges and the face interior.
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = dot(ab, ap);
  const double d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp);
  const double d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + ab * (d1 / (d1 - d3));

  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp);
  const double d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + ac * (d2 / (d2 - d6));

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));

  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

}  // namespace sightline
