#include "sightline/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "sightline/error.hpp"

namespace sightline {

GridPointMap::GridPointMap(double spacing, double snap, const LatticeIndex& lo,
                           const LatticeIndex& hi, std::vector<LatticeIndex> points)
    : spacing_(spacing), snap_(snap), lo_(lo), hi_(hi), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  std::size_t cells = 1;
  for (int a = 0; a < 3; ++a) cells *= static_cast<std::size_t>(hi_[a] - lo_[a] + 1);
  lookup_.assign(cells, -1);
  for (std::size_t p = 0; p < points_.size(); ++p) {
    const auto c = cell(points_[p]);
    if (c < 0) throw Error("lattice point outside the grid range");
    lookup_[static_cast<std::size_t>(c)] = static_cast<std::int32_t>(p);
  }
}

std::int64_t GridPointMap::cell(const LatticeIndex& idx) const {
  std::int64_t c = 0;
  for (int a = 0; a < 3; ++a) {
    if (idx[a] < lo_[a] || idx[a] > hi_[a]) return -1;
    c = c * (hi_[a] - lo_[a] + 1) + (idx[a] - lo_[a]);
  }
  return c;
}

std::optional<std::uint32_t> GridPointMap::find(const LatticeIndex& idx) const {
  const auto c = cell(idx);
  if (c < 0) return std::nullopt;
  const auto p = lookup_[static_cast<std::size_t>(c)];
  if (p < 0) return std::nullopt;
  return static_cast<std::uint32_t>(p);
}

std::optional<std::uint32_t> GridPointMap::snap(const Vec3& local) const {
  if (points_.empty()) return std::nullopt;
  const LatticeIndex centre{static_cast<std::int32_t>(std::lround(local.x / spacing_)),
                            static_cast<std::int32_t>(std::lround(local.y / spacing_)),
                            static_cast<std::int32_t>(std::lround(local.z / spacing_))};
  const double limit = snap_ * snap_;
  std::optional<std::uint32_t> best;
  double best_d = 0.0;
  LatticeIndex best_idx{};
  auto key = [](const LatticeIndex& q) {
    return std::array<std::int32_t, 4>{std::abs(q[0]), q[1], q[2], q[0]};
  };
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      for (int dk = -1; dk <= 1; ++dk) {
        const LatticeIndex q{centre[0] + di, centre[1] + dj, centre[2] + dk};
        const auto found = find(q);
        if (!found) continue;
        const Vec3 d = local - position(q);
        const double dist = dot(d, d);
        if (dist > limit) continue;
        if (!best || dist < best_d || (dist == best_d && key(q) < key(best_idx))) {
          best = found;
          best_d = dist;
          best_idx = q;
        }
      }
    }
  }
  return best;
}

GridPointMap build_grid(const TriMesh& mesh, double spacing, bool symmetric) {
  return build_grid(mesh, spacing, default_snap_threshold(spacing), symmetric);
}

GridPointMap build_grid(const TriMesh& mesh, double spacing, double snap, bool symmetric) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ValidationError({"grid spacing must be > 0"});
  if (!(snap > 0.0)) throw ValidationError({"snap threshold must be > 0"});
  const Aabb bounds = mesh_bounds(mesh);
  LatticeIndex lo{}, hi{};
  for (int a = 0; a < 3; ++a) {
    lo[a] = static_cast<std::int32_t>(std::floor(bounds.min[a] / spacing));
    hi[a] = static_cast<std::int32_t>(std::ceil(bounds.max[a] / spacing));
  }
  if (symmetric) {
    const auto m = std::max(-lo[0], hi[0]);
    lo[0] = -m;
    hi[0] = m;
  }
  const double limit = snap * snap;
  auto clampi = [](double v, std::int32_t a, std::int32_t b) {
    return std::clamp(static_cast<std::int32_t>(v), a, b);
  };

  std::vector<LatticeIndex> points;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto [a, b, c] = mesh.triangle(t);
    const Vec3 tmin = min(min(a, b), c) - Vec3{snap, snap, snap};
    const Vec3 tmax = max(max(a, b), c) + Vec3{snap, snap, snap};
    LatticeIndex from{}, to{};
    for (int ax = 0; ax < 3; ++ax) {
      from[ax] = clampi(std::ceil(tmin[ax] / spacing), lo[ax], hi[ax]);
      to[ax] = clampi(std::floor(tmax[ax] / spacing), lo[ax], hi[ax]);
    }
    for (auto i = from[0]; i <= to[0]; ++i) {
      for (auto j = from[1]; j <= to[1]; ++j) {
        for (auto k = from[2]; k <= to[2]; ++k) {
          const Vec3 p{i * spacing, j * spacing, k * spacing};
          const Vec3 d = p - closest_point_on_triangle(p, a, b, c);
          if (dot(d, d) <= limit) {
            points.push_back({i, j, k});
            if (symmetric) points.push_back({-i, j, k});
          }
        }
      }
    }
  }
  return GridPointMap(spacing, snap, lo, hi, std::move(points));
}

}  // namespace sightline
