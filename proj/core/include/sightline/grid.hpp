#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "sightline/geometry.hpp"

namespace sightline {

using LatticeIndex = std::array<std::int32_t, 3>;

/// Surface lattice of a vehicle in its local frame. Lattice points sit at
/// integer multiples of the spacing; `origin` is floor(bounds.min / spacing) and
/// points are stored as absolute indices in lexicographic order.
class GridPointMap {
 public:
  GridPointMap() = default;
  GridPointMap(double spacing, double snap, const LatticeIndex& lo, const LatticeIndex& hi,
               std::vector<LatticeIndex> points);

  double spacing() const { return spacing_; }
  double snap_threshold() const { return snap_; }
  const LatticeIndex& origin() const { return lo_; }
  const LatticeIndex& upper() const { return hi_; }
  const std::vector<LatticeIndex>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  Vec3 position(std::size_t point) const { return position(points_[point]); }
  Vec3 position(const LatticeIndex& idx) const {
    return {idx[0] * spacing_, idx[1] * spacing_, idx[2] * spacing_};
  }
  /// Dense index of a retained lattice point.
  std::optional<std::uint32_t> find(const LatticeIndex& idx) const;

  /// Nearest retained point within the snap threshold, searching the 3x3x3
  /// block around the rounded index. Ties go to the smallest (|i|, j, k, i).
  std::optional<std::uint32_t> snap(const Vec3& local) const;

 private:
  std::int64_t cell(const LatticeIndex& idx) const;

  double spacing_{0.0};
  double snap_{0.0};
  LatticeIndex lo_{};
  LatticeIndex hi_{};
  std::vector<LatticeIndex> points_;
  std::vector<std::int32_t> lookup_;  // dense over [lo, hi], -1 = not retained
};

inline double default_snap_threshold(double spacing) { return spacing * std::sqrt(3.0) / 2.0; }

/// Retains every lattice point within [floor(min/s), ceil(max/s)] whose distance
/// to the mesh surface is at most the snap threshold. With `symmetric`, a point
/// is retained when it or its x-mirror qualifies, so mirror-symmetric meshes get
/// an exactly symmetric lattice.
GridPointMap build_grid(const TriMesh& mesh, double spacing, bool symmetric = false);
GridPointMap build_grid(const TriMesh& mesh, double spacing, double snap, bool symmetric);

}  // namespace sightline
