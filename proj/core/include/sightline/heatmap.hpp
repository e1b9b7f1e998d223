#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sightline/grid.hpp"
#include "sightline/scenario.hpp"

namespace sightline {

inline constexpr int kHeatmapSchemaVersion = 1;

/// Parameters of one simulation run folded into a heatmap.
struct RunInfo {
  std::string facing;
  int vehicles{0};
  RangeBand band{};
  std::string mode;
  std::string driving_side;
  std::uint64_t scenarios{0};
  std::uint64_t captures{0};

  bool operator==(const RunInfo&) const = default;
  std::strong_ordering operator<=>(const RunInfo& o) const;
};

struct GridInfo {
  LatticeIndex origin{};
  double spacing{0.0};
  double snap{0.0};
  bool operator==(const GridInfo&) const = default;
};

GridInfo grid_info(const GridPointMap& grid);

struct HeatPoint {
  LatticeIndex ijk{};  // relative to the grid origin
  std::uint64_t count{0};
  bool operator==(const HeatPoint&) const = default;
};

/// Per-lattice-point visibility counts plus the number of captures behind them.
/// Points are sorted by ijk, unique, and never zero.
struct Heatmap {
  std::string vehicle;
  std::vector<RunInfo> runs;
  GridInfo grid;
  std::uint64_t captures_total{0};
  std::vector<HeatPoint> points;

  bool operator==(const Heatmap&) const = default;

  std::uint64_t max_count() const;
  std::uint64_t count_at(const LatticeIndex& ijk) const;
  LatticeIndex absolute(const LatticeIndex& ijk) const {
    return {grid.origin[0] + ijk[0], grid.origin[1] + ijk[1], grid.origin[2] + ijk[2]};
  }
  /// Vehicle-local position of a point.
  Vec3 local_position(const LatticeIndex& ijk) const {
    const auto a = absolute(ijk);
    return {a[0] * grid.spacing, a[1] * grid.spacing, a[2] * grid.spacing};
  }
  /// Sorts points, sums duplicates, drops zeros and sorts runs.
  void normalize();
};

/// Same vehicle and grid, no runs, nothing counted: the identity of merge.
Heatmap empty_like(const Heatmap& h);

/// Heatmap of a grid whose per-point counts are `counts` (dense, grid order).
Heatmap heatmap_from_counts(std::string vehicle, const GridPointMap& grid,
                            std::span<const std::uint64_t> counts, std::uint64_t captures_total,
                            std::vector<RunInfo> runs);

std::string serialize(const Heatmap& h);
/// Throws ParseError with line/column or field context.
Heatmap deserialize(std::string_view text);
Heatmap read_heatmap(const std::filesystem::path& path);
void write_heatmap(const std::filesystem::path& path, const Heatmap& h);

/// Pointwise sum. Throws Error("incompatible grids") on differing grid metadata.
Heatmap merge(const Heatmap& a, const Heatmap& b);
Heatmap merge(std::span<const Heatmap> maps);

/// Reflection about the vehicle's x = 0 plane; the grid metadata is kept.
Heatmap mirror_x(const Heatmap& h);

}  // namespace sightline
