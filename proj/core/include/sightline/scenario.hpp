#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sightline/compass.hpp"

namespace sightline {

/// Distance band [min, max) in meters measured from the camera.
struct RangeBand {
  double min{0.0};
  double max{0.0};

  /// "5-25" style label used in file names.
  std::string label() const;
  bool operator==(const RangeBand&) const = default;
};

/// Throws ValidationError unless 0 <= min < max (message "min >= max" on inversion).
void validate(const RangeBand& band);
/// Parses "5,25" or "5-25".
RangeBand parse_band(std::string_view text);

inline const std::vector<RangeBand>& default_bands() {
  static const std::vector<RangeBand> bands{{0.0, 5.0}, {5.0, 25.0}, {25.0, 75.0}};
  return bands;
}

/// faithful: rays begin at the band minimum, so nearer occluders cannot block.
/// physical: rays begin at the camera; only the band decides what is recorded.
enum class OcclusionMode { Faithful, Physical };

std::string_view to_string(OcclusionMode mode);
OcclusionMode parse_occlusion_mode(std::string_view text);

/// One placement of the target and its fillers. Fillers are sorted ascending.
struct Scenario {
  int target{0};
  std::vector<int> fillers;
  bool operator==(const Scenario&) const = default;
  auto operator<=>(const Scenario&) const = default;
};

inline constexpr int kSlotCount = 8;

/// All (target, filler set) placements with n vehicles in total, ordered by
/// (target, sorted fillers). Throws Error("no feasible scenario ...") when no
/// target slot leaves room for n - 1 fillers.
std::vector<Scenario> enumerate_scenarios(const std::vector<int>& target_slots,
                                          const std::vector<int>& filler_slots, int n);

/// Camera look directions used for a given target facing.
std::vector<Cardinal> camera_direction_set(Facing facing);

struct RunSpec {
  Facing facing{Facing::S};
  std::vector<int> target_slots;
  std::vector<int> filler_slots;
  int vehicle_count{1};
  RangeBand band{};
  std::vector<Cardinal> camera_directions;
  OcclusionMode mode{OcclusionMode::Faithful};

  /// Throws ValidationError listing every violated invariant.
  void validate() const;
};

/// Per-facing slot sets and vehicle counts of an experiment.
struct FacingPlan {
  Facing facing{Facing::S};
  std::vector<int> target_slots;
  std::vector<int> filler_slots;
  std::vector<int> vehicle_counts;
  std::optional<std::vector<Cardinal>> camera_directions;  // default: camera_direction_set
};

/// The sweep matrix: facings x vehicle counts x bands.
struct MatrixConfig {
  std::vector<FacingPlan> facings;
  std::vector<RangeBand> bands;
  OcclusionMode mode{OcclusionMode::Faithful};

  /// S: 1-4, E: 1, N: 1-7, W: 1-8 vehicles (20 runs per band).
  static MatrixConfig literal20();
  /// As literal20 but W capped at 7 vehicles (19 runs per band).
  static MatrixConfig paper19();
  static MatrixConfig preset(std::string_view name);
};

FacingPlan default_plan(Facing facing);

/// Cross product in (facing, vehicle count, band) order.
std::vector<RunSpec> expand_matrix(const MatrixConfig& cfg);

MatrixConfig matrix_from_json(std::string_view text);
MatrixConfig load_matrix(const std::filesystem::path& path);
std::string matrix_to_json(const MatrixConfig& cfg);

/// One line per scenario, e.g. "S n=2 target=1 fillers=2".
std::string format_scenarios(Facing facing, int n, const std::vector<Scenario>& scenarios);

}  // namespace sightline
