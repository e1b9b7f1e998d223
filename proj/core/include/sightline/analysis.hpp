#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sightline/compass.hpp"
#include "sightline/grid.hpp"
#include "sightline/heatmap.hpp"
#include "sightline/vehicle.hpp"

namespace sightline {

/// What a point's count is divided by before comparing with the threshold.
enum class Denominator { CapturesTotal, MaxCount };

Denominator parse_denominator(std::string_view text);

struct VisibilityResult {
  std::set<std::string> visible;
  /// Present elements that own no lattice point (a warning, not an error).
  std::vector<std::string> uncovered;
};

/// An element is visible when one of its recorded points reaches
/// count / denominator >= tau. Coverage warnings use `lattice` when given,
/// otherwise the recorded points.
VisibilityResult element_visibility(const Heatmap& h, const ElementMap& elements, double tau = 0.5,
                                    Denominator denominator = Denominator::CapturesTotal,
                                    const GridPointMap* lattice = nullptr);

struct TableEntry {
  std::string vehicle;
  Facing facing{Facing::N};
  const Heatmap* heatmap{nullptr};
  const ElementMap* elements{nullptr};
};

struct VisibilityCell {
  std::set<Facing> visible;
  std::set<Facing> missing;
  bool absent{false};
};

struct VisibilityTable {
  std::vector<std::string> vehicles;
  std::vector<std::string> elements;  // column order
  std::map<std::string, std::map<std::string, VisibilityCell>> cells;  // vehicle -> element
  std::vector<std::string> warnings;

  /// Number of (vehicle, facing) pairs in which the element is visible.
  int count(const std::string& element) const;
  /// count / (vehicles x 4) x 100.
  double percentage(const std::string& element) const;
};

/// Rows follow `vehicles`; any (vehicle, facing) without an entry is marked missing.
VisibilityTable build_table(const std::vector<std::string>& vehicles,
                            const std::vector<TableEntry>& entries, double tau = 0.5,
                            Denominator denominator = Denominator::CapturesTotal);

/// Cells list facings in N S E W order, "*" marks absent elements and "?X"
/// marks a facing whose heatmap was not supplied.
std::string to_csv(const VisibilityTable& table);

struct BandRow {
  RangeBand band;
  std::string facing;
  std::size_t recorded_points{0};
  double max_ratio{0.0};
  std::vector<std::string> top_elements;
};

/// Merges heatmaps per (band, facing) and summarises each group. Every band in
/// `bands` gets at least one row even when nothing was recorded in it.
std::vector<BandRow> band_report(const std::vector<Heatmap>& heatmaps, const ElementMap* elements,
                                 const std::vector<RangeBand>& bands, std::size_t top_k = 3);

std::string band_report_csv(const std::vector<BandRow>& rows);

}  // namespace sightline
