#include "sightline/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "sightline/error.hpp"

namespace sightline {

Denominator parse_denominator(std::string_view text) {
  if (text == "captures") return Denominator::CapturesTotal;
  if (text == "max") return Denominator::MaxCount;
  throw ValidationError({"denominator must be 'captures' or 'max'"});
}

namespace {

double denominator_of(const Heatmap& h, Denominator d) {
  if (d == Denominator::CapturesTotal) {
    if (h.captures_total == 0) throw ValidationError({"heatmap has captures_total = 0"});
    return static_cast<double>(h.captures_total);
  }
  return static_cast<double>(h.max_count());
}

}  // namespace

VisibilityResult element_visibility(const Heatmap& h, const ElementMap& elements, double tau,
                                    Denominator denominator, const GridPointMap* lattice) {
  if (elements.boxes().empty()) throw Error("element map for '" + h.vehicle + "' is missing or empty");
  VisibilityResult out;
  const double den = denominator_of(h, denominator);
  std::set<std::string> covered;
  for (const auto& p : h.points) {
    const auto name = elements.element_of(h.local_position(p.ijk));
    if (!name) continue;
    if (!lattice) covered.emplace(*name);
    if (den > 0.0 && static_cast<double>(p.count) / den >= tau) out.visible.emplace(*name);
  }
  if (lattice) {
    for (std::size_t i = 0; i < lattice->size(); ++i)
      if (const auto name = elements.element_of(lattice->position(i))) covered.emplace(*name);
  }
  for (const auto& name : elements.present())
    if (!covered.count(name)) out.uncovered.push_back(name);
  return out;
}

int VisibilityTable::count(const std::string& element) const {
  int n = 0;
  for (const auto& v : vehicles) {
    auto row = cells.find(v);
    if (row == cells.end()) continue;
    auto cell = row->second.find(element);
    if (cell != row->second.end()) n += static_cast<int>(cell->second.visible.size());
  }
  return n;
}

double VisibilityTable::percentage(const std::string& element) const {
  if (vehicles.empty()) return 0.0;
  return 100.0 * count(element) / (static_cast<double>(vehicles.size()) * 4.0);
}

VisibilityTable build_table(const std::vector<std::string>& vehicles,
                            const std::vector<TableEntry>& entries, double tau,
                            Denominator denominator) {
  VisibilityTable table;
  table.vehicles = vehicles;
  for (auto name : kElementNames) table.elements.emplace_back(name);

  std::map<std::string, std::set<Facing>> supplied;
  for (const auto& e : entries) {
    if (std::find(vehicles.begin(), vehicles.end(), e.vehicle) == vehicles.end())
      throw Error("table entry for unlisted vehicle '" + e.vehicle + "'");
    if (!e.heatmap || !e.elements) throw Error("table entry for '" + e.vehicle + "' is incomplete");
    if (!supplied[e.vehicle].insert(e.facing).second)
      throw Error("two heatmaps for " + e.vehicle + " facing " + std::string(to_string(e.facing)));
    const auto result = element_visibility(*e.heatmap, *e.elements, tau, denominator);
    for (const auto& u : result.uncovered)
      table.warnings.push_back(e.vehicle + " " + std::string(to_string(e.facing)) +
                               ": element '" + u + "' covers no recorded point");
    auto& row = table.cells[e.vehicle];
    for (const auto& name : table.elements) {
      auto& cell = row[name];
      if (e.elements->is_absent(name)) cell.absent = true;
      if (result.visible.count(name)) cell.visible.insert(e.facing);
    }
  }
  for (const auto& v : vehicles) {
    auto& row = table.cells[v];
    for (auto f : {Facing::N, Facing::S, Facing::E, Facing::W}) {
      if (supplied[v].count(f)) continue;
      for (const auto& name : table.elements) row[name].missing.insert(f);
    }
  }
  return table;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string to_csv(const VisibilityTable& table) {
  std::ostringstream out;
  out << "Vehicle";
  for (const auto& e : table.elements) out << ',' << csv_field(e);
  out << '\n';
  for (const auto& v : table.vehicles) {
    out << csv_field(v);
    const auto& row = table.cells.at(v);
    for (const auto& e : table.elements) {
      const auto& cell = row.at(e);
      std::string text;
      if (cell.absent) {
        text = "*";
      } else {
        for (auto f : {Facing::N, Facing::S, Facing::E, Facing::W}) {
          if (cell.visible.count(f)) text += (text.empty() ? "" : " ") + std::string(to_string(f));
          if (cell.missing.count(f)) text += (text.empty() ? "?" : " ?") + std::string(to_string(f));
        }
      }
      out << ',' << text;
    }
    out << '\n';
  }
  out << "Count";
  for (const auto& e : table.elements) out << ',' << table.count(e);
  out << "\nPercentage";
  for (const auto& e : table.elements) out << ',' << fixed(table.percentage(e), 2);
  out << '\n';
  return out.str();
}

std::vector<BandRow> band_report(const std::vector<Heatmap>& heatmaps, const ElementMap* elements,
                                 const std::vector<RangeBand>& bands, std::size_t top_k) {
  struct Key {
    RangeBand band;
    std::string facing;
  };
  std::vector<std::pair<Key, Heatmap>> groups;
  for (const auto& h : heatmaps) {
    if (h.runs.empty()) throw Error("heatmap without run metadata cannot be assigned to a band");
    for (const auto& r : h.runs) {
      if (r.band != h.runs.front().band || r.facing != h.runs.front().facing)
        throw Error("heatmap mixes bands or facings; band reports need one of each");
    }
    const Key key{h.runs.front().band, h.runs.front().facing};
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.first.band == key.band && g.first.facing == key.facing;
    });
    if (it == groups.end()) {
      groups.emplace_back(key, h);
    } else {
      it->second = merge(it->second, h);
    }
  }

  auto band_rank = [&bands](const RangeBand& b) {
    auto it = std::find(bands.begin(), bands.end(), b);
    return it == bands.end() ? bands.size() : static_cast<std::size_t>(it - bands.begin());
  };
  auto facing_rank = [](const std::string& f) {
    static const std::string order[] = {"N", "S", "E", "W"};
    auto it = std::find(std::begin(order), std::end(order), f);
    return static_cast<std::size_t>(it - std::begin(order));
  };

  std::vector<BandRow> rows;
  for (const auto& [key, h] : groups) {
    BandRow row;
    row.band = key.band;
    row.facing = key.facing;
    row.recorded_points = h.points.size();
    const double den = h.captures_total ? static_cast<double>(h.captures_total) : 1.0;
    std::map<std::string, double> best;
    for (const auto& p : h.points) {
      const double ratio = static_cast<double>(p.count) / den;
      row.max_ratio = std::max(row.max_ratio, ratio);
      if (elements && !elements->boxes().empty()) {
        if (const auto name = elements->element_of(h.local_position(p.ijk))) {
          auto& b = best[std::string(*name)];
          b = std::max(b, ratio);
        }
      }
    }
    std::vector<std::pair<std::string, double>> ranked(best.begin(), best.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < ranked.size() && i < top_k; ++i) row.top_elements.push_back(ranked[i].first);
    rows.push_back(std::move(row));
  }
  for (const auto& b : bands) {
    const bool seen = std::any_of(rows.begin(), rows.end(), [&](const BandRow& r) { return r.band == b; });
    if (!seen) rows.push_back({b, "-", 0, 0.0, {}});
  }
  std::stable_sort(rows.begin(), rows.end(), [&](const BandRow& a, const BandRow& b) {
    const auto ra = band_rank(a.band), rb = band_rank(b.band);
    if (ra != rb) return ra < rb;
    if (a.band.min != b.band.min) return a.band.min < b.band.min;
    if (a.band.max != b.band.max) return a.band.max < b.band.max;
    return facing_rank(a.facing) < facing_rank(b.facing);
  });
  return rows;
}

std::string band_report_csv(const std::vector<BandRow>& rows) {
  std::ostringstream out;
  out << "band_min,band_max,facing,recorded_points,max_ratio,top_elements\n";
  for (const auto& r : rows) {
    std::string top;
    for (const auto& e : r.top_elements) top += (top.empty() ? "" : ";") + e;
    out << fixed(r.band.min, 3) << ',' << fixed(r.band.max, 3) << ',' << r.facing << ','
        << r.recorded_points << ',' << fixed(r.max_ratio, 6) << ',' << csv_field(top) << '\n';
  }
  return out.str();
}

}  // namespace sightline
