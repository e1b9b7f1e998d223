#include "sightline/heatmap.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sightline/error.hpp"

namespace sightline {

using nlohmann::json;

std::strong_ordering RunInfo::operator<=>(const RunInfo& o) const {
  if (auto c = facing <=> o.facing; c != 0) return c;
  if (auto c = vehicles <=> o.vehicles; c != 0) return c;
  // Bands are validated finite, so the partial order is total here.
  if (band.min != o.band.min) return band.min < o.band.min ? std::strong_ordering::less
                                                           : std::strong_ordering::greater;
  if (band.max != o.band.max) return band.max < o.band.max ? std::strong_ordering::less
                                                           : std::strong_ordering::greater;
  if (auto c = mode <=> o.mode; c != 0) return c;
  if (auto c = driving_side <=> o.driving_side; c != 0) return c;
  if (auto c = scenarios <=> o.scenarios; c != 0) return c;
  return captures <=> o.captures;
}

GridInfo grid_info(const GridPointMap& grid) {
  return {grid.origin(), grid.spacing(), grid.snap_threshold()};
}

std::uint64_t Heatmap::max_count() const {
  std::uint64_t m = 0;
  for (const auto& p : points) m = std::max(m, p.count);
  return m;
}

std::uint64_t Heatmap::count_at(const LatticeIndex& ijk) const {
  auto it = std::lower_bound(points.begin(), points.end(), ijk,
                             [](const HeatPoint& p, const LatticeIndex& q) { return p.ijk < q; });
  return it != points.end() && it->ijk == ijk ? it->count : 0;
}

void Heatmap::normalize() {
  std::sort(points.begin(), points.end(),
            [](const HeatPoint& a, const HeatPoint& b) { return a.ijk < b.ijk; });
  std::vector<HeatPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (!out.empty() && out.back().ijk == p.ijk) {
      out.back().count += p.count;
    } else {
      out.push_back(p);
    }
  }
  std::erase_if(out, [](const HeatPoint& p) { return p.count == 0; });
  points = std::move(out);
  std::sort(runs.begin(), runs.end());
}

Heatmap empty_like(const Heatmap& h) {
  Heatmap out;
  out.vehicle = h.vehicle;
  out.grid = h.grid;
  return out;
}

Heatmap heatmap_from_counts(std::string vehicle, const GridPointMap& grid,
                            std::span<const std::uint64_t> counts, std::uint64_t captures_total,
                            std::vector<RunInfo> runs) {
  if (counts.size() != grid.size()) throw Error("count vector does not match the grid");
  Heatmap h;
  h.vehicle = std::move(vehicle);
  h.runs = std::move(runs);
  h.grid = grid_info(grid);
  h.captures_total = captures_total;
  const auto& origin = grid.origin();
  for (std::size_t p = 0; p < counts.size(); ++p) {
    if (counts[p] == 0) continue;
    const auto& a = grid.points()[p];
    h.points.push_back({{a[0] - origin[0], a[1] - origin[1], a[2] - origin[2]}, counts[p]});
  }
  h.normalize();
  return h;
}

namespace {

std::string number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error("cannot format number");
  return {buf, end};
}

std::string triple(const LatticeIndex& v) {
  return "[" + std::to_string(v[0]) + ", " + std::to_string(v[1]) + ", " + std::to_string(v[2]) + "]";
}

std::string quoted(const std::string& s) { return json(s).dump(); }

}  // namespace

std::string serialize(const Heatmap& h) {
  std::string out;
  out.reserve(256 + h.points.size() * 40);
  out += "{\n";
  out += "  \"schema_version\": " + std::to_string(kHeatmapSchemaVersion) + ",\n";
  out += "  \"vehicle\": " + quoted(h.vehicle) + ",\n";
  if (h.runs.empty()) {
    out += "  \"runs\": [],\n";
  } else {
    out += "  \"runs\": [\n";
    for (std::size_t i = 0; i < h.runs.size(); ++i) {
      const auto& r = h.runs[i];
      out += "    {\"facing\": " + quoted(r.facing) + ", \"vehicles\": " + std::to_string(r.vehicles) +
             ", \"band\": [" + number(r.band.min) + ", " + number(r.band.max) +
             "], \"mode\": " + quoted(r.mode) + ", \"driving_side\": " + quoted(r.driving_side) +
             ", \"scenarios\": " + std::to_string(r.scenarios) +
             ", \"captures\": " + std::to_string(r.captures) + "}";
      out += i + 1 < h.runs.size() ? ",\n" : "\n";
    }
    out += "  ],\n";
  }
  out += "  \"grid\": {\"origin\": " + triple(h.grid.origin) + ", \"spacing\": " +
         number(h.grid.spacing) + ", \"snap\": " + number(h.grid.snap) + "},\n";
  out += "  \"captures_total\": " + std::to_string(h.captures_total) + ",\n";
  if (h.points.empty()) {
    out += "  \"points\": []\n";
  } else {
    out += "  \"points\": [\n";
    for (std::size_t i = 0; i < h.points.size(); ++i) {
      out += "    {\"ijk\": " + triple(h.points[i].ijk) + ", \"c\": " + std::to_string(h.points[i].count) + "}";
      out += i + 1 < h.points.size() ? ",\n" : "\n";
    }
    out += "  ]\n";
  }
  out += "}\n";
  return out;
}

namespace {

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError("heatmap: " + path + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("heatmap: missing field " + path + "." + key);
  return *it;
}

template <typename T>
T get_as(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ParseError("heatmap: field " + path + " has the wrong type");
  }
}

LatticeIndex index_triple(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ParseError("heatmap: field " + path + " must be [i, j, k]");
  LatticeIndex out{};
  for (std::size_t a = 0; a < 3; ++a) {
    if (!j[a].is_number_integer()) throw ParseError("heatmap: field " + path + " must hold integers");
    out[a] = get_as<std::int32_t>(j[a], path);
  }
  return out;
}

}  // namespace

Heatmap deserialize(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("heatmap: malformed JSON at " + location(text, e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("heatmap: top level must be an object");
  static const char* known[] = {"schema_version", "vehicle", "runs", "grid", "captures_total", "points"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
        std::end(known))
      throw ParseError("heatmap: unknown field '" + key + "'");
  }
  const auto& version = field(j, "schema_version", "$");
  if (!version.is_number_integer() || version.get<long long>() != kHeatmapSchemaVersion)
    throw ParseError("heatmap: unsupported schema_version " + version.dump() + " (expected " +
                     std::to_string(kHeatmapSchemaVersion) + ")");

  Heatmap h;
  h.vehicle = get_as<std::string>(field(j, "vehicle", "$"), "vehicle");
  const auto& runs = field(j, "runs", "$");
  if (!runs.is_array()) throw ParseError("heatmap: field runs must be an array");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::string path = "runs[" + std::to_string(i) + "]";
    const auto& r = runs[i];
    RunInfo info;
    info.facing = get_as<std::string>(field(r, "facing", path), path + ".facing");
    info.vehicles = get_as<int>(field(r, "vehicles", path), path + ".vehicles");
    const auto& band = field(r, "band", path);
    if (!band.is_array() || band.size() != 2)
      throw ParseError("heatmap: field " + path + ".band must be [min, max]");
    info.band = {get_as<double>(band[0], path + ".band"), get_as<double>(band[1], path + ".band")};
    info.mode = get_as<std::string>(field(r, "mode", path), path + ".mode");
    info.driving_side = get_as<std::string>(field(r, "driving_side", path), path + ".driving_side");
    info.scenarios = get_as<std::uint64_t>(field(r, "scenarios", path), path + ".scenarios");
    info.captures = get_as<std::uint64_t>(field(r, "captures", path), path + ".captures");
    h.runs.push_back(std::move(info));
  }
  const auto& grid = field(j, "grid", "$");
  h.grid.origin = index_triple(field(grid, "origin", "grid"), "grid.origin");
  h.grid.spacing = get_as<double>(field(grid, "spacing", "grid"), "grid.spacing");
  h.grid.snap = get_as<double>(field(grid, "snap", "grid"), "grid.snap");
  if (!(h.grid.spacing > 0.0)) throw ParseError("heatmap: grid.spacing must be > 0");
  h.captures_total = get_as<std::uint64_t>(field(j, "captures_total", "$"), "captures_total");
  const auto& points = field(j, "points", "$");
  if (!points.is_array()) throw ParseError("heatmap: field points must be an array");
  h.points.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string path = "points[" + std::to_string(i) + "]";
    HeatPoint p;
    p.ijk = index_triple(field(points[i], "ijk", path), path + ".ijk");
    p.count = get_as<std::uint64_t>(field(points[i], "c", path), path + ".c");
    if (p.count > h.captures_total)
      throw ParseError("heatmap: " + path + ".c exceeds captures_total");
    h.points.push_back(p);
  }
  h.normalize();
  return h;
}

Heatmap read_heatmap(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open heatmap " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return deserialize(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_heatmap(const std::filesystem::path& path, const Heatmap& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize(h);
  if (!out) throw Error("write failed for " + path.string());
}

Heatmap merge(const Heatmap& a, const Heatmap& b) {
  if (a.grid != b.grid) throw Error("incompatible grids");
  if (a.vehicle != b.vehicle)
    throw Error("incompatible heatmaps: vehicle '" + a.vehicle + "' vs '" + b.vehicle + "'");
  Heatmap out = empty_like(a);
  out.runs = a.runs;
  out.runs.insert(out.runs.end(), b.runs.begin(), b.runs.end());
  out.captures_total = a.captures_total + b.captures_total;
  out.points.reserve(a.points.size() + b.points.size());
  std::size_t i = 0, k = 0;
  while (i < a.points.size() || k < b.points.size()) {
    if (k == b.points.size() || (i < a.points.size() && a.points[i].ijk < b.points[k].ijk)) {
      out.points.push_back(a.points[i++]);
    } else if (i == a.points.size() || b.points[k].ijk < a.points[i].ijk) {
      out.points.push_back(b.points[k++]);
    } else {
      out.points.push_back({a.points[i].ijk, a.points[i].count + b.points[k].count});
      ++i;
      ++k;
    }
  }
  std::sort(out.runs.begin(), out.runs.end());
  return out;
}

Heatmap merge(std::span<const Heatmap> maps) {
  if (maps.empty()) throw Error("nothing to merge");
  Heatmap out = maps.front();
  for (std::size_t i = 1; i < maps.size(); ++i) out = merge(out, maps[i]);
  return out;
}

Heatmap mirror_x(const Heatmap& h) {
  Heatmap out = h;
  const auto o = h.grid.origin[0];
  for (auto& p : out.points) p.ijk[0] = -(o + p.ijk[0]) - o;
  out.normalize();
  return out;
}

}  // namespace sightline
