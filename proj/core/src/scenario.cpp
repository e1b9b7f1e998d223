#include "sightline/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sightline/error.hpp"

namespace sightline {

using nlohmann::json;

namespace {

std::string format_number(double v) {
  std::ostringstream out;
  out.precision(15);
  out << v;
  return out.str();
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void combinations(const std::vector<int>& pool, std::size_t k, std::size_t start,
                  std::vector<int>& current, int target, std::vector<Scenario>& out) {
  if (current.size() == k) {
    out.push_back({target, current});
    return;
  }
  const std::size_t needed = k - current.size();
  for (std::size_t i = start; i + needed <= pool.size(); ++i) {
    current.push_back(pool[i]);
    combinations(pool, k, i + 1, current, target, out);
    current.pop_back();
  }
}

void check_slots(const std::vector<int>& slots, const char* what,
                 std::vector<std::string>& issues) {
  for (int s : slots) {
    if (s < 1 || s > kSlotCount)
      issues.push_back(std::string(what) + " slot " + std::to_string(s) + " outside 1..8");
  }
}

}  // namespace

std::string RangeBand::label() const { return format_number(min) + "-" + format_number(max); }

void validate(const RangeBand& band) {
  std::vector<std::string> issues;
  if (!std::isfinite(band.min) || !std::isfinite(band.max)) {
    issues.emplace_back("range band must be finite");
  } else {
    if (band.min < 0.0) issues.emplace_back("range min must be >= 0");
    if (band.min >= band.max) issues.emplace_back("range min >= max");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

RangeBand parse_band(std::string_view text) {
  const auto sep = text.find_first_of(",-", 1);
  if (sep == std::string_view::npos)
    throw ValidationError({"range '" + std::string(text) + "' must look like MIN,MAX"});
  RangeBand band;
  try {
    band.min = std::stod(std::string(text.substr(0, sep)));
    band.max = std::stod(std::string(text.substr(sep + 1)));
  } catch (const std::exception&) {
    throw ValidationError({"range '" + std::string(text) + "' is not numeric"});
  }
  validate(band);
  return band;
}

std::string_view to_string(OcclusionMode mode) {
  return mode == OcclusionMode::Faithful ? "faithful" : "physical";
}

OcclusionMode parse_occlusion_mode(std::string_view text) {
  if (text == "faithful") return OcclusionMode::Faithful;
  if (text == "physical") return OcclusionMode::Physical;
  throw ValidationError({"unknown occlusion mode '" + std::string(text) + "'"});
}

std::vector<Scenario> enumerate_scenarios(const std::vector<int>& target_slots,
                                          const std::vector<int>& filler_slots, int n) {
  if (n < 1) throw ValidationError({"vehicle count must be >= 1"});
  const auto targets = sorted_unique(target_slots);
  const auto fillers = sorted_unique(filler_slots);
  const auto k = static_cast<std::size_t>(n - 1);

  std::vector<Scenario> out;
  bool feasible = false;
  for (int t : targets) {
    std::vector<int> pool;
    std::copy_if(fillers.begin(), fillers.end(), std::back_inserter(pool),
                 [t](int s) { return s != t; });
    if (pool.size() < k) continue;
    feasible = true;
    std::vector<int> current;
    current.reserve(k);
    combinations(pool, k, 0, current, t, out);
  }
  if (!feasible)
    throw Error("no feasible scenario: " + std::to_string(n - 1) +
                " filler vehicle(s) do not fit the available filler slots");
  return out;
}

std::vector<Cardinal> camera_direction_set(Facing facing) {
  switch (facing) {
    case Facing::S:
      return {Cardinal::E, Cardinal::NE, Cardinal::N};
    case Facing::E:
      return {Cardinal::N, Cardinal::NE, Cardinal::S, Cardinal::SE};
    case Facing::N:
      return {Cardinal::E, Cardinal::SE, Cardinal::S};
    case Facing::W:
      return {Cardinal::N, Cardinal::NE, Cardinal::S, Cardinal::SE};
  }
  return {};
}

void RunSpec::validate() const {
  std::vector<std::string> issues;
  if (vehicle_count < 1) issues.emplace_back("vehicle count must be >= 1");
  if (target_slots.empty()) issues.emplace_back("target slot set is empty");
  check_slots(target_slots, "target", issues);
  check_slots(filler_slots, "filler", issues);
  if (camera_directions.empty()) issues.emplace_back("camera direction set is empty");
  try {
    sightline::validate(band);
  } catch (const ValidationError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

FacingPlan default_plan(Facing facing) {
  switch (facing) {
    case Facing::S:
      return {Facing::S, {1, 2, 3}, {1, 2, 3, 4}, {1, 2, 3, 4}, std::nullopt};
    case Facing::E:
      return {Facing::E, {4}, {}, {1}, std::nullopt};
    case Facing::N:
      return {Facing::N, {5, 6, 7}, {1, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6, 7}, std::nullopt};
    case Facing::W:
      return {Facing::W, {8}, {1, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6, 7, 8}, std::nullopt};
  }
  return {};
}

MatrixConfig MatrixConfig::literal20() {
  MatrixConfig cfg;
  for (Facing f : {Facing::S, Facing::E, Facing::N, Facing::W}) cfg.facings.push_back(default_plan(f));
  cfg.bands = default_bands();
  return cfg;
}

MatrixConfig MatrixConfig::paper19() {
  MatrixConfig cfg = literal20();
  for (auto& plan : cfg.facings) {
    if (plan.facing == Facing::W) plan.vehicle_counts.pop_back();
  }
  return cfg;
}

MatrixConfig MatrixConfig::preset(std::string_view name) {
  if (name == "literal-20") return literal20();
  if (name == "paper-19") return paper19();
  throw ValidationError({"unknown matrix preset '" + std::string(name) +
                         "' (expected literal-20 or paper-19)"});
}

std::vector<RunSpec> expand_matrix(const MatrixConfig& cfg) {
  std::vector<RunSpec> runs;
  for (const auto& plan : cfg.facings) {
    const auto directions = plan.camera_directions.value_or(camera_direction_set(plan.facing));
    for (int n : plan.vehicle_counts) {
      for (const auto& band : cfg.bands) {
        RunSpec run;
        run.facing = plan.facing;
        run.target_slots = plan.target_slots;
        run.filler_slots = plan.filler_slots;
        run.vehicle_count = n;
        run.band = band;
        run.camera_directions = directions;
        run.mode = cfg.mode;
        runs.push_back(std::move(run));
      }
    }
  }
  return runs;
}

namespace {

template <typename T>
T get_field(const json& j, const char* key, const std::string& context) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(context + "." + key + ": " + e.what());
  }
}

}  // namespace

MatrixConfig matrix_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("matrix: top level must be an object");

  MatrixConfig cfg;
  if (j.contains("preset")) {
    cfg = MatrixConfig::preset(get_field<std::string>(j, "preset", "matrix"));
  } else {
    cfg.bands = default_bands();
  }
  if (j.contains("mode")) cfg.mode = parse_occlusion_mode(get_field<std::string>(j, "mode", "matrix"));
  if (j.contains("bands")) {
    cfg.bands.clear();
    for (const auto& b : j.at("bands")) {
      if (!b.is_array() || b.size() != 2) throw ParseError("matrix.bands: each band is [min, max]");
      RangeBand band{b[0].get<double>(), b[1].get<double>()};
      validate(band);
      cfg.bands.push_back(band);
    }
  }
  if (j.contains("facings")) {
    cfg.facings.clear();
    std::size_t index = 0;
    for (const auto& f : j.at("facings")) {
      const std::string ctx = "matrix.facings[" + std::to_string(index++) + "]";
      FacingPlan plan = default_plan(parse_facing(get_field<std::string>(f, "facing", ctx)));
      if (f.contains("target_slots"))
        plan.target_slots = get_field<std::vector<int>>(f, "target_slots", ctx);
      if (f.contains("filler_slots"))
        plan.filler_slots = get_field<std::vector<int>>(f, "filler_slots", ctx);
      if (f.contains("vehicle_counts"))
        plan.vehicle_counts = get_field<std::vector<int>>(f, "vehicle_counts", ctx);
      if (f.contains("camera_directions")) {
        std::vector<Cardinal> dirs;
        for (const auto& d : get_field<std::vector<std::string>>(f, "camera_directions", ctx))
          dirs.push_back(parse_cardinal(d));
        plan.camera_directions = dirs;
      }
      cfg.facings.push_back(std::move(plan));
    }
  }
  return cfg;
}

MatrixConfig load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return matrix_from_json(buf.str());
}

std::string matrix_to_json(const MatrixConfig& cfg) {
  nlohmann::ordered_json j;
  j["mode"] = std::string(to_string(cfg.mode));
  j["bands"] = nlohmann::ordered_json::array();
  for (const auto& b : cfg.bands) j["bands"].push_back({b.min, b.max});
  j["facings"] = nlohmann::ordered_json::array();
  for (const auto& plan : cfg.facings) {
    nlohmann::ordered_json f;
    f["facing"] = std::string(to_string(plan.facing));
    f["target_slots"] = plan.target_slots;
    f["filler_slots"] = plan.filler_slots;
    f["vehicle_counts"] = plan.vehicle_counts;
    if (plan.camera_directions) {
      auto& dirs = f["camera_directions"] = nlohmann::ordered_json::array();
      for (auto d : *plan.camera_directions) dirs.push_back(std::string(to_string(d)));
    }
    j["facings"].push_back(std::move(f));
  }
  return j.dump(2) + "\n";
}

std::string format_scenarios(Facing facing, int n, const std::vector<Scenario>& scenarios) {
  std::ostringstream out;
  for (const auto& s : scenarios) {
    out << to_string(facing) << " n=" << n << " target=" << s.target << " fillers=";
    if (s.fillers.empty()) out << '-';
    for (std::size_t i = 0; i < s.fillers.size(); ++i) out << (i ? "," : "") << s.fillers[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace sightline
