#include <array>
#include <fstream>
#include <ostream>

#include <json.hpp>
#include <openssl/evp.h>

#include "commands.hpp"
#include "sightline/error.hpp"
#include "sightline/heatmap.hpp"

namespace sightline::cli {

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string heatmap_file_name(std::string_view vehicle, const RunSpec& run, const StaticScene& scene) {
  const Facing f = scene.mirrored ? mirror(run.facing) : run.facing;
  return std::string(vehicle) + "_" + std::string(to_string(f)) + "_" +
         std::to_string(run.vehicle_count) + "_" + run.band.label() + ".json";
}

std::size_t SweepReport::failures() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.ok() ? 0 : 1;
  return n;
}

SweepReport run_sweep(const SweepOptions& options, std::ostream& log) {
  std::filesystem::create_directories(options.out_dir);
  const StaticScene scene = build_street(options.scene);
  const auto runs = expand_matrix(options.matrix);

  SweepReport report;
  for (const auto& name : options.vehicles) {
    const VehicleModel model = load_vehicle(options.catalog.at(name));
    const GridPointMap grid = build_grid(model.mesh, options.spacing, model.mirror_symmetric);
    log << name << ": " << grid.size() << " lattice points, " << runs.size() << " runs\n";
    for (const auto& run : runs) {
      SweepEntry entry;
      entry.file = heatmap_file_name(name, run, scene);
      entry.vehicle = name;
      entry.facing = std::string(to_string(scene.mirrored ? mirror(run.facing) : run.facing));
      entry.vehicles = run.vehicle_count;
      entry.band = run.band.label();
      try {
        const std::string text = serialize(run_simulation(run, scene, model, grid, options.simulation));
        std::ofstream out(options.out_dir / entry.file, std::ios::binary);
        out << text;
        if (!out) throw Error("cannot write " + (options.out_dir / entry.file).string());
        entry.sha256 = sha256_hex(text);
      } catch (const std::exception& e) {
        entry.error = e.what();
        log << "  " << entry.file << " FAILED: " << entry.error << "\n";
      }
      report.entries.push_back(std::move(entry));
    }
  }

  std::ofstream manifest(options.out_dir / "manifest.json", std::ios::binary);
  manifest << manifest_json(options, report);
  if (!manifest) throw Error("cannot write manifest in " + options.out_dir.string());
  return report;
}

std::string manifest_json(const SweepOptions& options, const SweepReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema_version"] = 1;
  j["vehicles"] = options.vehicles;
  j["spacing"] = options.spacing;
  j["driving_side"] = std::string(to_string(options.scene.driving_side));
  j["heights"] = options.simulation.heights;
  j["matrix"] = ordered_json::parse(matrix_to_json(options.matrix));
  auto& files = j["files"] = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json f;
    f["file"] = e.file;
    f["vehicle"] = e.vehicle;
    f["facing"] = e.facing;
    f["vehicles"] = e.vehicles;
    f["band"] = e.band;
    f["status"] = e.ok() ? "ok" : "failed";
    if (e.ok())
      f["sha256"] = e.sha256;
    else
      f["error"] = e.error;
    files.push_back(std::move(f));
  }
  j["failures"] = report.failures();
  return j.dump(2) + "\n";
}

}  // namespace sightline::cli
