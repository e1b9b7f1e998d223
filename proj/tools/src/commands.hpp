#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sightline/capture.hpp"
#include "sightline/scenario.hpp"
#include "sightline/scene.hpp"
#include "sightline/vehicle.hpp"

namespace sightline::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kRuntime = 2 };

std::string sha256_hex(std::string_view bytes);

/// `{vehicle}_{facing}_{n}_{band}.json`, with the facing as simulated in `scene`.
std::string heatmap_file_name(std::string_view vehicle, const RunSpec& run, const StaticScene& scene);

struct SweepOptions {
  std::vector<std::string> vehicles;
  MatrixConfig matrix;
  std::filesystem::path out_dir;
  double spacing{0.05};
  SimulationOptions simulation;
  SceneConfig scene;
  Catalog catalog;
};

struct SweepEntry {
  std::string file;
  std::string vehicle;
  std::string facing;
  int vehicles{0};
  std::string band;
  std::string sha256;  // empty on failure
  std::string error;
  bool ok() const { return error.empty(); }
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  std::size_t failures() const;
};

/// Runs every vehicle x matrix cell, writing one heatmap per run and then
/// manifest.json. A failing run is recorded and the sweep carries on.
SweepReport run_sweep(const SweepOptions& options, std::ostream& log);
std::string manifest_json(const SweepOptions& options, const SweepReport& report);

/// Full command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sightline::cli
