#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sightline/analysis.hpp"
#include "sightline/error.hpp"
#include "sightline/heatmap.hpp"
#include "sightline/obj.hpp"
#include "sightline/render.hpp"

namespace sightline::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string catalog;
  std::string scene;
  std::string driving_side;
  std::string out;
  unsigned threads{0};
};

void add_scene_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--scene", c.scene, "Scene configuration JSON")->check(CLI::ExistingFile);
  cmd->add_option("--driving-side", c.driving_side, "Override the scene's driving side (right|left)");
}

void add_catalog_option(CLI::App* cmd, Common& c) {
  cmd->add_option("--catalog", c.catalog, "Vehicle catalog JSON (default: built-in)")
      ->check(CLI::ExistingFile);
}

void add_out_option(CLI::App* cmd, Common& c) {
  cmd->add_option("-o,--out", c.out, "Output directory (default: $SIGHTLINE_OUT or .)");
}

Catalog load_catalog(const Common& c) {
  return c.catalog.empty() ? Catalog::builtin() : Catalog::load(c.catalog);
}

SceneConfig load_scene(const Common& c) {
  SceneConfig cfg = c.scene.empty() ? SceneConfig{} : load_scene_config(c.scene);
  if (!c.driving_side.empty()) cfg.driving_side = parse_driving_side(c.driving_side);
  return cfg;
}

fs::path out_dir(const Common& c) {
  fs::path dir;
  if (!c.out.empty()) {
    dir = c.out;
  } else if (const char* env = std::getenv("SIGHTLINE_OUT"); env && *env) {
    dir = env;
  } else {
    dir = ".";
  }
  fs::create_directories(dir);
  return fs::absolute(dir).lexically_normal();
}

std::vector<double> heights_or_default(const std::vector<double>& heights) {
  if (heights.empty()) return default_camera_heights();
  for (double h : heights) {
    if (!(h > 0.0)) throw ValidationError({"camera heights must be positive"});
  }
  return heights;
}

void check_spacing(double spacing) {
  if (!(spacing > 0.0)) throw ValidationError({"grid spacing must be > 0"});
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  if (!out) throw Error("cannot write " + path.string());
}

// Files named on the command line plus every *.json under named directories
// (manifest.json excluded), sorted for a stable merge order.
std::vector<fs::path> collect_heatmaps(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ".json" &&
            e.path().filename() != "manifest.json")
          found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(in)) {
      files.emplace_back(in);
    } else {
      throw ValidationError({"no such heatmap file or directory: " + in});
    }
  }
  if (files.empty()) throw ValidationError({"no heatmap files given"});
  return files;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  Common common;
  std::string vehicle;
  std::string facing;
  int vehicles{1};
  std::string range;
  std::string mode{"faithful"};
  double spacing{0.05};
  std::vector<double> heights;
  std::vector<int> targets;
  std::vector<int> fillers;
  std::vector<std::string> directions;
  std::string output;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  check_spacing(a.spacing);
  const Catalog catalog = load_catalog(a.common);
  const StaticScene scene = build_street(load_scene(a.common));

  // --facing is the facing on the simulated street; plans are kept in right-hand terms.
  const Facing actual = parse_facing(a.facing);
  FacingPlan plan = default_plan(scene.mirrored ? mirror(actual) : actual);
  RunSpec run;
  run.facing = plan.facing;
  run.target_slots = a.targets.empty() ? plan.target_slots : a.targets;
  run.filler_slots = a.fillers.empty() ? plan.filler_slots : a.fillers;
  run.vehicle_count = a.vehicles;
  run.band = parse_band(a.range);
  run.mode = parse_occlusion_mode(a.mode);
  if (a.directions.empty()) {
    run.camera_directions = camera_direction_set(run.facing);
  } else {
    // given in street terms as well
    for (const auto& d : a.directions) {
      const Cardinal c = parse_cardinal(d);
      run.camera_directions.push_back(scene.mirrored ? mirror(c) : c);
    }
  }
  run.validate();

  const VehicleModel model = load_vehicle(catalog.at(a.vehicle));
  const GridPointMap grid = build_grid(model.mesh, a.spacing, model.mirror_symmetric);
  SimulationOptions options;
  options.heights = heights_or_default(a.heights);
  options.threads = a.common.threads;
  const Heatmap h = run_simulation(run, scene, model, grid, options);

  const fs::path path = a.output.empty() ? out_dir(a.common) / heatmap_file_name(a.vehicle, run, scene)
                                         : fs::path(a.output);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file(path, serialize(h));
  out << "captures_total " << h.captures_total << "\n"
      << "nonzero_points " << h.points.size() << "\n"
      << "wrote " << path.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  Common common;
  std::vector<std::string> vehicles;
  bool all{false};
  std::string matrix;
  std::string preset;
  std::string mode;
  double spacing{0.05};
  std::vector<double> heights;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  check_spacing(a.spacing);
  if (!a.matrix.empty() && !a.preset.empty())
    throw ValidationError({"--matrix and --preset are mutually exclusive"});
  SweepOptions opt;
  opt.catalog = load_catalog(a.common);
  opt.scene = load_scene(a.common);
  opt.matrix = !a.matrix.empty() ? load_matrix(a.matrix)
                                 : MatrixConfig::preset(a.preset.empty() ? "paper-19" : a.preset);
  if (!a.mode.empty()) opt.matrix.mode = parse_occlusion_mode(a.mode);
  if (a.all) {
    for (const auto& v : opt.catalog.vehicles()) opt.vehicles.push_back(v.name);
  } else {
    opt.vehicles = a.vehicles;
  }
  if (opt.vehicles.empty()) throw ValidationError({"give --vehicle NAME (repeatable) or --all"});
  for (const auto& v : opt.vehicles) opt.catalog.at(v);
  opt.out_dir = out_dir(a.common);
  opt.spacing = a.spacing;
  opt.simulation.heights = heights_or_default(a.heights);
  opt.simulation.threads = a.common.threads;

  const SweepReport report = run_sweep(opt, err);
  out << report.entries.size() - report.failures() << " files written, " << report.failures()
      << " failed\n"
      << "manifest " << (opt.out_dir / "manifest.json").string() << "\n";
  return report.failures() ? kRuntime : kOk;
}

// ---------------------------------------------------------------- render

struct RenderArgs {
  Common common;
  std::vector<std::string> inputs;
  std::string vehicle;
  std::vector<std::string> views;
  int width{1024};
  int height{768};
  std::string normalize{"max"};
  bool ply{false};
  std::string name;
};

int cmd_render(const RenderArgs& a, std::ostream& out) {
  if (a.width <= 0 || a.height <= 0) throw ValidationError({"image size must be positive"});
  const Normalization norm = a.normalize == "max"        ? Normalization::MapMax
                             : a.normalize == "captures" ? Normalization::CapturesTotal
                                                         : throw ValidationError({"--normalize must be max or captures"});
  std::vector<Heatmap> maps;
  for (const auto& f : collect_heatmaps(a.inputs)) maps.push_back(read_heatmap(f));
  const Heatmap merged = merge(maps);

  const Catalog catalog = load_catalog(a.common);
  const std::string vehicle = a.vehicle.empty() ? merged.vehicle : a.vehicle;
  const VehicleModel model = load_vehicle(catalog.at(vehicle));

  std::vector<View> views;
  if (a.views.empty()) {
    views.assign(kAllViews.begin(), kAllViews.end());
  } else {
    for (const auto& v : a.views) views.push_back(parse_view(v));
  }

  const fs::path dir = out_dir(a.common);
  const std::string stem = a.name.empty() ? vehicle : a.name;
  for (View v : views) {
    ViewSpec spec;
    spec.view = v;
    spec.width = a.width;
    spec.height = a.height;
    spec.normalization = norm;
    std::ostringstream ppm;
    write_ppm(ppm, render_view(model.mesh, merged, spec));
    const fs::path path = dir / (stem + "_" + std::string(to_string(v)) + ".ppm");
    write_file(path, ppm.str());
    out << "wrote " << path.string() << "\n";
  }
  if (a.ply) {
    const fs::path path = dir / (stem + ".ply");
    write_file(path, export_ply(merged, norm));
    out << "wrote " << path.string() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  Common common;
  std::vector<std::string> inputs;
  double tau{0.5};
  std::string denominator{"captures"};
  std::size_t top_k{3};
};

std::string single_facing(const Heatmap& h, const fs::path& file) {
  if (h.runs.empty()) throw ValidationError({file.string() + ": heatmap has no run metadata"});
  const std::string f = h.runs.front().facing;
  for (const auto& r : h.runs) {
    if (r.facing != f) throw ValidationError({file.string() + ": mixes facings " + f + " and " + r.facing});
  }
  return f;
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  if (!(a.tau > 0.0 && a.tau <= 1.0)) throw ValidationError({"--tau must lie in (0, 1]"});
  const Denominator den = parse_denominator(a.denominator);
  const Catalog catalog = load_catalog(a.common);

  // vehicle -> facing -> merged heatmap; vehicle -> every input (for band rows)
  std::map<std::string, std::map<Facing, Heatmap>> merged;
  std::map<std::string, std::vector<Heatmap>> by_vehicle;
  for (const auto& file : collect_heatmaps(a.inputs)) {
    Heatmap h = read_heatmap(file);
    const Facing f = parse_facing(single_facing(h, file));
    auto& slot = merged[h.vehicle];
    if (auto it = slot.find(f); it != slot.end())
      it->second = merge(it->second, h);
    else
      slot.emplace(f, h);
    by_vehicle[h.vehicle].push_back(std::move(h));
  }

  std::map<std::string, VehicleModel> models;
  std::vector<std::string> order;
  for (const auto& spec : catalog.vehicles()) {
    if (!merged.contains(spec.name)) continue;
    VehicleModel model = load_vehicle(spec);
    if (model.elements.boxes().empty())
      throw ValidationError({"missing element map for vehicle '" + spec.name + "'"});
    models.emplace(spec.name, std::move(model));
    order.push_back(spec.name);
  }
  for (const auto& [name, _] : merged) {
    if (!models.contains(name)) throw ValidationError({"vehicle '" + name + "' is not in the catalog"});
  }

  std::vector<TableEntry> entries;
  for (const auto& name : order) {
    for (const auto& [facing, h] : merged.at(name))
      entries.push_back({name, facing, &h, &models.at(name).elements});
  }
  const VisibilityTable table = build_table(order, entries, a.tau, den);
  const fs::path dir = out_dir(a.common);
  write_file(dir / "visibility.csv", to_csv(table));
  out << "wrote " << (dir / "visibility.csv").string() << "\n";
  for (const auto& w : table.warnings) out << "warning: " << w << "\n";

  for (const auto& name : order) {
    std::vector<RangeBand> bands;
    for (const auto& h : by_vehicle.at(name)) {
      for (const auto& r : h.runs) {
        if (std::find(bands.begin(), bands.end(), r.band) == bands.end()) bands.push_back(r.band);
      }
    }
    std::sort(bands.begin(), bands.end(),
              [](const RangeBand& x, const RangeBand& y) { return std::pair(x.min, x.max) < std::pair(y.min, y.max); });
    const auto rows = band_report(by_vehicle.at(name), &models.at(name).elements, bands, a.top_k);
    const fs::path path = dir / ("bands_" + name + ".csv");
    write_file(path, band_report_csv(rows));
    out << "wrote " << path.string() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  Common common;
  std::string matrix;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  std::vector<std::string> failures;
  SceneConfig cfg = load_scene(a.common);
  if (const auto issues = cfg.issues(); !issues.empty()) {
    for (const auto& i : issues) out << "FAIL scene config: " << i << "\n";
    out << "FAIL\n";
    return kValidation;
  }
  const StaticScene scene = build_street(cfg);
  out << "driving side: " << to_string(scene.driving_side()) << "\n"
      << "bollards: " << scene.count(ObstacleKind::Bollard) << "\n"
      << "lamps: " << scene.count(ObstacleKind::Lamp) << "\n"
      << "camera stations: " << scene.stations.size() << "\n"
      << "static triangles: " << scene.mesh.triangle_count() << "\n";
  for (const auto& i : check_scene(scene)) failures.push_back("scene: " + i);

  const Catalog catalog = load_catalog(a.common);
  for (const auto& spec : catalog.vehicles()) {
    try {
      spec.validate();
    } catch (const ValidationError& e) {
      for (const auto& i : e.issues()) failures.push_back("vehicle " + spec.name + ": " + i);
    }
    for (const auto& w : spec.warnings()) out << "warning: vehicle " << spec.name << ": " << w << "\n";
  }
  out << "vehicles: " << catalog.vehicles().size() << "\n";

  if (!a.matrix.empty()) {
    const MatrixConfig m = load_matrix(a.matrix);
    const auto runs = expand_matrix(m);
    for (const auto& run : runs) {
      try {
        run.validate();
        enumerate_scenarios(run.target_slots, run.filler_slots, run.vehicle_count);
      } catch (const ValidationError& e) {
        for (const auto& i : e.issues()) failures.push_back("matrix: " + i);
      } catch (const Error& e) {
        failures.push_back(std::string("matrix: ") + e.what());
      }
    }
    out << "matrix runs per vehicle: " << runs.size() << "\n";
  }

  for (const auto& f : failures) out << "FAIL " << f << "\n";
  out << (failures.empty() ? "PASS" : "FAIL") << "\n";
  return failures.empty() ? kOk : kValidation;
}

// ---------------------------------------------------------------- proxy, scenarios

struct ProxyArgs {
  Common common;
  std::string vehicle;
};

int cmd_proxy(const ProxyArgs& a, std::ostream& out) {
  const Catalog catalog = load_catalog(a.common);
  const VehicleModel model = proxy_vehicle(catalog.at(a.vehicle));
  const fs::path dir = out_dir(a.common);
  std::ostringstream obj;
  write_obj(obj, model.mesh);
  write_file(dir / (a.vehicle + ".obj"), obj.str());
  write_file(dir / (a.vehicle + "_elements.json"), element_map_to_json(model.elements));
  out << "wrote " << (dir / (a.vehicle + ".obj")).string() << "\n"
      << "wrote " << (dir / (a.vehicle + "_elements.json")).string() << "\n";
  return kOk;
}

struct ScenariosArgs {
  std::string facing;
  int vehicles{1};
  std::vector<int> targets;
  std::vector<int> fillers;
};

int cmd_scenarios(const ScenariosArgs& a, std::ostream& out) {
  const Facing f = parse_facing(a.facing);
  const FacingPlan plan = default_plan(f);
  const auto list = enumerate_scenarios(a.targets.empty() ? plan.target_slots : a.targets,
                                        a.fillers.empty() ? plan.filler_slots : a.fillers, a.vehicles);
  out << format_scenarios(f, a.vehicles, list) << list.size() << " scenario(s)\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vehicle surface visibility simulator", "sightline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sightline 0.1.0");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one (facing, vehicle count, band) simulation");
  add_catalog_option(simulate, sim.common);
  add_scene_options(simulate, sim.common);
  add_out_option(simulate, sim.common);
  simulate->add_option("--vehicle", sim.vehicle, "Catalog vehicle name")->required();
  simulate->add_option("--facing", sim.facing, "Target facing (N, S, E, W or north, ...)")->required();
  simulate->add_option("--vehicles", sim.vehicles, "Vehicles in the scene, target included")->required();
  simulate->add_option("--range", sim.range, "Distance band MIN,MAX in meters")->required();
  simulate->add_option("--mode", sim.mode, "Occlusion mode: faithful or physical")->capture_default_str();
  simulate->add_option("--spacing", sim.spacing, "Lattice spacing in meters")->capture_default_str();
  simulate->add_option("--heights", sim.heights, "Camera heights in meters (default 1.0 1.2 1.4 1.6 1.8)");
  simulate->add_option("--targets", sim.targets, "Target slot set (default: facing plan)");
  simulate->add_option("--fillers", sim.fillers, "Filler slot set (default: facing plan)");
  simulate->add_option("--directions", sim.directions, "Camera directions (default: facing plan)");
  simulate->add_option("--threads", sim.common.threads, "Worker threads, 0 = all cores");
  simulate->add_option("--output", sim.output, "Output file (default: OUT/{vehicle}_{facing}_{n}_{band}.json)");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Run a whole experiment matrix for one or more vehicles");
  add_catalog_option(sweep, sw.common);
  add_scene_options(sweep, sw.common);
  add_out_option(sweep, sw.common);
  sweep->add_option("--vehicle", sw.vehicles, "Vehicle name (repeatable)");
  sweep->add_flag("--all", sw.all, "Every catalog vehicle");
  sweep->add_option("--matrix", sw.matrix, "Matrix JSON")->check(CLI::ExistingFile);
  sweep->add_option("--preset", sw.preset, "literal-20 or paper-19 (default paper-19)");
  sweep->add_option("--mode", sw.mode, "Override the matrix occlusion mode");
  sweep->add_option("--spacing", sw.spacing, "Lattice spacing in meters")->capture_default_str();
  sweep->add_option("--heights", sw.heights, "Camera heights in meters");
  sweep->add_option("--threads", sw.common.threads, "Worker threads, 0 = all cores");

  RenderArgs rd;
  auto* render = app.add_subcommand("render", "Merge heatmaps and render views as PPM images");
  add_catalog_option(render, rd.common);
  add_out_option(render, rd.common);
  render->add_option("inputs", rd.inputs, "Heatmap files or directories")->required();
  render->add_option("--vehicle", rd.vehicle, "Mesh to draw (default: the heatmap's vehicle)");
  render->add_option("--views", rd.views, "Views to render (default: all nine)");
  render->add_option("--width", rd.width)->capture_default_str();
  render->add_option("--height", rd.height)->capture_default_str();
  render->add_option("--normalize", rd.normalize, "Colour scale: max or captures")->capture_default_str();
  render->add_flag("--ply", rd.ply, "Also export a PLY point cloud");
  render->add_option("--name", rd.name, "File name stem (default: vehicle name)");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Element visibility table and per-band report");
  add_catalog_option(analyze, an.common);
  add_out_option(analyze, an.common);
  analyze->add_option("inputs", an.inputs, "Heatmap files or directories")->required();
  analyze->add_option("--tau", an.tau, "Visibility threshold")->capture_default_str();
  analyze->add_option("--denominator", an.denominator, "captures or max")->capture_default_str();
  analyze->add_option("--top-k", an.top_k, "Elements listed per band row")->capture_default_str();

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check scene, catalog and matrix invariants");
  add_catalog_option(validate, va.common);
  add_scene_options(validate, va.common);
  validate->add_option("--matrix", va.matrix, "Matrix JSON")->check(CLI::ExistingFile);

  ProxyArgs px;
  auto* proxy = app.add_subcommand("proxy", "Write a proxy vehicle as OBJ plus element-map JSON");
  add_catalog_option(proxy, px.common);
  add_out_option(proxy, px.common);
  proxy->add_option("--vehicle", px.vehicle, "Catalog vehicle name")->required();

  ScenariosArgs sc;
  auto* scenarios = app.add_subcommand("scenarios", "List the placements of one facing and vehicle count");
  scenarios->add_option("--facing", sc.facing)->required();
  scenarios->add_option("--vehicles", sc.vehicles)->required();
  scenarios->add_option("--targets", sc.targets);
  scenarios->add_option("--fillers", sc.fillers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out);
    if (*sweep) return cmd_sweep(sw, out, err);
    if (*render) return cmd_render(rd, out);
    if (*analyze) return cmd_analyze(an, out);
    if (*validate) return cmd_validate(va, out);
    if (*proxy) return cmd_proxy(px, out);
    if (*scenarios) return cmd_scenarios(sc, out);
  } catch (const ValidationError& e) {
    err << "error: invalid input\n";
    for (const auto& i : e.issues()) err << "  - " << i << "\n";
    return kValidation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kRuntime;
}

}  // namespace sightline::cli
