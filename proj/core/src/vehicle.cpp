#include "sightline/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sightline/error.hpp"
#include "sightline/obj.hpp"

namespace sightline {

namespace detail {
extern const std::string_view kCatalogJson;
}

using nlohmann::json;

const std::array<std::string_view, kElementCount> kElementNames{
    "Back Bumper",      "Back Central Light", "Back Fenders",     "Back Low Reflector",
    "Back Plate",       "Back Window Rails",  "Back Window",      "Back Window Lower Frame",
    "Cowl Cover",       "Front Bumper",       "Lower Deflector",  "Front Doors",
    "Front Fenders",    "Front Plate",        "Windshield Rails", "Front Wheels",
    "Front Windows",    "Grill",              "Headlights",       "Hood",
    "Rear Doors",       "Rear Wheels",        "Rear Windows",     "Rocker Panel",
    "Roof",             "Side Mirrors",       "Windshield",       "Tail Lights",
    "Trunk"};

bool is_element_name(std::string_view name) {
  return std::find(kElementNames.begin(), kElementNames.end(), name) != kElementNames.end();
}

std::string_view to_string(SizeCategory c) {
  switch (c) {
    case SizeCategory::S:
      return "S";
    case SizeCategory::M:
      return "M";
    case SizeCategory::L:
      return "L";
    case SizeCategory::XL:
      return "XL";
  }
  return "?";
}

std::string_view to_string(ProxyStyle s) {
  switch (s) {
    case ProxyStyle::BoxSedan:
      return "box-sedan";
    case ProxyStyle::BoxVan:
      return "box-van";
    case ProxyStyle::BoxBus:
      return "box-bus";
    case ProxyStyle::Bike:
      return "bike";
  }
  return "?";
}

SizeCategory parse_size_category(std::string_view text) {
  if (text == "S") return SizeCategory::S;
  if (text == "M") return SizeCategory::M;
  if (text == "L") return SizeCategory::L;
  if (text == "XL") return SizeCategory::XL;
  throw Error("unknown size category '" + std::string(text) + "' (expected S, M, L or XL)");
}

ProxyStyle parse_proxy_style(std::string_view text) {
  if (text == "box-sedan") return ProxyStyle::BoxSedan;
  if (text == "box-van") return ProxyStyle::BoxVan;
  if (text == "box-bus") return ProxyStyle::BoxBus;
  if (text == "bike") return ProxyStyle::Bike;
  throw Error("unknown proxy_style '" + std::string(text) + "'");
}

SizeCategory category_for_length(double length) {
  if (length < 4.0) return SizeCategory::S;
  if (length < 6.0) return SizeCategory::M;
  if (length < 8.0) return SizeCategory::L;
  return SizeCategory::XL;
}

void VehicleSpec::validate() const {
  std::vector<std::string> issues;
  const std::string who = "vehicle '" + name + "': ";
  if (name.empty()) issues.push_back("vehicle name is empty");
  if (!(height > 0.0)) issues.push_back(who + "height must be > 0");
  if (!(width > 0.0)) issues.push_back(who + "width must be > 0");
  if (!(length > 0.0)) issues.push_back(who + "length must be > 0");
  if (!(pivot_spacing > length))
    issues.push_back(who + "pivot_spacing must exceed length (bumper gap must be positive)");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::vector<std::string> VehicleSpec::warnings() const {
  std::vector<std::string> out;
  const auto implied = category_for_length(length);
  if (implied != category) {
    std::ostringstream msg;
    msg << "vehicle '" << name << "': length " << length << " m implies category "
        << to_string(implied) << " but it is listed as " << to_string(category);
    out.push_back(msg.str());
  }
  if (bumper_gap && std::abs(gap() - *bumper_gap) > 0.01) {
    std::ostringstream msg;
    msg << "vehicle '" << name << "': pivot_spacing - length = " << gap()
        << " differs from bumper_gap " << *bumper_gap;
    out.push_back(msg.str());
  }
  return out;
}

Catalog::Catalog(std::vector<VehicleSpec> vehicles) : vehicles_(std::move(vehicles)) {
  std::set<std::string> seen;
  for (const auto& v : vehicles_) {
    v.validate();
    if (!seen.insert(v.name).second) throw ValidationError({"duplicate vehicle '" + v.name + "'"});
  }
}

const Catalog& Catalog::builtin() {
  static const Catalog catalog = from_json(detail::kCatalogJson);
  return catalog;
}

Catalog Catalog::from_json(std::string_view text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("catalog: ") + e.what());
  }
  std::vector<VehicleSpec> specs;
  try {
    std::map<std::string, double> pivots;
    if (j.contains("categories")) {
      for (const auto& [key, value] : j.at("categories").items())
        pivots[key] = value.at("pivot_spacing").get<double>();
    }
    std::size_t index = 0;
    for (const auto& v : j.at("vehicles")) {
      const std::string ctx = "catalog.vehicles[" + std::to_string(index++) + "]";
      try {
        VehicleSpec spec;
        spec.name = v.at("name").get<std::string>();
        const auto cat = v.at("category").get<std::string>();
        spec.category = parse_size_category(cat);
        spec.height = v.at("height").get<double>();
        spec.width = v.at("width").get<double>();
        spec.length = v.at("length").get<double>();
        if (v.contains("pivot_spacing")) {
          spec.pivot_spacing = v.at("pivot_spacing").get<double>();
        } else if (auto it = pivots.find(cat); it != pivots.end()) {
          spec.pivot_spacing = it->second;
        } else {
          throw ParseError("no pivot_spacing for category " + cat);
        }
        if (v.contains("bumper_gap")) spec.bumper_gap = v.at("bumper_gap").get<double>();
        spec.style = parse_proxy_style(v.value("style", std::string("box-sedan")));
        if (v.contains("mesh")) spec.mesh_path = base_dir / v.at("mesh").get<std::string>();
        if (v.contains("elements"))
          spec.element_map_path = base_dir / v.at("elements").get<std::string>();
        specs.push_back(std::move(spec));
      } catch (const json::exception& e) {
        throw ParseError(ctx + ": " + e.what());
      } catch (const ParseError& e) {
        throw ParseError(ctx + ": " + e.what());
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("catalog: ") + e.what());
  }
  return Catalog(std::move(specs));
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open catalog " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str(), path.parent_path());
}

const VehicleSpec* Catalog::find(std::string_view name) const {
  for (const auto& v : vehicles_)
    if (v.name == name) return &v;
  return nullptr;
}

const VehicleSpec& Catalog::at(std::string_view name) const {
  if (const auto* v = find(name)) return *v;
  std::string known;
  for (const auto& v : vehicles_) known += (known.empty() ? "" : ", ") + v.name;
  throw ValidationError({"unknown vehicle '" + std::string(name) + "' (known: " + known + ")"});
}

ElementMap::ElementMap(const Aabb& bounds, std::vector<ElementBox> boxes,
                       std::vector<std::string> absent)
    : bounds_(bounds), boxes_(std::move(boxes)), absent_(std::move(absent)) {
  std::vector<std::string> issues;
  std::set<int> priorities;
  for (auto& b : boxes_) {
    if (!is_element_name(b.name)) issues.push_back("unknown element name '" + b.name + "'");
    if (!priorities.insert(b.priority).second)
      issues.push_back("duplicate priority " + std::to_string(b.priority));
    b.box = Aabb(max(b.box.min, bounds_.min), min(b.box.max, bounds_.max));
    if (b.box.empty()) issues.push_back("element box '" + b.name + "' lies outside the vehicle");
  }
  for (const auto& a : absent_) {
    if (!is_element_name(a)) issues.push_back("unknown absent element '" + a + "'");
    for (const auto& b : boxes_)
      if (b.name == a) issues.push_back("element '" + a + "' is both absent and present");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  std::sort(boxes_.begin(), boxes_.end(),
            [](const ElementBox& a, const ElementBox& b) { return a.priority > b.priority; });
  std::sort(absent_.begin(), absent_.end());
  absent_.erase(std::unique(absent_.begin(), absent_.end()), absent_.end());
}

bool ElementMap::is_absent(std::string_view name) const {
  return std::find(absent_.begin(), absent_.end(), name) != absent_.end();
}

std::vector<std::string> ElementMap::present() const {
  std::set<std::string> names;
  for (const auto& b : boxes_) names.insert(b.name);
  return {names.begin(), names.end()};
}

std::optional<std::string_view> ElementMap::element_of(const Vec3& local) const {
  const Vec3 p = bounds_.empty() ? local : bounds_.clamp(local);
  for (const auto& b : boxes_)
    if (b.box.contains(p)) return std::string_view(b.name);
  return std::nullopt;
}

namespace {

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

std::string element_map_to_json(const ElementMap& map) {
  nlohmann::ordered_json j;
  j["bounds"] = {{"min", vec_json(map.bounds().min)}, {"max", vec_json(map.bounds().max)}};
  auto& elements = j["elements"] = nlohmann::ordered_json::array();
  auto boxes = map.boxes();
  std::sort(boxes.begin(), boxes.end(),
            [](const ElementBox& a, const ElementBox& b) { return a.priority < b.priority; });
  for (const auto& b : boxes) {
    nlohmann::ordered_json e;
    e["name"] = b.name;
    e["priority"] = b.priority;
    e["min"] = vec_json(b.box.min);
    e["max"] = vec_json(b.box.max);
    elements.push_back(std::move(e));
  }
  j["absent"] = map.absent();
  return j.dump(2) + "\n";
}

ElementMap element_map_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("element map: ") + e.what());
  }
  try {
    const Aabb bounds(vec_from(j.at("bounds").at("min")), vec_from(j.at("bounds").at("max")));
    std::vector<ElementBox> boxes;
    std::size_t index = 0;
    for (const auto& e : j.at("elements")) {
      const std::string ctx = "element map.elements[" + std::to_string(index++) + "]";
      try {
        boxes.push_back({e.at("name").get<std::string>(),
                         Aabb(vec_from(e.at("min")), vec_from(e.at("max"))),
                         e.at("priority").get<int>()});
      } catch (const json::exception& ex) {
        throw ParseError(ctx + ": " + ex.what());
      }
    }
    std::vector<std::string> absent;
    if (j.contains("absent")) absent = j.at("absent").get<std::vector<std::string>>();
    return ElementMap(bounds, std::move(boxes), std::move(absent));
  } catch (const json::exception& e) {
    throw ParseError(std::string("element map: ") + e.what());
  }
}

ElementMap load_element_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open element map " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return element_map_from_json(buf.str());
}

namespace {

Aabb mirrored(const Aabb& b) { return {{-b.max.x, b.min.y, b.min.z}, {-b.min.x, b.max.y, b.max.z}}; }

Aabb box(double x0, double y0, double z0, double x1, double y1, double z1) {
  return {{x0, y0, z0}, {x1, y1, z1}};
}

// Collects mesh parts and element boxes; later elements take priority.
class ProxyBuilder {
 public:
  void part(const Aabb& b) { add_box(mesh_, b, Owner::Target); }
  // `right` is the +x instance; the -x instance is its exact mirror.
  void part_pair(const Aabb& right) {
    part(right);
    part(mirrored(right));
  }
  void element(std::string_view name, const Aabb& b) {
    elements_.push_back({std::string(name), b, ++priority_});
  }
  void element_pair(std::string_view name, const Aabb& right) {
    element(name, right);
    element(name, mirrored(right));
  }

  VehicleModel finish(const VehicleSpec& spec, std::vector<std::string> absent) {
    VehicleModel model;
    model.spec = spec;
    model.bounds = mesh_bounds(mesh_);
    const Vec3 want{spec.width, spec.height, spec.length};
    const Vec3 got = model.bounds.extent();
    if (std::abs(got.x - want.x) > 1e-6 || std::abs(got.y - want.y) > 1e-6 ||
        std::abs(got.z - want.z) > 1e-6)
      throw Error("proxy for '" + spec.name + "' does not match its dimensions");
    model.elements = ElementMap(model.bounds, std::move(elements_), std::move(absent));
    model.mesh = std::move(mesh_);
    model.mirror_symmetric = true;
    return model;
  }

 private:
  TriMesh mesh_;
  std::vector<ElementBox> elements_;
  int priority_ = 0;
};

// Shared proportions of the four-wheeled grammars.
struct Frame {
  double w, h, l, hw;
  double rw, tw, clearance, belt, bumper_top;
  double zf, zr;  // axle positions
  double cab_x;   // half width of the greenhouse

  Frame(const VehicleSpec& s, double belt_ratio, double cabin_inset)
      : w(s.width), h(s.height), l(s.length), hw(s.width / 2.0) {
    rw = std::clamp(0.2 * h, 0.25, 0.5);
    tw = std::clamp(0.12 * w, 0.15, 0.3);
    clearance = 0.55 * rw;
    belt = belt_ratio * h;
    bumper_top = clearance + 0.35 * (belt - clearance);
    zf = -std::max(rw + 0.25, 0.16 * l);
    zr = -l + std::max(rw + 0.25, 0.17 * l);
    cab_x = hw - cabin_inset * w;
  }
};

void wheels_and_body(ProxyBuilder& b, const Frame& f) {
  b.part_pair(box(f.hw - f.tw, 0.0, f.zf - f.rw, f.hw, 2.0 * f.rw, f.zf + f.rw));
  b.part_pair(box(f.hw - f.tw, 0.0, f.zr - f.rw, f.hw, 2.0 * f.rw, f.zr + f.rw));
  b.part(box(-f.hw + 0.02, f.clearance, -f.l, f.hw - 0.02, f.belt, 0.0));
}

// Lower-body elements common to sedans, vans and buses.
void lower_elements(ProxyBuilder& b, const Frame& f) {
  const double hw = f.hw, l = f.l;
  b.element_pair("Rocker Panel", box(hw - 0.1, 0.0, f.zr + f.rw, hw, f.clearance + 0.12, f.zf - f.rw));
  b.element_pair("Back Fenders", box(hw - 0.12, 0.0, -l, hw, f.belt + 0.04, f.zr + f.rw + 0.15));
  b.element_pair("Front Fenders", box(hw - 0.12, 0.0, f.zf - f.rw - 0.15, hw, f.belt + 0.04, 0.0));
  b.element("Back Bumper", box(-hw, 0.0, -l, hw, f.bumper_top, -l + 0.12));
  b.element("Front Bumper", box(-hw, 0.0, -0.12, hw, f.bumper_top, 0.0));
  b.element("Lower Deflector", box(-hw + 0.15, 0.0, -0.12, hw - 0.15, f.clearance + 0.04, 0.0));
  b.element_pair("Back Low Reflector",
                 box(hw - 0.2, f.clearance, -l, hw - 0.05, f.clearance + 0.08, -l + 0.04));
  b.element("Grill", box(-0.28 * f.w, f.bumper_top, -0.06, 0.28 * f.w, f.belt - 0.02, 0.0));
  b.element_pair("Headlights", box(0.28 * f.w, f.bumper_top, -0.2, hw, f.belt, 0.0));
  b.element_pair("Tail Lights", box(0.28 * f.w, f.bumper_top, -l, hw, f.belt, -l + 0.2));
  const double plate = std::min(0.26, 0.2 * f.w);
  b.element("Front Plate", box(-plate, f.bumper_top - 0.06, -0.04, plate, f.bumper_top + 0.1, 0.0));
  b.element("Back Plate", box(-plate, f.bumper_top - 0.06, -l, plate, f.bumper_top + 0.1, -l + 0.04));
}

void wheel_and_mirror_elements(ProxyBuilder& b, const Frame& f, const Aabb& mirror_right) {
  const double hw = f.hw;
  b.element_pair("Front Wheels",
                 box(hw - f.tw - 0.02, 0.0, f.zf - f.rw - 0.02, hw, 2.0 * f.rw + 0.02, f.zf + f.rw + 0.02));
  b.element_pair("Rear Wheels",
                 box(hw - f.tw - 0.02, 0.0, f.zr - f.rw - 0.02, hw, 2.0 * f.rw + 0.02, f.zr + f.rw + 0.02));
  b.element_pair("Side Mirrors", mirror_right.padded(0.04));
}

// Glazing on a cabin whose front face is at z_front and rear face at z_back.
void cabin_elements(ProxyBuilder& b, const Frame& f, double z_front, double z_back, double z_mid,
                    bool cowl) {
  const double cx = f.cab_x, h = f.h, belt = f.belt;
  b.element("Roof", box(-cx, h - 0.08, z_back, cx, h, z_front));
  b.element_pair("Front Windows", box(cx - 0.08, belt + 0.06, z_mid, f.hw, h - 0.08, z_front - 0.08));
  b.element_pair("Rear Windows", box(cx - 0.08, belt + 0.06, z_back + 0.08, f.hw, h - 0.08, z_mid));
  b.element("Back Window", box(-cx + 0.08, belt + 0.08, z_back - 0.08, cx - 0.08, h - 0.08, z_back + 0.08));
  b.element_pair("Back Window Rails", box(cx - 0.08, belt, z_back - 0.08, cx, h, z_back + 0.08));
  b.element("Back Window Lower Frame", box(-cx, belt - 0.04, z_back - 0.12, cx, belt + 0.08, z_back + 0.04));
  b.element("Back Central Light", box(-0.15, h - 0.14, z_back - 0.08, 0.15, h - 0.04, z_back + 0.08));
  b.element("Windshield", box(-cx + 0.08, belt + 0.08, z_front - 0.08, cx - 0.08, h - 0.04, z_front + 0.08));
  b.element_pair("Windshield Rails", box(cx - 0.08, belt, z_front - 0.08, cx, h, z_front + 0.08));
  if (cowl) b.element("Cowl Cover", box(-cx, belt - 0.04, z_front - 0.04, cx, belt + 0.08, z_front + 0.16));
}

Aabb side_mirror(const Frame& f, double z_front) {
  return box(f.cab_x, f.belt + 0.03, z_front - 0.22, f.hw, f.belt + 0.15, z_front - 0.08);
}

VehicleModel build_sedan(const VehicleSpec& s) {
  const Frame f(s, 0.58, 0.08);
  const double hood = 0.27 * f.l, trunk = 0.2 * f.l;
  const double z_front = -hood, z_back = -f.l + trunk;
  const double z_mid = 0.5 * (z_front + z_back);
  ProxyBuilder b;
  wheels_and_body(b, f);
  b.part(box(-f.cab_x, f.belt, z_back, f.cab_x, f.h, z_front));
  const Aabb mirror = side_mirror(f, z_front);
  b.part_pair(mirror);

  b.element("Hood", box(-f.hw, 0.0, z_front, f.hw, f.h, 0.0));
  b.element("Front Doors", box(-f.hw, 0.0, z_mid, f.hw, f.h, z_front));
  b.element("Rear Doors", box(-f.hw, 0.0, z_back, f.hw, f.h, z_mid));
  b.element("Trunk", box(-f.hw, 0.0, -f.l, f.hw, f.h, z_back));
  cabin_elements(b, f, z_front, z_back, z_mid, true);
  lower_elements(b, f);
  wheel_and_mirror_elements(b, f, mirror);
  return b.finish(s, {});
}

VehicleModel build_van(const VehicleSpec& s) {
  const Frame f(s, 0.5, 0.08);
  const double hood = 0.15 * f.l;
  const double z_front = -hood, z_back = -f.l;
  const double z_mid = z_front - std::min(1.2, 0.3 * (f.l - hood));
  ProxyBuilder b;
  wheels_and_body(b, f);
  b.part(box(-f.cab_x, f.belt, z_back, f.cab_x, f.h, z_front));
  const Aabb mirror = side_mirror(f, z_front);
  b.part_pair(mirror);

  b.element("Hood", box(-f.hw, 0.0, z_front, f.hw, f.h, 0.0));
  b.element("Front Doors", box(-f.hw, 0.0, z_mid, f.hw, f.h, z_front));
  b.element("Rear Doors", box(-f.hw, 0.0, -f.l, f.hw, f.h, z_mid));
  cabin_elements(b, f, z_front, z_back, z_mid, true);
  lower_elements(b, f);
  wheel_and_mirror_elements(b, f, mirror);
  return b.finish(s, {"Trunk"});
}

VehicleModel build_bus(const VehicleSpec& s) {
  const Frame f(s, 0.4, 0.05);
  const double z_front = 0.0, z_back = -f.l, z_mid = -0.5 * f.l;
  ProxyBuilder b;
  wheels_and_body(b, f);
  b.part(box(-f.cab_x, f.belt, z_back, f.cab_x, f.h, z_front));
  const double mirror_y = 0.55 * f.h;
  const Aabb mirror = box(f.cab_x, mirror_y, -0.3, f.hw, mirror_y + 0.2, -0.1);
  b.part_pair(mirror);

  b.element("Front Doors", box(-f.hw, 0.0, z_mid, f.hw, f.h, 0.0));
  b.element("Rear Doors", box(-f.hw, 0.0, -f.l, f.hw, f.h, z_mid));
  cabin_elements(b, f, z_front, z_back, z_mid, false);
  lower_elements(b, f);
  wheel_and_mirror_elements(b, f, mirror);
  return b.finish(s, {"Cowl Cover", "Hood", "Trunk"});
}

VehicleModel build_bike(const VehicleSpec& s) {
  const double hw = s.width / 2.0, h = s.height, l = s.length;
  const double rw = std::clamp(0.2 * h, 0.25, 0.5);
  const double d = 2.0 * rw;
  const double tire = 0.06;
  const double seat = 0.74 * h;
  ProxyBuilder b;
  b.part(box(-tire, 0.0, -d, tire, d, 0.0));                          // front wheel
  b.part(box(-tire, 0.0, -l, tire, d, -l + d));                       // rear wheel
  b.part(box(-0.2, 0.6 * rw, -l + 0.6 * d, 0.2, seat, -0.7 * d));     // engine and tank
  b.part(box(-0.12, d, -0.6 * d, 0.12, 0.87 * h, -0.3 * d));          // fork and headlamp
  b.part(box(-0.2, seat, -0.55 * l, 0.2, h, -0.3 * l));               // screen and rider
  b.part(box(-hw, 0.83 * h, -0.62 * d, hw, 0.89 * h, -0.46 * d));     // handlebar
  b.part(box(-0.12, d, -l + 0.1, 0.12, 0.7 * h, -l + 0.6 * d));       // tail

  b.element("Front Fenders", box(-hw, 0.0, -0.5 * l, hw, h, 0.0));
  b.element("Back Fenders", box(-hw, 0.0, -l, hw, h, -0.5 * l));
  b.element("Rocker Panel", box(-0.2, 0.6 * rw - 0.04, -l + 0.6 * d, 0.2, 0.6 * rw + 0.12, -0.7 * d));
  b.element("Back Bumper", box(-0.12, d - 0.04, -l + 0.06, 0.12, d + 0.08, -l + 0.6 * d));
  b.element("Back Plate", box(-0.12, d + 0.08, -l + 0.06, 0.12, d + 0.2, -l + 0.16));
  b.element("Tail Lights", box(-0.12, d + 0.2, -l + 0.06, 0.12, 0.7 * h, -l + 0.2));
  b.element("Headlights", box(-0.12, 0.62 * h, -0.3 * d - 0.08, 0.12, 0.82 * h, -0.3 * d + 0.04));
  b.element("Front Wheels", box(-tire - 0.02, 0.0, -d - 0.02, tire + 0.02, d + 0.02, 0.0));
  b.element("Rear Wheels", box(-tire - 0.02, 0.0, -l, tire + 0.02, d + 0.02, -l + d + 0.02));
  b.element_pair("Side Mirrors", box(hw - 0.12, 0.83 * h - 0.04, -0.62 * d - 0.04, hw, 0.89 * h + 0.04,
                                     -0.46 * d + 0.04));
  return b.finish(s, {"Back Central Light", "Back Low Reflector", "Back Window Rails", "Back Window",
                      "Back Window Lower Frame", "Cowl Cover", "Front Bumper", "Lower Deflector",
                      "Front Doors", "Front Plate", "Windshield Rails", "Front Windows", "Grill",
                      "Hood", "Rear Doors", "Rear Windows", "Roof", "Windshield", "Trunk"});
}

}  // namespace

VehicleModel proxy_vehicle(const VehicleSpec& spec) {
  spec.validate();
  switch (spec.style) {
    case ProxyStyle::BoxSedan:
      return build_sedan(spec);
    case ProxyStyle::BoxVan:
      return build_van(spec);
    case ProxyStyle::BoxBus:
      return build_bus(spec);
    case ProxyStyle::Bike:
      return build_bike(spec);
  }
  throw Error("unknown proxy_style for '" + spec.name + "'");
}

VehicleModel load_vehicle(const VehicleSpec& spec) {
  if (!spec.mesh_path) {
    VehicleModel model = proxy_vehicle(spec);
    if (spec.element_map_path) model.elements = load_element_map(*spec.element_map_path);
    return model;
  }
  spec.validate();
  VehicleModel model;
  model.spec = spec;
  model.mesh = read_obj_file(*spec.mesh_path, Owner::Target).mesh;
  model.bounds = mesh_bounds(model.mesh);
  model.mirror_symmetric = is_mirror_symmetric(model.mesh);
  if (spec.element_map_path) model.elements = load_element_map(*spec.element_map_path);
  return model;
}

bool is_mirror_symmetric(const TriMesh& mesh) {
  auto less = [](const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  };
  std::vector<Vec3> a(mesh.vertices().begin(), mesh.vertices().end());
  std::vector<Vec3> m;
  m.reserve(a.size());
  for (const auto& v : a) m.push_back(mirror_x(v));
  std::sort(a.begin(), a.end(), less);
  std::sort(m.begin(), m.end(), less);
  return a == m;
}

Aabb PlacedVehicle::world_bounds(const Aabb& local) const {
  Aabb out;
  for (int c = 0; c < 8; ++c) {
    const Vec3 corner{(c & 1) ? local.max.x : local.min.x, (c & 2) ? local.max.y : local.min.y,
                      (c & 4) ? local.max.z : local.min.z};
    out.expand(to_world(reflected ? mirror_x(corner) : corner));
  }
  return out;
}

TriMesh PlacedVehicle::world_mesh(const TriMesh& local) const {
  return local.transformed([this](const Vec3& v) { return to_world(reflected ? mirror_x(v) : v); });
}

}  // namespace sightline
