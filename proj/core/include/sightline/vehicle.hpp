#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sightline/compass.hpp"
#include "sightline/geometry.hpp"

namespace sightline {

enum class SizeCategory { S, M, L, XL };
enum class ProxyStyle { BoxSedan, BoxVan, BoxBus, Bike };

std::string_view to_string(SizeCategory c);
std::string_view to_string(ProxyStyle s);
SizeCategory parse_size_category(std::string_view text);
/// "box-sedan", "box-van", "box-bus" or "bike"; throws Error otherwise.
ProxyStyle parse_proxy_style(std::string_view text);

/// Category implied by length alone: S < 4 m <= M < 6 m <= L < 8 m <= XL.
SizeCategory category_for_length(double length);

struct VehicleSpec {
  std::string name;
  SizeCategory category{SizeCategory::M};
  double height{0.0};
  double width{0.0};
  double length{0.0};
  double pivot_spacing{0.0};
  /// Published bumper-to-bumper gap, kept to cross-check pivot_spacing - length.
  std::optional<double> bumper_gap;
  ProxyStyle style{ProxyStyle::BoxSedan};
  std::optional<std::filesystem::path> mesh_path;
  std::optional<std::filesystem::path> element_map_path;

  double gap() const { return pivot_spacing - length; }

  /// Hard invariants (positive dimensions, pivot_spacing > length). Throws ValidationError.
  void validate() const;
  /// Soft checks: category against length, gap against bumper_gap.
  std::vector<std::string> warnings() const;
};

class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<VehicleSpec> vehicles);

  /// The 15 vehicles shipped with the library.
  static const Catalog& builtin();
  /// Relative mesh / element-map paths are resolved against `base_dir`.
  static Catalog from_json(std::string_view text, const std::filesystem::path& base_dir = {});
  static Catalog load(const std::filesystem::path& path);

  const std::vector<VehicleSpec>& vehicles() const { return vehicles_; }
  const VehicleSpec* find(std::string_view name) const;
  /// Throws Error listing the known names when `name` is absent.
  const VehicleSpec& at(std::string_view name) const;

 private:
  std::vector<VehicleSpec> vehicles_;
};

inline constexpr std::size_t kElementCount = 29;
/// Exterior element vocabulary, in table column order.
extern const std::array<std::string_view, kElementCount> kElementNames;
bool is_element_name(std::string_view name);

struct ElementBox {
  std::string name;
  Aabb box;  // vehicle-local
  int priority{0};
};

/// Named, prioritised boxes in the vehicle-local frame. A point belongs to the
/// highest-priority box containing it, after clamping it into the vehicle bounds.
class ElementMap {
 public:
  ElementMap() = default;
  /// Clamps boxes to `bounds`; throws ValidationError on unknown names,
  /// duplicate priorities or empty boxes.
  ElementMap(const Aabb& bounds, std::vector<ElementBox> boxes, std::vector<std::string> absent);

  const Aabb& bounds() const { return bounds_; }
  const std::vector<ElementBox>& boxes() const { return boxes_; }  // by descending priority
  const std::vector<std::string>& absent() const { return absent_; }
  bool is_absent(std::string_view name) const;
  /// Distinct element names that own at least one box, sorted.
  std::vector<std::string> present() const;

  std::optional<std::string_view> element_of(const Vec3& local) const;

 private:
  Aabb bounds_;
  std::vector<ElementBox> boxes_;
  std::vector<std::string> absent_;
};

std::string element_map_to_json(const ElementMap& map);
ElementMap element_map_from_json(std::string_view text);
ElementMap load_element_map(const std::filesystem::path& path);

/// A vehicle ready for simulation: local-frame mesh plus its element map.
struct VehicleModel {
  VehicleSpec spec;
  TriMesh mesh;
  ElementMap elements;
  Aabb bounds;
  /// Mesh is its own mirror image about x = 0 (always true for proxies).
  bool mirror_symmetric{false};
};

/// Parametric box-grammar stand-in built from the spec dimensions.
VehicleModel proxy_vehicle(const VehicleSpec& spec);
/// Loads spec.mesh_path / spec.element_map_path when set, else builds the proxy.
VehicleModel load_vehicle(const VehicleSpec& spec);

/// True when the vertex multiset maps onto itself under x -> -x.
bool is_mirror_symmetric(const TriMesh& mesh);

/// A vehicle instance in a scenario. The pivot is the centre of the front
/// bumper plane on the ground.
struct PlacedVehicle {
  int slot{0};
  Owner role{Owner::Target};
  Facing facing{Facing::N};
  Vec3 pivot;
  /// Geometry is reflected about the local x = 0 plane when placed (used in
  /// mirrored scenes so the world stays an exact mirror image).
  bool reflected{false};

  Vec3 to_world(const Vec3& local) const { return rotate_to_world(facing, local) + pivot; }
  Vec3 to_local(const Vec3& world) const { return rotate_to_local(facing, world - pivot); }
  Aabb world_bounds(const Aabb& local) const;
  TriMesh world_mesh(const TriMesh& local) const;
};

}  // namespace sightline
