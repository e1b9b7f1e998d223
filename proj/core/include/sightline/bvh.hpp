#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sightline/geometry.hpp"

namespace sightline {

/// Bounding volume hierarchy over a TriMesh for first-hit segment queries.
///
/// Built by median split on the longest axis of the centroid bounds, with at
/// most kMaxLeafSize triangles per leaf. Construction is deterministic. The
/// index keeps its own copy of the triangle data, so it does not borrow the
/// mesh, and it is immutable after construction (safe for concurrent queries).
class Bvh {
 public:
  static constexpr std::uint32_t kMaxLeafSize = 8;

  struct Node {
    Aabb box;
    // Interior: index of the left child (right child is left + 1).
    // Leaf: first entry in the triangle order.
    std::uint32_t first{0};
    std::uint32_t count{0};  // > 0 marks a leaf
    bool is_leaf() const { return count > 0; }
  };

  Bvh() = default;
  explicit Bvh(const TriMesh& mesh);

  /// Minimal-t hit inside [seg.t_min, seg.t_max]. Among hits within
  /// kHitTieEpsilon of the minimum, the lowest triangle index wins.
  std::optional<Hit> first_hit(const Segment& seg) const;

  bool empty() const { return nodes_.empty(); }
  std::span<const Node> nodes() const { return nodes_; }
  /// Triangle indices in leaf order; leaf `n` owns [n.first, n.first + n.count).
  std::span<const std::uint32_t> leaf_triangles() const { return order_; }
  std::size_t triangle_count() const { return order_.size(); }

 private:
  struct PackedTriangle {
    Vec3 v0;
    Vec3 v1;
    Vec3 v2;
    std::uint32_t index;
    Owner owner;
  };

  void build(std::uint32_t node, std::span<const Aabb> boxes, std::span<const Vec3> centroids,
             std::uint32_t begin, std::uint32_t end);

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;
  std::vector<PackedTriangle> packed_;
};

Bvh build_bvh(const TriMesh& mesh);

std::optional<Hit> first_hit(const Bvh& index, const Segment& seg);

}  // namespace sightline
