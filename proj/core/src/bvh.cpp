#include "sightline/bvh.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sightline {

namespace {

// Node boxes are inflated by this relative amount so that rounding in the
// slab test can never cull a node that holds the true first hit.
constexpr double kBoxInflation = 1e-9;

Aabb inflate(const Aabb& box) {
  const double scale =
      1.0 + std::max({std::abs(box.min.x), std::abs(box.min.y), std::abs(box.min.z),
                      std::abs(box.max.x), std::abs(box.max.y), std::abs(box.max.z)});
  return box.padded(kBoxInflation * scale);
}

struct RayBoxTester {
  Vec3 origin;
  Vec3 inv;
  std::array<bool, 3> flat{};

  explicit RayBoxTester(const Segment& seg) : origin(seg.origin) {
    for (int a = 0; a < 3; ++a) {
      flat[a] = seg.direction[a] == 0.0;
      inv[a] = flat[a] ? 0.0 : 1.0 / seg.direction[a];
    }
  }

  // Entry parameter of the ray into `box` clipped to [lo, hi], or +inf on a miss.
  double enter(const Aabb& box, double lo, double hi) const {
    for (int a = 0; a < 3; ++a) {
      if (flat[a]) {
        if (origin[a] < box.min[a] || origin[a] > box.max[a])
          return std::numeric_limits<double>::infinity();
        continue;
      }
      double t0 = (box.min[a] - origin[a]) * inv[a];
      double t1 = (box.max[a] - origin[a]) * inv[a];
      if (t0 > t1) std::swap(t0, t1);
      lo = t0 > lo ? t0 : lo;
      hi = t1 < hi ? t1 : hi;
      if (lo > hi) return std::numeric_limits<double>::infinity();
    }
    return lo;
  }
};

}  // namespace

Bvh::Bvh(const TriMesh& mesh) {
  const auto n = static_cast<std::uint32_t>(mesh.triangle_count());
  if (n == 0) return;

  std::vector<Aabb> boxes(n);
  std::vector<Vec3> centroids(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto tri = mesh.triangle(i);
    Aabb b;
    for (const auto& v : tri) b.expand(v);
    boxes[i] = b;
    centroids[i] = (tri[0] + tri[1] + tri[2]) / 3.0;
  }

  order_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) order_[i] = i;
  nodes_.reserve(2 * (n / kMaxLeafSize + 1) + 1);
  nodes_.emplace_back();
  build(0, boxes, centroids, 0, n);

  packed_.reserve(n);
  for (auto idx : order_) {
    const auto tri = mesh.triangle(idx);
    packed_.push_back({tri[0], tri[1], tri[2], idx, mesh.owners()[idx]});
  }
}

void Bvh::build(std::uint32_t node, std::span<const Aabb> boxes, std::span<const Vec3> centroids,
                std::uint32_t begin, std::uint32_t end) {
  Aabb box;
  Aabb centroid_box;
  for (auto i = begin; i < end; ++i) {
    box.expand(boxes[order_[i]]);
    centroid_box.expand(centroids[order_[i]]);
  }
  nodes_[node].box = inflate(box);

  const auto count = end - begin;
  if (count <= kMaxLeafSize) {
    nodes_[node].first = begin;
    nodes_[node].count = count;
    return;
  }

  const int axis = centroid_box.longest_axis();
  const auto mid = begin + count / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     const double ca = centroids[a][axis];
                     const double cb = centroids[b][axis];
                     return ca < cb || (ca == cb && a < b);
                   });

  const auto left = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  nodes_.emplace_back();
  nodes_[node].first = left;
  nodes_[node].count = 0;
  build(left, boxes, centroids, begin, mid);
  build(left + 1, boxes, centroids, mid, end);
}

std::optional<Hit> Bvh::first_hit(const Segment& seg) const {
  if (nodes_.empty()) return std::nullopt;

  const RayBoxTester tester(seg);
  double best_t = std::numeric_limits<double>::infinity();
  // Hits within the tie window of the running minimum; resolved at the end.
  std::array<std::pair<double, std::uint32_t>, 16> ties{};
  std::vector<std::pair<double, std::uint32_t>> overflow;
  std::size_t tie_count = 0;

  auto limit = [&] { return std::min(seg.t_max, best_t + kHitTieEpsilon); };

  std::array<std::uint32_t, 64> stack{};
  std::size_t top = 0;
  if (tester.enter(nodes_[0].box, seg.t_min, seg.t_max) == std::numeric_limits<double>::infinity())
    return std::nullopt;
  stack[top++] = 0;

  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (tester.enter(node.box, seg.t_min, limit()) == std::numeric_limits<double>::infinity())
      continue;
    if (node.is_leaf()) {
      for (auto i = node.first; i < node.first + node.count; ++i) {
        const auto& tri = packed_[i];
        const auto h = ray_triangle_intersect(seg, tri.v0, tri.v1, tri.v2);
        if (!h || h->t > limit()) continue;
        if (h->t < best_t) {
          best_t = h->t;
          const double window = best_t + kHitTieEpsilon;
          std::size_t kept = 0;
          for (std::size_t k = 0; k < tie_count; ++k) {
            if (ties[k].first <= window) ties[kept++] = ties[k];
          }
          tie_count = kept;
          std::erase_if(overflow, [&](const auto& e) { return e.first > window; });
        }
        if (tie_count < ties.size()) {
          ties[tie_count++] = {h->t, i};
        } else {
          overflow.emplace_back(h->t, i);
        }
      }
      continue;
    }
    const double tl = tester.enter(nodes_[node.first].box, seg.t_min, limit());
    const double tr = tester.enter(nodes_[node.first + 1].box, seg.t_min, limit());
    // Push the farther child first so the nearer one is visited next.
    if (tl <= tr) {
      if (tr != std::numeric_limits<double>::infinity()) stack[top++] = node.first + 1;
      if (tl != std::numeric_limits<double>::infinity()) stack[top++] = node.first;
    } else {
      if (tl != std::numeric_limits<double>::infinity()) stack[top++] = node.first;
      if (tr != std::numeric_limits<double>::infinity()) stack[top++] = node.first + 1;
    }
  }

  if (best_t == std::numeric_limits<double>::infinity()) return std::nullopt;

  const double window = best_t + kHitTieEpsilon;
  std::uint32_t best_packed = 0;
  std::uint32_t best_index = std::numeric_limits<std::uint32_t>::max();
  double winner_t = best_t;
  auto consider = [&](double t, std::uint32_t packed) {
    if (t <= window && packed_[packed].index < best_index) {
      best_index = packed_[packed].index;
      best_packed = packed;
      winner_t = t;
    }
  };
  for (std::size_t i = 0; i < tie_count; ++i) consider(ties[i].first, ties[i].second);
  for (const auto& [t, p] : overflow) consider(t, p);

  const auto& tri = packed_[best_packed];
  return Hit{winner_t, seg.at(winner_t), tri.index, tri.owner};
}

Bvh build_bvh(const TriMesh& mesh) { return Bvh(mesh); }

std::optional<Hit> first_hit(const Bvh& index, const Segment& seg) {
  return index.first_hit(seg);
}

}  // namespace sightline
