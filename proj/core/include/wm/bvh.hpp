#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wm/intersect.hpp"
#include "wm/math.hpp"
#include "wm/mesh.hpp"

namespace wm {

/// Binary bounding volume hierarchy over a TriMesh's triangles.
///
/// Construction is deterministic: each node splits its triangles at the
/// median centroid along the longest axis of the node's centroid bounds
/// (ties between axes go to the lower axis; ties between centroids go to the
/// lower triangle index).
class Bvh {
 public:
  static constexpr std::uint32_t kDefaultLeafSize = 4;

  struct Node {
    Aabb box;
    // Interior: children at `left` and `left + 1` when count == 0.
    // Leaf: triangle_order[first, first + count).
    std::uint32_t left = 0;
    std::uint32_t first = 0;
    std::uint32_t count = 0;

    bool is_leaf() const { return count > 0; }
  };

  Bvh() = default;

  static Bvh build(const TriMesh& mesh, std::uint32_t max_leaf_size = kDefaultLeafSize);

  /// Nearest hit with the shared tie rule (see kTieEpsilon). Degenerate
  /// triangles are skipped.
  std::optional<SurfaceHit> raycast(const TriMesh& mesh, const Ray& ray) const;

  bool empty() const { return nodes_.empty(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::uint32_t>& triangle_order() const { return order_; }
  std::uint32_t max_leaf_size() const { return max_leaf_size_; }
  std::size_t leaf_count() const;

 private:
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;
  std::uint32_t max_leaf_size_ = kDefaultLeafSize;
};

/// Free-function spelling of Bvh::build / Bvh::raycast.
inline Bvh build_bvh(const TriMesh& mesh, std::uint32_t max_leaf_size = Bvh::kDefaultLeafSize) {
  return Bvh::build(mesh, max_leaf_size);
}
inline std::optional<SurfaceHit> raycast_bvh(const Bvh& bvh, const TriMesh& mesh, const Ray& ray) {
  return bvh.raycast(mesh, ray);
}

}  // namespace wm
