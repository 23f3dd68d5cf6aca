#include "wm/bvh.hpp"

#include <algorithm>
#include <limits>

namespace wm {

namespace {

Aabb triangle_box(const TriMesh& mesh, std::uint32_t tri_index) {
  Aabb box;
  for (std::uint32_t v : mesh.triangles[tri_index]) {
    box.expand(mesh.vertices[v]);
  }
  // Pad so slab-test rounding never rejects a ray that the triangle test
  // would accept.
  const double scale = 1.0 + std::max({std::abs(box.lo.x), std::abs(box.lo.y), std::abs(box.lo.z),
                                       std::abs(box.hi.x), std::abs(box.hi.y), std::abs(box.hi.z)});
  const Vec3 pad{1e-9 * scale, 1e-9 * scale, 1e-9 * scale};
  box.lo -= pad;
  box.hi += pad;
  return box;
}

struct Builder {
  const std::vector<Aabb>& boxes;
  const std::vector<Vec3>& centroids;
  std::vector<std::uint32_t>& order;
  std::vector<Bvh::Node>& nodes;
  std::uint32_t max_leaf;

  void build(std::uint32_t node_index, std::uint32_t first, std::uint32_t count) {
    Aabb box;
    Aabb centroid_box;
    for (std::uint32_t i = first; i < first + count; ++i) {
      box.expand(boxes[order[i]]);
      centroid_box.expand(centroids[order[i]]);
    }
    nodes[node_index].box = box;
    if (count <= max_leaf) {
      nodes[node_index].first = first;
      nodes[node_index].count = count;
      return;
    }

    const int axis = centroid_box.longest_axis();
    const auto begin = order.begin() + first;
    const auto end = begin + count;
    const auto mid = begin + count / 2;
    std::nth_element(begin, mid, end, [&](std::uint32_t a, std::uint32_t b) {
      const double ca = centroids[a][axis];
      const double cb = centroids[b][axis];
      return ca < cb || (ca == cb && a < b);
    });

    const auto left = static_cast<std::uint32_t>(nodes.size());
    nodes.emplace_back();
    nodes.emplace_back();
    nodes[node_index].left = left;
    nodes[node_index].count = 0;
    const std::uint32_t left_count = count / 2;
    build(left, first, left_count);
    build(left + 1, first + left_count, count - left_count);
  }
};

}  // namespace

Bvh Bvh::build(const TriMesh& mesh, std::uint32_t max_leaf_size) {
  Bvh bvh;
  bvh.max_leaf_size_ = std::max<std::uint32_t>(1, max_leaf_size);
  const auto tri_count = static_cast<std::uint32_t>(mesh.triangles.size());
  if (tri_count == 0) {
    return bvh;
  }

  std::vector<Aabb> boxes(tri_count);
  std::vector<Vec3> centroids(tri_count);
  for (std::uint32_t i = 0; i < tri_count; ++i) {
    boxes[i] = triangle_box(mesh, i);
    const Triangle& tri = mesh.triangles[i];
    centroids[i] = (mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]]) / 3.0;
  }
  bvh.order_.resize(tri_count);
  for (std::uint32_t i = 0; i < tri_count; ++i) {
    bvh.order_[i] = i;
  }
  bvh.nodes_.reserve(2 * tri_count);
  bvh.nodes_.emplace_back();
  Builder builder{boxes, centroids, bvh.order_, bvh.nodes_, bvh.max_leaf_size_};
  builder.build(0, 0, tri_count);
  return bvh;
}

std::optional<SurfaceHit> Bvh::raycast(const TriMesh& mesh, const Ray& ray) const {
  if (nodes_.empty()) {
    return std::nullopt;
  }

  double best_t = std::numeric_limits<double>::infinity();
  struct Candidate {
    double t;
    std::uint32_t tri;
    TriangleHit hit;
  };
  std::vector<Candidate> candidates;

  std::vector<std::uint32_t> stack;
  stack.reserve(64);
  stack.push_back(0);
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (node.box.ray_entry(ray, best_t + kTieEpsilon) < 0.0) {
      continue;
    }
    if (node.is_leaf()) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const std::uint32_t tri = order_[i];
        const Triangle& idx = mesh.triangles[tri];
        const auto result =
            ray_triangle_intersect(ray, mesh.vertices[idx[0]], mesh.vertices[idx[1]], mesh.vertices[idx[2]]);
        if (!result || result.hit.t > best_t + kTieEpsilon) {
          continue;
        }
        candidates.push_back({result.hit.t, tri, result.hit});
        best_t = std::min(best_t, result.hit.t);
      }
      continue;
    }
    // Visit the nearer child first.
    const double dl = nodes_[node.left].box.ray_entry(ray, best_t + kTieEpsilon);
    const double dr = nodes_[node.left + 1].box.ray_entry(ray, best_t + kTieEpsilon);
    if (dl >= 0.0 && dr >= 0.0) {
      if (dl <= dr) {
        stack.push_back(node.left + 1);
        stack.push_back(node.left);
      } else {
        stack.push_back(node.left);
        stack.push_back(node.left + 1);
      }
    } else if (dl >= 0.0) {
      stack.push_back(node.left);
    } else if (dr >= 0.0) {
      stack.push_back(node.left + 1);
    }
  }

  const Candidate* chosen = nullptr;
  for (const Candidate& c : candidates) {
    if (c.t - best_t < kTieEpsilon && (chosen == nullptr || c.tri < chosen->tri)) {
      chosen = &c;
    }
  }
  if (chosen == nullptr) {
    return std::nullopt;
  }
  return make_surface_hit(mesh, ray, chosen->tri, chosen->hit);
}

std::size_t Bvh::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

}  // namespace wm
