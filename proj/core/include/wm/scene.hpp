#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wm/bvh.hpp"
#include "wm/config.hpp"
#include "wm/hull.hpp"
#include "wm/math.hpp"
#include "wm/mesh.hpp"
#include "wm/view.hpp"

namespace wm {

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SemanticLabel {
  std::string class_name;
  double confidence = 1.0;

  friend bool operator==(const SemanticLabel&, const SemanticLabel&) = default;
};

enum class OriginKind : std::uint8_t { Real, Virtual };

/// A 2D interactive rectangle in the node's local XY plane, centred on the
/// origin, front face towards +Z. Pixel (0, 0) is the top-left corner as
/// seen from the front: with right = up x forward, a viewer facing the
/// front has local -X on the right, so u runs along -X and v along -Y.
struct PanelSpec {
  double width = 1.0;
  double height = 1.0;
  int resolution_x = 1;
  int resolution_y = 1;

  friend bool operator==(const PanelSpec&, const PanelSpec&) = default;
};

/// Hull geometry keeps the source points so the scene file round-trips.
struct HullGeometry {
  std::vector<Vec3> points;
  ConvexHull hull;

  static HullGeometry from_points(std::vector<Vec3> points);

  friend bool operator==(const HullGeometry& a, const HullGeometry& b) { return a.points == b.points; }
};

using Geometry = std::variant<TriMesh, HullGeometry, PanelSpec>;

struct SceneNode {
  std::string id;
  SemanticLabel label;
  OriginKind origin = OriginKind::Virtual;
  Transform transform{};
  Geometry geometry{};
  bool interactable = true;
  bool dynamic = false;

  bool is_panel() const { return std::holds_alternative<PanelSpec>(geometry); }
  const PanelSpec* panel() const { return std::get_if<PanelSpec>(&geometry); }

  friend bool operator==(const SceneNode&, const SceneNode&) = default;
};

/// Node geometry resolved into world space, ready for raycasts.
struct WorldGeometry {
  TriMesh mesh;
  Bvh bvh;
  Aabb bounds;
  /// Panels only accept hits on their front face.
  bool single_sided = false;
  Vec3 front_normal{};
};

/// The blended scene graph: an ordered list of real and virtual nodes plus
/// the initial view and per-scene config overrides.
///
/// World-space geometry is built lazily per node and cached behind a mutex;
/// a transform update swaps in a fresh cache slot, so readers holding the
/// previous geometry keep a consistent snapshot.
class Scene {
 public:
  Scene() = default;
  Scene(const Scene& other);
  Scene& operator=(const Scene& other);
  Scene(Scene&& other) noexcept;
  Scene& operator=(Scene&& other) noexcept;
  ~Scene() = default;

  ViewPose view{};
  ConfigOverrides config{};

  const std::vector<SceneNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  std::optional<std::size_t> index_of(std::string_view id) const;
  const SceneNode* find(std::string_view id) const;
  const SceneNode& node(std::size_t index) const { return nodes_.at(index); }

  /// Validates the node and appends it. Throws SceneError on a duplicate
  /// id or invalid geometry.
  void add_node(SceneNode node);
  void remove_node(std::string_view id);
  void update_node_transform(std::string_view id, const Transform& transform);
  void set_interactable(std::string_view id, bool interactable);

  /// Incremented by every mutation.
  std::uint64_t revision() const { return revision_; }
  /// Incremented whenever this node's geometry or transform changes.
  std::uint64_t node_revision(std::size_t index) const { return revisions_.at(index); }

  std::shared_ptr<const WorldGeometry> world_geometry(std::size_t index) const;

  /// Validates every node and the view. Throws SceneError.
  void validate() const;

  friend bool operator==(const Scene& a, const Scene& b) {
    return a.view == b.view && a.config == b.config && a.nodes_ == b.nodes_;
  }

 private:
  std::size_t checked_index(std::string_view id) const;
  void touch(std::size_t index);

  std::vector<SceneNode> nodes_;
  std::vector<std::uint64_t> revisions_;
  std::uint64_t revision_ = 0;
  std::uint64_t next_node_revision_ = 1;

  mutable std::mutex cache_mutex_;
  mutable std::vector<std::shared_ptr<const WorldGeometry>> cache_;
};

/// Throws SceneError describing the first invariant a node violates.
void validate_node(const SceneNode& node);

/// Builds the world-space geometry of a single node.
WorldGeometry build_world_geometry(const SceneNode& node);

/// World-space point of a panel at normalized coordinates (u, v); u grows to
/// the right, v grows downwards.
Vec3 panel_point(const SceneNode& node, double u, double v);
/// Inverse of panel_point for a point on the panel plane.
std::pair<double, double> panel_uv(const SceneNode& node, const Vec3& world_point);
Vec3 panel_front_normal(const SceneNode& node);

struct SceneHit {
  std::size_t node_index = 0;
  std::string node_id;
  SurfaceHit hit;
};

/// Raycast against a single node (ignores its interactable flag).
std::optional<SurfaceHit> raycast_node(const Scene& scene, std::size_t index, const Ray& ray);

/// Nearest hit over interactable nodes, skipping any id in `ignore`. Ties in
/// t (within kTieEpsilon) resolve to the earlier node in scene order.
std::optional<SceneHit> raycast_scene(const Scene& scene, const Ray& ray,
                                      std::span<const std::string> ignore = {});

}  // namespace wm
