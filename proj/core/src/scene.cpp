#include "wm/scene.hpp"

#include <algorithm>
#include <limits>

namespace wm {

HullGeometry HullGeometry::from_points(std::vector<Vec3> points) {
  HullGeometry g;
  g.hull = convex_hull(points);
  g.points = std::move(points);
  return g;
}

Scene::Scene(const Scene& other)
    : view(other.view),
      config(other.config),
      nodes_(other.nodes_),
      revisions_(other.revisions_),
      revision_(other.revision_),
      next_node_revision_(other.next_node_revision_),
      cache_(other.nodes_.size()) {}

Scene& Scene::operator=(const Scene& other) {
  if (this != &other) {
    Scene copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Scene::Scene(Scene&& other) noexcept
    : view(other.view),
      config(std::move(other.config)),
      nodes_(std::move(other.nodes_)),
      revisions_(std::move(other.revisions_)),
      revision_(other.revision_),
      next_node_revision_(other.next_node_revision_) {
  std::lock_guard lock(other.cache_mutex_);
  cache_ = std::move(other.cache_);
  cache_.resize(nodes_.size());
}

Scene& Scene::operator=(Scene&& other) noexcept {
  if (this != &other) {
    view = other.view;
    config = std::move(other.config);
    nodes_ = std::move(other.nodes_);
    revisions_ = std::move(other.revisions_);
    revision_ = other.revision_;
    next_node_revision_ = other.next_node_revision_;
    std::scoped_lock lock(cache_mutex_, other.cache_mutex_);
    cache_ = std::move(other.cache_);
    cache_.resize(nodes_.size());
  }
  return *this;
}

std::optional<std::size_t> Scene::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) {
      return i;
    }
  }
  return std::nullopt;
}

const SceneNode* Scene::find(std::string_view id) const {
  const auto index = index_of(id);
  return index ? &nodes_[*index] : nullptr;
}

std::size_t Scene::checked_index(std::string_view id) const {
  const auto index = index_of(id);
  if (!index) {
    throw SceneError("unknown node id \"" + std::string(id) + "\"");
  }
  return *index;
}

void Scene::touch(std::size_t index) {
  ++revision_;
  revisions_[index] = next_node_revision_++;
  std::lock_guard lock(cache_mutex_);
  cache_[index].reset();
}

void Scene::add_node(SceneNode node) {
  validate_node(node);
  if (index_of(node.id)) {
    throw SceneError("duplicate node id \"" + node.id + "\"");
  }
  nodes_.push_back(std::move(node));
  revisions_.push_back(next_node_revision_++);
  ++revision_;
  std::lock_guard lock(cache_mutex_);
  cache_.resize(nodes_.size());
}

void Scene::remove_node(std::string_view id) {
  const std::size_t index = checked_index(id);
  nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(index));
  revisions_.erase(revisions_.begin() + static_cast<std::ptrdiff_t>(index));
  ++revision_;
  std::lock_guard lock(cache_mutex_);
  cache_.erase(cache_.begin() + static_cast<std::ptrdiff_t>(index));
}

void Scene::update_node_transform(std::string_view id, const Transform& transform) {
  const std::size_t index = checked_index(id);
  try {
    transform.validate();
  } catch (const GeometryError& e) {
    throw SceneError("node \"" + std::string(id) + "\": " + e.what());
  }
  if (nodes_[index].transform == transform) {
    return;
  }
  nodes_[index].transform = transform;
  touch(index);
}

void Scene::set_interactable(std::string_view id, bool interactable) {
  const std::size_t index = checked_index(id);
  if (nodes_[index].interactable == interactable) {
    return;
  }
  nodes_[index].interactable = interactable;
  ++revision_;
}

std::shared_ptr<const WorldGeometry> Scene::world_geometry(std::size_t index) const {
  std::lock_guard lock(cache_mutex_);
  auto& slot = cache_.at(index);
  if (!slot) {
    slot = std::make_shared<const WorldGeometry>(build_world_geometry(nodes_[index]));
  }
  return slot;
}

void Scene::validate() const {
  try {
    view.validate();
  } catch (const GeometryError& e) {
    throw SceneError(std::string("view: ") + e.what());
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    validate_node(nodes_[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (nodes_[j].id == nodes_[i].id) {
        throw SceneError("duplicate node id \"" + nodes_[i].id + "\"");
      }
    }
  }
}

void validate_node(const SceneNode& node) {
  const std::string where = "node \"" + node.id + "\": ";
  if (node.id.empty()) {
    throw SceneError("node id must be non-empty");
  }
  for (char c : node.id) {
    if (c == ',' || c == '\t' || c == ' ' || c == '\n' || c == '\r') {
      throw SceneError(where + "id must not contain whitespace or commas");
    }
  }
  if (node.label.class_name.empty()) {
    throw SceneError(where + "label class must be non-empty");
  }
  if (!(node.label.confidence >= 0.0 && node.label.confidence <= 1.0)) {
    throw SceneError(where + "label confidence must be in [0, 1]");
  }
  if (node.origin == OriginKind::Real && node.is_panel()) {
    throw SceneError(where + "real nodes must carry mesh or hull geometry");
  }
  try {
    node.transform.validate();
    if (const auto* mesh = std::get_if<TriMesh>(&node.geometry)) {
      mesh->validate();
    } else if (const auto* panel = node.panel()) {
      if (!(panel->width > 0.0 && panel->height > 0.0)) {
        throw SceneError(where + "panel extents must be positive");
      }
      if (panel->resolution_x <= 0 || panel->resolution_y <= 0) {
        throw SceneError(where + "panel resolution must be positive");
      }
    } else if (const auto* hull = std::get_if<HullGeometry>(&node.geometry)) {
      if (hull->hull.faces.empty()) {
        throw SceneError(where + "hull has no faces");
      }
    }
  } catch (const GeometryError& e) {
    throw SceneError(where + e.what());
  }
}

WorldGeometry build_world_geometry(const SceneNode& node) {
  WorldGeometry world;
  if (const auto* mesh = std::get_if<TriMesh>(&node.geometry)) {
    world.mesh = transformed(*mesh, node.transform);
  } else if (const auto* hull = std::get_if<HullGeometry>(&node.geometry)) {
    world.mesh = transformed(hull->hull.to_mesh(), node.transform);
  } else if (const auto* panel = node.panel()) {
    world.mesh = transformed(make_quad(panel->width, panel->height), node.transform);
    world.single_sided = true;
    world.front_normal = panel_front_normal(node);
  }
  world.bvh = Bvh::build(world.mesh);
  world.bounds = world.mesh.bounds();
  return world;
}

Vec3 panel_point(const SceneNode& node, double u, double v) {
  const PanelSpec& p = std::get<PanelSpec>(node.geometry);
  return node.transform.apply_point({(0.5 - u) * p.width, (0.5 - v) * p.height, 0.0});
}

std::pair<double, double> panel_uv(const SceneNode& node, const Vec3& world_point) {
  const PanelSpec& p = std::get<PanelSpec>(node.geometry);
  const Transform& xf = node.transform;
  const Vec3 local_rotated = xf.rotation.conjugate().rotate(world_point - xf.translation);
  const double x = local_rotated.x / xf.scale.x;
  const double y = local_rotated.y / xf.scale.y;
  return {0.5 - x / p.width, 0.5 - y / p.height};
}

Vec3 panel_front_normal(const SceneNode& node) { return node.transform.apply_normal({0.0, 0.0, 1.0}); }

std::optional<SurfaceHit> raycast_node(const Scene& scene, std::size_t index, const Ray& ray) {
  const auto world = scene.world_geometry(index);
  if (world->single_sided && dot(ray.direction, world->front_normal) >= 0.0) {
    return std::nullopt;
  }
  return world->bvh.raycast(world->mesh, ray);
}

std::optional<SceneHit> raycast_scene(const Scene& scene, const Ray& ray, std::span<const std::string> ignore) {
  std::vector<SceneHit> hits;
  double min_t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const SceneNode& node = scene.node(i);
    if (!node.interactable) {
      continue;
    }
    if (std::find(ignore.begin(), ignore.end(), node.id) != ignore.end()) {
      continue;
    }
    if (auto hit = raycast_node(scene, i, ray)) {
      min_t = std::min(min_t, hit->t);
      hits.push_back(SceneHit{i, node.id, *hit});
    }
  }
  for (SceneHit& h : hits) {
    if (h.hit.t - min_t < kTieEpsilon) {
      return std::move(h);
    }
  }
  return std::nullopt;
}

}  // namespace wm
