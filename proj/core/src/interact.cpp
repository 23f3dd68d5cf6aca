#include "wm/interact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wm {

bool Selection::contains(std::string_view id) const {
  return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

void Selection::set_single(std::string id) {
  ids_.clear();
  ids_.push_back(std::move(id));
}

void Selection::remove(std::string_view id) {
  ids_.erase(std::remove(ids_.begin(), ids_.end(), id), ids_.end());
}

std::optional<std::string> hover_target(const CursorState& state) {
  if (const std::string* id = state.node_id()) {
    return *id;
  }
  return std::nullopt;
}

std::vector<MenuItem> menu_items_for(const EngineConfig& config, std::string_view class_name) {
  const auto& table = config.label_actions;
  if (const auto it = table.find(std::string(class_name)); it != table.end()) {
    return it->second;
  }
  if (const auto it = table.find("*"); it != table.end()) {
    return it->second;
  }
  return {};
}

std::optional<RadialMenu> open_menu(std::vector<MenuItem> items, std::string target) {
  if (items.empty()) {
    return std::nullopt;
  }
  if (items.size() > RadialMenu::kMaxItems) {
    items.resize(RadialMenu::kMaxItems);
  }
  RadialMenu menu;
  menu.items = std::move(items);
  menu.target = std::move(target);
  menu.open = true;
  return menu;
}

std::optional<std::size_t> menu_navigate(RadialMenu& menu, double dx, double dy) {
  menu.ax += dx;
  menu.ay += dy;
  if (std::hypot(menu.ax, menu.ay) < RadialMenu::kDeadzone) {
    menu.highlighted.reset();
    return menu.highlighted;
  }
  // Screen y grows downwards, so north is -y; angles grow clockwise.
  const auto n = static_cast<long>(menu.items.size());
  const double angle = rad_to_deg(std::atan2(menu.ax, -menu.ay));
  const long sector = std::lround(angle / (360.0 / static_cast<double>(n)));
  menu.highlighted = static_cast<std::size_t>(((sector % n) + n) % n);
  return menu.highlighted;
}

std::optional<std::string> menu_confirm(RadialMenu& menu) {
  std::optional<std::string> action;
  if (menu.open && menu.highlighted) {
    action = menu.items[*menu.highlighted].action_id;
  }
  menu.open = false;
  menu.highlighted.reset();
  return action;
}

ClickEffect handle_click(const CursorState& state, const Scene& scene, MouseButton button,
                         const EngineConfig& config, Selection& selection) {
  const auto target = hover_target(state);
  switch (button) {
    case MouseButton::Left:
      if (target) {
        selection.set_single(*target);
      } else {
        selection.clear();
      }
      return SelectionChanged{};
    case MouseButton::Right: {
      std::optional<RadialMenu> menu;
      if (target) {
        const SceneNode* node = scene.find(*target);
        if (node != nullptr) {
          menu = open_menu(menu_items_for(config, node->label.class_name), *target);
        }
      } else if (const auto it = config.label_actions.find("void"); it != config.label_actions.end()) {
        menu = open_menu(it->second, "");
      }
      if (menu) {
        return MenuOpened{std::move(*menu)};
      }
      return std::monostate{};
    }
    case MouseButton::Middle:
      break;
  }
  return std::monostate{};
}

DragBegin begin_drag(const CursorState& state, const Scene& scene, const ViewPose& view) {
  const auto target = hover_target(state);
  if (!target) {
    return {};
  }
  const SceneNode* node = scene.find(*target);
  if (node == nullptr || !node->interactable) {
    return {};
  }
  if (node->origin == OriginKind::Real) {
    return {DragStart::Immovable, {}};
  }
  DragBegin out;
  out.status = DragStart::Started;
  out.drag.node_id = node->id;
  out.drag.grab_depth = distance(state.position, view.origin);
  out.drag.grab_offset = node->transform.translation - state.position;
  out.drag.active = true;
  return out;
}

void drag_update(Scene& scene, DragState& drag, const ViewPose& view, const Vec3& direction, long long scroll_ticks,
                 const EngineConfig& config) {
  if (!drag.active) {
    return;
  }
  if (scroll_ticks != 0) {
    drag.grab_depth *= std::pow(config.scroll_depth_factor, static_cast<double>(scroll_ticks));
  }
  const SceneNode* node = scene.find(drag.node_id);
  if (node == nullptr) {
    drag.active = false;
    return;
  }
  Transform xf = node->transform;
  xf.translation = view.origin + direction * drag.grab_depth + drag.grab_offset;
  scene.update_node_transform(drag.node_id, xf);
}

Vec3 snap_direction(const SceneNode& node, const Vec3& up) {
  if (node.is_panel()) {
    return -panel_front_normal(node);
  }
  return -up;
}

double end_drag(Scene& scene, DragState& drag, const Vec3& up, const EngineConfig& config) {
  if (!drag.active) {
    return 0.0;
  }
  drag.active = false;
  const auto index = scene.index_of(drag.node_id);
  if (!index) {
    return 0.0;
  }
  const SceneNode& node = scene.node(*index);
  const Vec3 down = snap_direction(node, up);
  const auto world = scene.world_geometry(*index);
  const std::string self[] = {node.id};

  // The first contact of a falling convex body with a surface is at one of
  // its vertices, so probing from every vertex finds the contact distance.
  // Probes start slightly behind the vertex so a vertex already resting on
  // a surface sees that surface rather than the far side of the support.
  constexpr double kLift = 1e-6;
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& v : world->mesh.vertices) {
    if (const auto hit = raycast_scene(scene, Ray(v - down * kLift, down), self)) {
      best = std::min(best, std::max(0.0, hit->hit.t - kLift));
    }
  }
  if (!(best <= config.snap_distance)) {
    return 0.0;
  }
  Transform xf = node.transform;
  xf.translation += down * best;
  scene.update_node_transform(drag.node_id, xf);
  return best;
}

GizmoAxis GizmoAxis::for_node(const SceneNode& node, Axis axis) {
  static constexpr Vec3 kAxes[] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  GizmoAxis g;
  g.node_id = node.id;
  g.axis = axis;
  g.origin = node.transform.translation;
  g.direction = normalized(node.transform.rotation.rotate(kAxes[static_cast<int>(axis)]));
  return g;
}

Vec3 gizmo_drag(const GizmoAxis& gizmo, const Ray& ray, const Vec3& current) {
  const Vec3& a = gizmo.direction;
  const Vec3& d = ray.direction;
  if (length(cross(a, d)) < 1e-6) {
    return current;
  }
  const Vec3 w0 = gizmo.origin - ray.origin;
  const double b = dot(a, d);
  const double s = (b * dot(d, w0) - dot(a, w0)) / (1.0 - b * b);
  return gizmo.origin + a * s;
}

std::string spawn_ghost(Scene& scene, const SceneNode& template_node, std::string new_id) {
  SceneNode ghost = template_node;
  ghost.id = std::move(new_id);
  ghost.origin = OriginKind::Virtual;
  ghost.interactable = false;
  ghost.dynamic = true;
  scene.add_node(ghost);
  return ghost.id;
}

namespace {

Transform ghost_transform(const SceneNode& ghost, const CursorState& cursor, const Quat& base_rotation) {
  Transform xf = ghost.transform;
  std::optional<Vec3> normal;
  if (cursor.surface() != nullptr || cursor.panel() != nullptr) {
    normal = cursor.orientation;
  }
  if (!normal) {
    xf.rotation = base_rotation;
    xf.translation = cursor.position;
    return xf;
  }
  // Local +Z follows the surface normal; the lowest point along the normal
  // touches the cursor point.
  xf.rotation = Quat::from_to(base_rotation.rotate({0.0, 0.0, 1.0}), *normal) * base_rotation;
  xf.translation = Vec3{};
  const TriMesh local = build_world_geometry([&] {
    SceneNode probe = ghost;
    probe.transform = xf;
    return probe;
  }()).mesh;
  double lowest = std::numeric_limits<double>::infinity();
  for (const Vec3& v : local.vertices) {
    lowest = std::min(lowest, dot(v, *normal));
  }
  if (!std::isfinite(lowest)) {
    lowest = 0.0;
  }
  xf.translation = cursor.position - *normal * lowest;
  return xf;
}

}  // namespace

void ghost_follow(Scene& scene, std::string_view ghost_id, const CursorState& cursor, const Quat& base_rotation) {
  const SceneNode* ghost = scene.find(ghost_id);
  if (ghost == nullptr) {
    throw SceneError("no ghost \"" + std::string(ghost_id) + "\" in the scene");
  }
  scene.update_node_transform(ghost_id, ghost_transform(*ghost, cursor, base_rotation));
}

std::string place_ghost(Scene& scene, std::string_view ghost_id, const CursorState& cursor,
                        const Quat& base_rotation) {
  ghost_follow(scene, ghost_id, cursor, base_rotation);
  scene.set_interactable(ghost_id, true);
  return std::string(ghost_id);
}

}  // namespace wm
