#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wm/config.hpp"
#include "wm/cursor.hpp"
#include "wm/scene.hpp"

namespace wm {

/// Ordered set of selected node ids.
class Selection {
 public:
  const std::vector<std::string>& ids() const { return ids_; }
  bool empty() const { return ids_.empty(); }
  bool contains(std::string_view id) const;
  void set_single(std::string id);
  void clear() { ids_.clear(); }
  void remove(std::string_view id);

  friend bool operator==(const Selection&, const Selection&) = default;

 private:
  std::vector<std::string> ids_;
};

std::optional<std::string> hover_target(const CursorState& state);

/// Menu items for a semantic class; classes without an entry use "*".
std::vector<MenuItem> menu_items_for(const EngineConfig& config, std::string_view class_name);

/// Radial context menu. Item 0 sits at north; indices run clockwise.
struct RadialMenu {
  static constexpr double kDeadzone = 8.0;  // counts
  static constexpr std::size_t kMaxItems = 12;

  std::vector<MenuItem> items;
  std::string target;  // node id, empty for the void palette
  double ax = 0.0;
  double ay = 0.0;
  bool open = false;
  std::optional<std::size_t> highlighted;
};

/// Opens a menu; returns nullopt when there are no items. Items past the
/// 12th are dropped.
std::optional<RadialMenu> open_menu(std::vector<MenuItem> items, std::string target);

/// Accumulates motion; past the deadzone the highlighted item is the one
/// whose sector contains atan2(ax, -ay).
std::optional<std::size_t> menu_navigate(RadialMenu& menu, double dx, double dy);

/// Emits the highlighted action (if any) and closes the menu.
std::optional<std::string> menu_confirm(RadialMenu& menu);

struct SelectionChanged {};
struct MenuOpened {
  RadialMenu menu;
};
using ClickEffect = std::variant<std::monostate, SelectionChanged, MenuOpened>;

/// Left: select the node under the cursor, or clear in the void.
/// Right: open the context menu for the node's semantic class (the "void"
/// palette in empty space). Middle: no effect here.
ClickEffect handle_click(const CursorState& state, const Scene& scene, MouseButton button,
                         const EngineConfig& config, Selection& selection);

struct DragState {
  std::string node_id;
  double grab_depth = 0.0;  // distance from view origin to the grab point
  Vec3 grab_offset{};       // node origin minus grab point (world)
  bool active = false;
};

enum class DragStart : std::uint8_t { Started, Immovable, NoTarget };

struct DragBegin {
  DragStart status = DragStart::NoTarget;
  DragState drag;
};

/// Starts a drag on the virtual node under the cursor. Real nodes report
/// Immovable; the void reports NoTarget.
DragBegin begin_drag(const CursorState& state, const Scene& scene, const ViewPose& view);

/// Scroll rescales the grab depth by factor^ticks; then the node origin is
/// placed at view.origin + grab_depth * direction + grab_offset.
void drag_update(Scene& scene, DragState& drag, const ViewPose& view, const Vec3& direction, long long scroll_ticks,
                 const EngineConfig& config);

/// Contact snap direction for a node: panels fall back onto the surface
/// behind them, everything else falls along -up.
Vec3 snap_direction(const SceneNode& node, const Vec3& up);

/// Ends a drag. If a surface lies within config.snap_distance of the node
/// along its snap direction, the node is translated into contact. Returns
/// the applied translation distance (0 when nothing was close enough).
double end_drag(Scene& scene, DragState& drag, const Vec3& up, const EngineConfig& config);

enum class Axis : std::uint8_t { X, Y, Z };

struct GizmoAxis {
  std::string node_id;
  Axis axis = Axis::X;
  Vec3 origin{};     // node position when the handle was grabbed
  Vec3 direction{};  // unit, the node's local axis in world space

  static GizmoAxis for_node(const SceneNode& node, Axis axis);
};

/// Point on the gizmo axis line closest to the cursor ray; `current` is
/// returned unchanged when the lines are parallel within 1e-6.
Vec3 gizmo_drag(const GizmoAxis& gizmo, const Ray& ray, const Vec3& current);

/// Adds a non-interactable copy of `template_node` (id `new_id`) that
/// follows the cursor until placed.
std::string spawn_ghost(Scene& scene, const SceneNode& template_node, std::string new_id);

/// Moves the ghost to the cursor: resting on the surface (normal-aligned)
/// when the cursor is on one, at the cursor position in the void.
void ghost_follow(Scene& scene, std::string_view ghost_id, const CursorState& cursor, const Quat& base_rotation);

/// Anchors the ghost at the cursor and makes it interactable.
std::string place_ghost(Scene& scene, std::string_view ghost_id, const CursorState& cursor,
                        const Quat& base_rotation);

}  // namespace wm
