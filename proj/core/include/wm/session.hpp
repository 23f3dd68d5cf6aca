#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wm/config.hpp"
#include "wm/cursor.hpp"
#include "wm/event.hpp"
#include "wm/interact.hpp"
#include "wm/scene.hpp"
#include "wm/silhouette.hpp"
#include "wm/trajectory.hpp"

namespace wm {

class InteractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Defaults, then the scene's config block, then `extra` (a config file).
EngineConfig effective_config(const Scene& scene, const ConfigOverrides* extra = nullptr);

/// One engine session: a private copy of the scene plus cursor and
/// interaction state. Single-threaded; may be moved between threads
/// between events.
///
/// Button semantics:
///  - LEFT DOWN confirms an open menu, else places a ghost, else releases
///    the gizmo, else selects (or clears) and starts a drag on virtual nodes.
///  - LEFT UP drops the drag payload with contact snap.
///  - RIGHT DOWN opens the context menu, or closes an open one.
///  - MIDDLE DOWN cycles the gizmo X -> Y -> Z -> off on the first selected
///    virtual node.
/// Scroll pushes/pulls a dragged node, otherwise scales the hovered node if
/// it is selected and virtual. Built-in actions: "delete" and
/// "spawn:<node id>"; every confirmed action is reported in the sample.
class Session {
 public:
  Session(Scene scene, EngineConfig config);

  TrajectorySample step(const InputEvent& event);

  /// Attaches a ghost copy of `template_id` to the cursor. Returns its id.
  std::string spawn_ghost(std::string_view template_id);
  /// Places the active ghost. Throws InteractError when there is none.
  std::string place_ghost();

  const Scene& scene() const { return scene_; }
  const EngineConfig& config() const { return config_; }
  const ViewPose& view() const { return view_; }
  const CursorFrame& frame() const { return frame_; }
  const CursorState& cursor() const { return cursor_; }
  const SilhouetteCache& cache() const { return cache_; }
  const Selection& selection() const { return selection_; }
  const std::optional<RadialMenu>& menu() const { return menu_; }
  const DragState& drag() const { return drag_; }
  const std::optional<GizmoAxis>& gizmo() const { return gizmo_; }
  const std::optional<std::string>& ghost() const { return ghost_; }
  /// Set when the last step left a panel.
  const std::optional<PanelExit>& last_panel_exit() const { return last_exit_; }
  std::size_t cache_builds() const { return cache_builds_; }

  /// Ids the cursor ray currently passes through.
  std::vector<std::string> transparent_ids() const;

  TrajectorySample sample(long long t, std::optional<std::string> action = std::nullopt) const;

 private:
  using Signature = std::vector<std::pair<std::string, std::uint64_t>>;

  CursorContext context(const std::vector<std::string>& transparent) const;
  Signature signature(const std::vector<std::string>& transparent) const;
  /// Rebuilds the silhouette cache when the view origin moved more than
  /// 1 cm or any eligible node changed. Returns true if it did.
  bool refresh_cache();
  void re_resolve();

  void on_delta(const DeltaEvent& e);
  std::optional<std::string> on_button(const ButtonEvent& e);
  void on_scroll(const ScrollEvent& e);
  void on_view(const ViewEvent& e);
  void cycle_gizmo();
  void follow_ghost();
  void run_action(const std::string& action, const std::string& target);
  void forget(const std::string& id);

  Scene scene_;
  EngineConfig config_;
  ViewPose view_;
  CursorFrame frame_;
  CursorState cursor_;
  SilhouetteCache cache_;
  Signature cache_signature_;
  std::size_t cache_builds_ = 0;

  Selection selection_;
  std::optional<RadialMenu> menu_;
  DragState drag_;
  std::optional<GizmoAxis> gizmo_;
  std::optional<std::string> ghost_;
  Quat ghost_rotation_{};
  std::optional<PanelExit> last_exit_;
};

}  // namespace wm
