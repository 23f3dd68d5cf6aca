#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wm/config.hpp"
#include "wm/event.hpp"
#include "wm/intersect.hpp"
#include "wm/scene.hpp"
#include "wm/silhouette.hpp"
#include "wm/view.hpp"

namespace wm {

enum class CursorMode : std::uint8_t { OnSurface, InVoid, OnPanel };

struct SurfaceContact {
  std::string node_id;
  SurfaceHit hit;
};

struct VoidDepth {
  double depth = 0.0;
};

struct PanelContact {
  std::string node_id;
  double u = 0.5;
  double v = 0.5;
};

/// The depth-adaptive cursor. yaw/pitch (degrees) give the world-frame
/// direction of the cursor ray from the view origin; the mode says what the
/// ray currently rests on.
struct CursorState {
  double yaw = 0.0;
  double pitch = 0.0;
  // Alternative order matches CursorMode.
  std::variant<SurfaceContact, VoidDepth, PanelContact> contact{VoidDepth{2.0}};
  Vec3 position{};
  Vec3 orientation{};  // unit normal of the cursor disc

  CursorMode mode() const { return static_cast<CursorMode>(contact.index()); }
  const SurfaceContact* surface() const { return std::get_if<SurfaceContact>(&contact); }
  const PanelContact* panel() const { return std::get_if<PanelContact>(&contact); }
  const VoidDepth* in_void() const { return std::get_if<VoidDepth>(&contact); }
  /// Id of the node under the cursor, if any.
  const std::string* node_id() const;
};

const char* to_string(CursorMode mode);

/// World anchor of the cursor angles: yaw 0 / pitch 0 looks along the
/// scene's initial view forward; yaw turns about the initial view up and
/// positive yaw turns towards right = up x forward.
struct CursorFrame {
  Vec3 forward{0.0, 0.0, 1.0};
  Vec3 up{0.0, 1.0, 0.0};
  Vec3 right{1.0, 0.0, 0.0};

  static CursorFrame from_view(const ViewPose& view);

  /// Unit direction for (yaw, pitch) in degrees.
  Vec3 direction(double yaw, double pitch) const;
  /// (yaw, pitch) in degrees that point along `direction` (unit).
  std::pair<double, double> angles(const Vec3& direction) const;
};

/// Wraps an angle in degrees into (-180, 180].
double wrap_degrees(double deg);

/// Delta -> angular displacement: yaw += dx * gain, pitch -= dy * gain
/// (clamped to the pitch limit), yaw wrapped into (-180, 180].
std::pair<double, double> apply_delta(double yaw, double pitch, double dx, double dy, const EngineConfig& config);

/// Inverse-distance weighting over the K nodes with the smallest angular
/// gap: depth = sum(w_i d_i) / sum(w_i), w_i = 1 / (alpha_i + eps)^p.
/// Empty cache gives config.default_depth. With depth_smoothing > 0 and a
/// previous void depth the result is blended towards it.
double void_depth(const Scene& scene, const SilhouetteCache& cache, const Vec3& direction,
                  const EngineConfig& config, std::optional<double> previous = std::nullopt);

/// Everything a cursor step reads besides the state itself.
struct CursorContext {
  const Scene& scene;
  const ViewPose& view;
  const CursorFrame& frame;
  const SilhouetteCache& cache;
  const EngineConfig& config;
  /// Node ids the cursor ray passes through (drag payloads, ghosts).
  std::span<const std::string> transparent;
};

/// Recorded when the cursor slides off a panel edge.
struct PanelExit {
  std::string node_id;
  Vec3 edge_point{};
  /// Where the re-aimed 3D ray meets the edge point's distance; equals
  /// edge_point up to rounding.
  Vec3 exit_position{};
  double leftover_dx = 0.0;
  double leftover_dy = 0.0;
};

struct CursorStep {
  CursorState state;
  std::optional<PanelExit> panel_exit;
  bool panel_entered = false;
};

/// Casts the cursor ray for (yaw, pitch) and derives the mode: surface hit,
/// panel hit (entering panel mode) or void.
CursorState resolve_cursor(const CursorContext& ctx, double yaw, double pitch,
                           std::optional<double> previous_void_depth = std::nullopt);

/// Panel-mode delta: moves (u, v) in pixels and leaves through an edge when
/// the motion crosses it, resuming 3D motion with the leftover counts.
CursorStep panel_step(const CursorContext& ctx, const CursorState& state, double dx, double dy);

/// Applies one relative motion in whatever mode the cursor is in.
CursorStep cursor_delta(const CursorContext& ctx, const CursorState& state, double dx, double dy);

/// Re-resolves the mode after a view change; yaw/pitch are kept.
CursorState cursor_view_changed(const CursorContext& ctx, const CursorState& state);

}  // namespace wm
