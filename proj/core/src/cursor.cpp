#include "wm/cursor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wm {

const std::string* CursorState::node_id() const {
  if (const auto* s = surface()) return &s->node_id;
  if (const auto* p = panel()) return &p->node_id;
  return nullptr;
}

const char* to_string(CursorMode mode) {
  switch (mode) {
    case CursorMode::OnSurface:
      return "surface";
    case CursorMode::InVoid:
      return "void";
    case CursorMode::OnPanel:
      return "panel";
  }
  return "?";
}

CursorFrame CursorFrame::from_view(const ViewPose& view) {
  CursorFrame frame;
  frame.forward = normalized(view.forward);
  frame.up = normalized(view.up - frame.forward * dot(view.up, frame.forward));
  frame.right = cross(frame.up, frame.forward);
  return frame;
}

Vec3 CursorFrame::direction(double yaw, double pitch) const {
  const double y = deg_to_rad(yaw);
  const double p = deg_to_rad(pitch);
  const double cp = std::cos(p);
  return normalized(forward * (cp * std::cos(y)) + right * (cp * std::sin(y)) + up * std::sin(p));
}

std::pair<double, double> CursorFrame::angles(const Vec3& direction) const {
  const double yaw = rad_to_deg(std::atan2(dot(direction, right), dot(direction, forward)));
  const double pitch = rad_to_deg(std::asin(std::clamp(dot(direction, up), -1.0, 1.0)));
  return {wrap_degrees(yaw), pitch};
}

double wrap_degrees(double deg) {
  double r = std::remainder(deg, 360.0);
  if (r <= -180.0) {
    r += 360.0;
  }
  return r;
}

std::pair<double, double> apply_delta(double yaw, double pitch, double dx, double dy, const EngineConfig& config) {
  const double new_yaw = wrap_degrees(yaw + dx * config.angular_gain);
  const double new_pitch = std::clamp(pitch - dy * config.angular_gain, -config.pitch_limit, config.pitch_limit);
  return {new_yaw, new_pitch};
}

double void_depth(const Scene& scene, const SilhouetteCache& cache, const Vec3& direction,
                  const EngineConfig& config, std::optional<double> previous) {
  struct Gap {
    double alpha;
    double depth;
    std::size_t order;
  };
  std::vector<Gap> gaps;
  gaps.reserve(cache.nodes.size());
  for (std::size_t i = 0; i < cache.nodes.size(); ++i) {
    if (const auto gap = angular_gap(scene, cache, cache.nodes[i], direction)) {
      gaps.push_back({gap->alpha, gap->boundary_depth, i});
    }
  }

  double depth = config.default_depth;
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
      return a.alpha < b.alpha || (a.alpha == b.alpha && a.order < b.order);
    });
    const std::size_t k = std::min(gaps.size(), static_cast<std::size_t>(config.k_nearest));
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double w = 1.0 / std::pow(gaps[i].alpha + config.idw_epsilon, config.idw_power);
      weighted += w * gaps[i].depth;
      total += w;
    }
    depth = weighted / total;
  }
  if (config.depth_smoothing > 0.0 && previous) {
    depth = config.depth_smoothing * *previous + (1.0 - config.depth_smoothing) * depth;
  }
  return depth;
}

CursorState resolve_cursor(const CursorContext& ctx, double yaw, double pitch,
                           std::optional<double> previous_void_depth) {
  CursorState state;
  state.yaw = yaw;
  state.pitch = pitch;
  const Vec3 dir = ctx.frame.direction(yaw, pitch);
  const Ray ray(ctx.view.origin, dir);

  if (auto hit = raycast_scene(ctx.scene, ray, ctx.transparent)) {
    const SceneNode& node = ctx.scene.node(hit->node_index);
    if (node.is_panel()) {
      auto [u, v] = panel_uv(node, hit->hit.point);
      u = std::clamp(u, 0.0, 1.0);
      v = std::clamp(v, 0.0, 1.0);
      state.contact = PanelContact{node.id, u, v};
      state.position = panel_point(node, u, v);
      state.orientation = panel_front_normal(node);
    } else {
      state.position = hit->hit.point;
      state.orientation = hit->hit.normal;
      state.contact = SurfaceContact{std::move(hit->node_id), hit->hit};
    }
    return state;
  }

  const double depth = void_depth(ctx.scene, ctx.cache, dir, ctx.config, previous_void_depth);
  state.contact = VoidDepth{depth};
  state.position = ctx.view.origin + dir * depth;
  state.orientation = -dir;
  return state;
}

namespace {

std::optional<double> void_depth_of(const CursorState& state) {
  if (const auto* v = state.in_void()) {
    return v->depth;
  }
  return std::nullopt;
}

// Fraction of the (du, dv) motion that keeps (u, v) inside [0, 1].
double inside_fraction(double u, double v, double du, double dv) {
  double s = 1.0;
  auto limit = [&s](double x, double dx) {
    if (dx > 0.0 && x + dx > 1.0) s = std::min(s, (1.0 - x) / dx);
    if (dx < 0.0 && x + dx < 0.0) s = std::min(s, -x / dx);
  };
  limit(u, du);
  limit(v, dv);
  return std::clamp(s, 0.0, 1.0);
}

bool usable_panel(const CursorContext& ctx, const PanelContact& contact) {
  const SceneNode* node = ctx.scene.find(contact.node_id);
  if (node == nullptr || !node->is_panel() || !node->interactable) {
    return false;
  }
  return std::find(ctx.transparent.begin(), ctx.transparent.end(), node->id) == ctx.transparent.end();
}

}  // namespace

CursorStep panel_step(const CursorContext& ctx, const CursorState& state, double dx, double dy) {
  const PanelContact& contact = *state.panel();
  const SceneNode& node = *ctx.scene.find(contact.node_id);
  const PanelSpec& spec = *node.panel();

  const double du = dx * ctx.config.panel_gain / spec.resolution_x;
  const double dv = dy * ctx.config.panel_gain / spec.resolution_y;
  const double u = contact.u + du;
  const double v = contact.v + dv;

  CursorStep step;
  if (u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0) {
    CursorState next;
    next.contact = PanelContact{contact.node_id, u, v};
    next.position = panel_point(node, u, v);
    next.orientation = panel_front_normal(node);
    const auto [yaw, pitch] = ctx.frame.angles(normalized(next.position - ctx.view.origin));
    next.yaw = yaw;
    next.pitch = std::clamp(pitch, -ctx.config.pitch_limit, ctx.config.pitch_limit);
    step.state = std::move(next);
    return step;
  }

  // Leave through the first edge the motion crosses.
  const double s = inside_fraction(contact.u, contact.v, du, dv);
  const double edge_u = std::clamp(contact.u + s * du, 0.0, 1.0);
  const double edge_v = std::clamp(contact.v + s * dv, 0.0, 1.0);
  const Vec3 edge_point = panel_point(node, edge_u, edge_v);
  const Vec3 to_edge = edge_point - ctx.view.origin;
  const double edge_distance = length(to_edge);
  auto [yaw, pitch] = ctx.frame.angles(to_edge / edge_distance);
  pitch = std::clamp(pitch, -ctx.config.pitch_limit, ctx.config.pitch_limit);

  PanelExit exit;
  exit.node_id = contact.node_id;
  exit.edge_point = edge_point;
  exit.exit_position = ctx.view.origin + ctx.frame.direction(yaw, pitch) * edge_distance;
  exit.leftover_dx = (1.0 - s) * dx;
  exit.leftover_dy = (1.0 - s) * dy;

  const auto [next_yaw, next_pitch] = apply_delta(yaw, pitch, exit.leftover_dx, exit.leftover_dy, ctx.config);
  step.state = resolve_cursor(ctx, next_yaw, next_pitch);
  step.panel_entered = step.state.mode() == CursorMode::OnPanel;
  step.panel_exit = std::move(exit);
  return step;
}

CursorStep cursor_delta(const CursorContext& ctx, const CursorState& state, double dx, double dy) {
  if (const auto* contact = state.panel(); contact != nullptr && usable_panel(ctx, *contact)) {
    return panel_step(ctx, state, dx, dy);
  }
  const auto [yaw, pitch] = apply_delta(state.yaw, state.pitch, dx, dy, ctx.config);
  CursorStep step;
  step.state = resolve_cursor(ctx, yaw, pitch, void_depth_of(state));
  step.panel_entered = step.state.mode() == CursorMode::OnPanel && state.mode() != CursorMode::OnPanel;
  return step;
}

CursorState cursor_view_changed(const CursorContext& ctx, const CursorState& state) {
  return resolve_cursor(ctx, state.yaw, state.pitch, void_depth_of(state));
}

}  // namespace wm
