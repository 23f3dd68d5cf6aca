#include "wm/session.hpp"

#include <algorithm>
#include <cmath>

namespace wm {

namespace {

constexpr double kViewRebuildDistance = 0.01;  // meters

bool contains(const std::vector<std::string>& ids, const std::string& id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::optional<double> previous_void(const CursorState& state) {
  if (const auto* v = state.in_void()) return v->depth;
  return std::nullopt;
}

}  // namespace

EngineConfig effective_config(const Scene& scene, const ConfigOverrides* extra) {
  EngineConfig config = scene.config.applied_to(EngineConfig{});
  if (extra != nullptr) {
    config = extra->applied_to(std::move(config));
  }
  config.validate();
  return config;
}

Session::Session(Scene scene, EngineConfig config)
    : scene_(std::move(scene)), config_(std::move(config)), view_(scene_.view) {
  config_.validate();
  scene_.validate();
  frame_ = CursorFrame::from_view(view_);
  refresh_cache();
  re_resolve();
}

std::vector<std::string> Session::transparent_ids() const {
  std::vector<std::string> ids;
  if (drag_.active) ids.push_back(drag_.node_id);
  if (ghost_) ids.push_back(*ghost_);
  if (gizmo_ && !contains(ids, gizmo_->node_id)) ids.push_back(gizmo_->node_id);
  return ids;
}

CursorContext Session::context(const std::vector<std::string>& transparent) const {
  return CursorContext{scene_, view_, frame_, cache_, config_, transparent};
}

Session::Signature Session::signature(const std::vector<std::string>& transparent) const {
  Signature sig;
  for (std::size_t i = 0; i < scene_.size(); ++i) {
    const SceneNode& node = scene_.node(i);
    if (node.interactable && !contains(transparent, node.id)) {
      sig.emplace_back(node.id, scene_.node_revision(i));
    }
  }
  return sig;
}

bool Session::refresh_cache() {
  const auto transparent = transparent_ids();
  Signature sig = signature(transparent);
  const bool stale = cache_builds_ == 0 || sig != cache_signature_ ||
                     distance(view_.origin, cache_.view_origin) > kViewRebuildDistance;
  if (!stale) return false;
  cache_ = build_silhouette_cache(scene_, view_, config_, transparent);
  cache_signature_ = std::move(sig);
  ++cache_builds_;
  return true;
}

void Session::re_resolve() {
  const auto transparent = transparent_ids();
  cursor_ = resolve_cursor(context(transparent), cursor_.yaw, cursor_.pitch, previous_void(cursor_));
}

TrajectorySample Session::step(const InputEvent& event) {
  last_exit_.reset();
  std::optional<std::string> action;
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, DeltaEvent>) {
          on_delta(e);
        } else if constexpr (std::is_same_v<E, ButtonEvent>) {
          action = on_button(e);
        } else if constexpr (std::is_same_v<E, ScrollEvent>) {
          on_scroll(e);
        } else {
          on_view(e);
        }
      },
      event.kind);
  if (refresh_cache()) {
    re_resolve();
  }
  follow_ghost();
  return sample(event.t, std::move(action));
}

void Session::on_delta(const DeltaEvent& e) {
  const auto dx = static_cast<double>(e.dx);
  const auto dy = static_cast<double>(e.dy);
  if (menu_) {
    menu_navigate(*menu_, dx, dy);
    return;
  }
  const auto transparent = transparent_ids();
  CursorStep step = cursor_delta(context(transparent), cursor_, dx, dy);
  cursor_ = std::move(step.state);
  last_exit_ = std::move(step.panel_exit);

  const Vec3 dir = frame_.direction(cursor_.yaw, cursor_.pitch);
  if (drag_.active) {
    drag_update(scene_, drag_, view_, dir, 0, config_);
  } else if (gizmo_) {
    if (const SceneNode* node = scene_.find(gizmo_->node_id)) {
      Transform xf = node->transform;
      xf.translation = gizmo_drag(*gizmo_, Ray(view_.origin, dir), xf.translation);
      scene_.update_node_transform(node->id, xf);
    }
  }
}

std::optional<std::string> Session::on_button(const ButtonEvent& e) {
  if (drag_.active) {
    if (e.button == MouseButton::Left && !e.pressed) {
      end_drag(scene_, drag_, frame_.up, config_);
      drag_ = {};
    }
    return std::nullopt;
  }
  if (!e.pressed) {
    return std::nullopt;
  }
  switch (e.button) {
    case MouseButton::Left: {
      if (menu_) {
        RadialMenu menu = std::move(*menu_);
        menu_.reset();
        auto action = menu_confirm(menu);
        if (action) run_action(*action, menu.target);
        return action;
      }
      if (ghost_) {
        place_ghost();
        return std::nullopt;
      }
      if (gizmo_) {
        gizmo_.reset();
        return std::nullopt;
      }
      handle_click(cursor_, scene_, MouseButton::Left, config_, selection_);
      if (DragBegin begin = begin_drag(cursor_, scene_, view_); begin.status == DragStart::Started) {
        drag_ = std::move(begin.drag);
      }
      return std::nullopt;
    }
    case MouseButton::Right: {
      if (menu_) {
        menu_.reset();
        return std::nullopt;
      }
      ClickEffect effect = handle_click(cursor_, scene_, MouseButton::Right, config_, selection_);
      if (auto* opened = std::get_if<MenuOpened>(&effect)) {
        menu_ = std::move(opened->menu);
      }
      return std::nullopt;
    }
    case MouseButton::Middle:
      if (!menu_) cycle_gizmo();
      return std::nullopt;
  }
  return std::nullopt;
}

void Session::on_scroll(const ScrollEvent& e) {
  if (drag_.active) {
    drag_update(scene_, drag_, view_, frame_.direction(cursor_.yaw, cursor_.pitch), e.ticks, config_);
    return;
  }
  if (menu_ || e.ticks == 0) return;
  const auto hovered = hover_target(cursor_);
  if (!hovered || !selection_.contains(*hovered)) return;
  const SceneNode* node = scene_.find(*hovered);
  if (node == nullptr || node->origin != OriginKind::Virtual) return;
  Transform xf = node->transform;
  xf.scale = xf.scale * std::pow(config_.scroll_depth_factor, static_cast<double>(e.ticks));
  scene_.update_node_transform(node->id, xf);
}

void Session::on_view(const ViewEvent& e) {
  view_ = e.pose;
  if (drag_.active) {
    drag_update(scene_, drag_, view_, frame_.direction(cursor_.yaw, cursor_.pitch), 0, config_);
  }
  refresh_cache();
  const auto transparent = transparent_ids();
  cursor_ = cursor_view_changed(context(transparent), cursor_);
}

void Session::cycle_gizmo() {
  if (gizmo_) {
    const SceneNode* node = scene_.find(gizmo_->node_id);
    if (node == nullptr || gizmo_->axis == Axis::Z) {
      gizmo_.reset();
    } else {
      gizmo_ = GizmoAxis::for_node(*node, gizmo_->axis == Axis::X ? Axis::Y : Axis::Z);
    }
    return;
  }
  for (const std::string& id : selection_.ids()) {
    const SceneNode* node = scene_.find(id);
    if (node != nullptr && node->origin == OriginKind::Virtual) {
      gizmo_ = GizmoAxis::for_node(*node, Axis::X);
      return;
    }
  }
}

void Session::follow_ghost() {
  if (ghost_) {
    ghost_follow(scene_, *ghost_, cursor_, ghost_rotation_);
  }
}

void Session::forget(const std::string& id) {
  selection_.remove(id);
  if (drag_.node_id == id) drag_ = {};
  if (gizmo_ && gizmo_->node_id == id) gizmo_.reset();
  if (ghost_ && *ghost_ == id) ghost_.reset();
}

void Session::run_action(const std::string& action, const std::string& target) {
  constexpr std::string_view kSpawn = "spawn:";
  if (action == "delete") {
    const SceneNode* node = scene_.find(target);
    if (node != nullptr && node->origin == OriginKind::Virtual) {
      forget(target);
      scene_.remove_node(target);
    }
  } else if (action.rfind(kSpawn, 0) == 0) {
    const std::string_view template_id = std::string_view(action).substr(kSpawn.size());
    if (scene_.find(template_id) != nullptr) {
      spawn_ghost(template_id);
    }
  }
}

std::string Session::spawn_ghost(std::string_view template_id) {
  const SceneNode* found = scene_.find(template_id);
  if (found == nullptr) {
    throw InteractError("spawn: no node \"" + std::string(template_id) + "\"");
  }
  const SceneNode templ = *found;
  if (ghost_) {
    const std::string old = *ghost_;
    forget(old);
    scene_.remove_node(old);
  }
  std::string id;
  for (int n = 1;; ++n) {
    id = templ.id + "-" + std::to_string(n);
    if (scene_.find(id) == nullptr) break;
  }
  ghost_ = wm::spawn_ghost(scene_, templ, id);
  ghost_rotation_ = templ.transform.rotation;
  follow_ghost();
  if (refresh_cache()) re_resolve();
  return id;
}

std::string Session::place_ghost() {
  if (!ghost_) {
    throw InteractError("place: no ghost is active");
  }
  const std::string id = wm::place_ghost(scene_, *ghost_, cursor_, ghost_rotation_);
  ghost_.reset();
  if (refresh_cache()) re_resolve();
  return id;
}

TrajectorySample Session::sample(long long t, std::optional<std::string> action) const {
  TrajectorySample s;
  s.t = t;
  s.mode = cursor_.mode();
  s.position = cursor_.position;
  if (const auto* surface = cursor_.surface()) {
    s.depth = surface->hit.t;
  } else if (const auto* v = cursor_.in_void()) {
    s.depth = v->depth;
  } else {
    s.depth = distance(cursor_.position, view_.origin);
  }
  s.yaw = cursor_.yaw;
  s.pitch = cursor_.pitch;
  s.hovered = hover_target(cursor_);
  s.selection = selection_.ids();
  s.action = std::move(action);
  return s;
}

}  // namespace wm
