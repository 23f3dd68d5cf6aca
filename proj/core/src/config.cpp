#include "wm/config.hpp"

#include <cmath>

#include "wm/view.hpp"

namespace wm {

void ViewPose::validate() const {
  if (!is_finite(origin) || !is_finite(forward) || !is_finite(up)) {
    throw GeometryError("view pose has non-finite components");
  }
  if (std::abs(length(forward) - 1.0) > 1e-6 || std::abs(length(up) - 1.0) > 1e-6) {
    throw GeometryError("view forward and up must be unit length");
  }
  if (std::abs(dot(forward, up)) > 1e-6) {
    throw GeometryError("view forward and up must be orthogonal");
  }
}

LabelActions EngineConfig::default_label_actions() {
  return {
      {"*", {{"Properties", "properties"}, {"Copy", "copy"}, {"Delete", "delete"}}},
      {"lamp", {{"Toggle", "toggle"}, {"Properties", "properties"}}},
  };
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    throw ConfigError(std::string("config.") + field + " " + what);
  }
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void EngineConfig::validate() const {
  require(positive(angular_gain), "angular_gain", "must be positive");
  require(positive(pitch_limit) && pitch_limit < 90.0, "pitch_limit", "must be in (0, 90)");
  require(positive(panel_gain), "panel_gain", "must be positive");
  require(positive(idw_power), "idw_power", "must be positive");
  require(positive(idw_epsilon), "idw_epsilon", "must be positive");
  require(k_nearest > 0, "k_nearest", "must be positive");
  require(positive(default_depth), "default_depth", "must be positive");
  require(silhouette_samples > 0, "silhouette_samples", "must be positive");
  require(positive(scroll_depth_factor), "scroll_depth_factor", "must be positive");
  require(std::isfinite(depth_smoothing) && depth_smoothing >= 0.0 && depth_smoothing < 1.0,
          "depth_smoothing", "must be in [0, 1)");
  require(positive(snap_distance), "snap_distance", "must be positive");
  for (const auto& [cls, items] : label_actions) {
    if (items.size() > 12) {
      throw ConfigError("config.label_actions." + cls + " has more than 12 items");
    }
    for (const MenuItem& item : items) {
      if (item.action_id.empty()) {
        throw ConfigError("config.label_actions." + cls + " has an item with an empty action");
      }
    }
  }
}

bool ConfigOverrides::empty() const { return *this == ConfigOverrides{}; }

EngineConfig ConfigOverrides::applied_to(EngineConfig base) const {
  if (angular_gain) base.angular_gain = *angular_gain;
  if (pitch_limit) base.pitch_limit = *pitch_limit;
  if (panel_gain) base.panel_gain = *panel_gain;
  if (idw_power) base.idw_power = *idw_power;
  if (idw_epsilon) base.idw_epsilon = *idw_epsilon;
  if (k_nearest) base.k_nearest = *k_nearest;
  if (default_depth) base.default_depth = *default_depth;
  if (silhouette_samples) base.silhouette_samples = *silhouette_samples;
  if (scroll_depth_factor) base.scroll_depth_factor = *scroll_depth_factor;
  if (depth_smoothing) base.depth_smoothing = *depth_smoothing;
  if (snap_distance) base.snap_distance = *snap_distance;
  if (label_actions) base.label_actions = *label_actions;
  return base;
}

}  // namespace wm
