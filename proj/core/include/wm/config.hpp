#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wm {

struct MenuItem {
  std::string label;
  std::string action_id;

  friend bool operator==(const MenuItem&, const MenuItem&) = default;
};

/// Semantic class name -> radial menu items. The key "*" is the fallback
/// for classes without an entry; "void" is the palette opened by a right
/// click in empty space.
using LabelActions = std::map<std::string, std::vector<MenuItem>>;

/// Every tunable of the cursor and interaction model.
struct EngineConfig {
  double angular_gain = 0.05;        // degrees per count
  double pitch_limit = 89.0;         // degrees
  double panel_gain = 2.0;           // pixels per count
  double idw_power = 2.0;
  double idw_epsilon = 1e-4;         // radians
  int k_nearest = 4;
  double default_depth = 2.0;        // meters
  int silhouette_samples = 64;
  double scroll_depth_factor = 1.05; // per tick
  double depth_smoothing = 0.0;      // [0, 1)
  double snap_distance = 0.05;       // meters
  LabelActions label_actions = default_label_actions();

  static LabelActions default_label_actions();

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

/// A sparse set of EngineConfig fields, as written in a scene file's
/// `config` block or a standalone config file.
struct ConfigOverrides {
  std::optional<double> angular_gain;
  std::optional<double> pitch_limit;
  std::optional<double> panel_gain;
  std::optional<double> idw_power;
  std::optional<double> idw_epsilon;
  std::optional<int> k_nearest;
  std::optional<double> default_depth;
  std::optional<int> silhouette_samples;
  std::optional<double> scroll_depth_factor;
  std::optional<double> depth_smoothing;
  std::optional<double> snap_distance;
  std::optional<LabelActions> label_actions;

  bool empty() const;
  EngineConfig applied_to(EngineConfig base) const;

  friend bool operator==(const ConfigOverrides&, const ConfigOverrides&) = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wm
