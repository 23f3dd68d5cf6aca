#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wm/cursor.hpp"
#include "wm/math.hpp"

namespace wm {

/// Engine output for one processed event.
struct TrajectorySample {
  long long t = 0;
  CursorMode mode = CursorMode::InVoid;
  Vec3 position{};
  double depth = 0.0;  // distance from the view origin to the cursor
  double yaw = 0.0;
  double pitch = 0.0;
  std::optional<std::string> hovered;
  std::vector<std::string> selection;
  std::optional<std::string> action;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

/// Tab-separated `t mode x y z depth yaw pitch hovered selection action`,
/// no trailing newline. Absent values print as "-"; the selection is
/// comma-joined.
std::string format_sample(const TrajectorySample& sample);
TrajectorySample parse_sample(std::string_view line);

std::string format_log(std::span<const TrajectorySample> samples);
/// Throws ParseError with "line N".
std::vector<TrajectorySample> parse_log(std::string_view text);

CursorMode parse_mode(std::string_view text);

struct Metrics {
  double path_length = 0.0;
  std::size_t mode_transitions = 0;
  double max_depth_jump = 0.0;
  /// Time-weighted share of the session spent on a surface (each sample
  /// holds until the next one). Counted per sample when all timestamps
  /// coincide.
  double surface_time_fraction = 0.0;
};

Metrics compute_metrics(std::span<const TrajectorySample> samples);
std::string format_metrics(const Metrics& metrics);

}  // namespace wm
