#pragma once

#include <cstdint>
#include <variant>

#include "wm/view.hpp"

namespace wm {

enum class MouseButton : std::uint8_t { Left, Right, Middle };

struct DeltaEvent {
  long long dx = 0;  // counts, +x = right
  long long dy = 0;  // counts, +y = screen down
  friend bool operator==(const DeltaEvent&, const DeltaEvent&) = default;
};

struct ButtonEvent {
  MouseButton button = MouseButton::Left;
  bool pressed = true;
  friend bool operator==(const ButtonEvent&, const ButtonEvent&) = default;
};

struct ScrollEvent {
  long long ticks = 0;
  friend bool operator==(const ScrollEvent&, const ScrollEvent&) = default;
};

struct ViewEvent {
  ViewPose pose;
  friend bool operator==(const ViewEvent&, const ViewEvent&) = default;
};

using EventKind = std::variant<DeltaEvent, ButtonEvent, ScrollEvent, ViewEvent>;

/// One timestamped input. Timestamps are milliseconds and non-decreasing
/// within a trace.
struct InputEvent {
  long long t = 0;
  EventKind kind;

  friend bool operator==(const InputEvent&, const InputEvent&) = default;
};

}  // namespace wm
