#pragma once

#include "wm/math.hpp"

namespace wm {

/// The user's viewpoint. `forward` and `up` are unit and orthogonal; the
/// derived right vector is up x forward.
struct ViewPose {
  Vec3 origin{};
  Vec3 forward{0.0, 0.0, 1.0};
  Vec3 up{0.0, 1.0, 0.0};

  Vec3 right() const { return cross(up, forward); }

  /// Throws GeometryError unless |forward| = |up| = 1 and forward . up = 0
  /// within 1e-6.
  void validate() const;

  friend bool operator==(const ViewPose&, const ViewPose&) = default;
};

}  // namespace wm
