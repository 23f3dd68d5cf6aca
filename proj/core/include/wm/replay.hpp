#pragma once

#include <vector>

#include "wm/config.hpp"
#include "wm/scene.hpp"
#include "wm/trace.hpp"
#include "wm/trajectory.hpp"

namespace wm {

/// Feeds every event through a fresh Session; one sample per event.
std::vector<TrajectorySample> replay(const Scene& scene, const Trace& trace, const EngineConfig& config);

}  // namespace wm
