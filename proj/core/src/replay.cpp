#include "wm/replay.hpp"

#include "wm/session.hpp"

namespace wm {

std::vector<TrajectorySample> replay(const Scene& scene, const Trace& trace, const EngineConfig& config) {
  Session session(scene, config);
  std::vector<TrajectorySample> out;
  out.reserve(trace.size());
  for (const InputEvent& event : trace) {
    out.push_back(session.step(event));
  }
  return out;
}

}  // namespace wm
