#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wm/config.hpp"
#include "wm/scene.hpp"
#include "wm/view.hpp"

namespace wm {

struct SilhouetteSample {
  Vec3 direction{};  // unit, from the view origin
  double depth = 0.0;  // distance to the node surface along `direction`
};

struct NodeSilhouette {
  std::size_t node_index = 0;
  std::string node_id;
  std::uint64_t node_revision = 0;
  std::vector<SilhouetteSample> samples;
};

/// Per-view outline samples of every visible interactable node. Together
/// with the interpolation in void_depth this is the implicit surface that
/// bridges the gaps between objects.
struct SilhouetteCache {
  Vec3 view_origin{};
  std::vector<NodeSilhouette> nodes;

  const NodeSilhouette* find(std::string_view node_id) const;
  bool empty() const { return nodes.empty(); }
};

/// Bisection steps used to refine each outline sample.
inline constexpr int kSilhouetteBisections = 8;

/// Samples `config.silhouette_samples` outline points per interactable node.
/// Each sample sweeps outward from an interior hit direction at a fixed
/// azimuth (azimuth k = 2 pi k / N) and bisects the last hit / first miss
/// interval. Nodes entirely behind the view, or that no ray reaches, are
/// omitted. Ids listed in `ignore` are treated as transparent.
SilhouetteCache build_silhouette_cache(const Scene& scene, const ViewPose& view, const EngineConfig& config,
                                       std::span<const std::string> ignore = {});

struct AngularGap {
  double alpha = 0.0;  // radians
  double boundary_depth = 0.0;  // meters
};

/// Angular distance from `direction` to the node's outline. Zero (with the
/// hit depth) when the direction hits the node. Absent if the node is not
/// in the cache.
std::optional<AngularGap> angular_gap(const Scene& scene, const SilhouetteCache& cache, std::string_view node_id,
                                      const Vec3& direction);
std::optional<AngularGap> angular_gap(const Scene& scene, const SilhouetteCache& cache,
                                      const NodeSilhouette& entry, const Vec3& direction);

}  // namespace wm
