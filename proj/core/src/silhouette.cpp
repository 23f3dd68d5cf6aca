#include "wm/silhouette.hpp"

#include <algorithm>
#include <limits>

namespace wm {

namespace {

constexpr int kMarchSteps = 16;
constexpr int kSeedRings = 16;

struct Probe {
  const Scene& scene;
  std::size_t index;
  Vec3 origin;

  std::optional<double> depth(const Vec3& direction) const {
    const auto hit = raycast_node(scene, index, Ray(origin, normalized(direction)));
    if (!hit) {
      return std::nullopt;
    }
    return hit->t;
  }
};

Vec3 cone_direction(const Vec3& center, const Vec3& axis, double theta) {
  return normalized(center * std::cos(theta) + axis * std::sin(theta));
}

struct Seed {
  Vec3 direction;
  double depth;
  double limit;
};

std::optional<Seed> find_seed(const Probe& probe, const WorldGeometry& world, const ViewPose& view) {
  const Vec3 center = world.bounds.center();
  double radius = 0.0;
  for (const Vec3& v : world.mesh.vertices) {
    radius = std::max(radius, distance(v, center));
  }
  const Vec3 to_center = center - probe.origin;
  const double dist = length(to_center);
  Vec3 axis = view.forward;
  double cone = kPi;
  if (dist > 1e-12) {
    axis = to_center / dist;
    if (dist > radius) {
      cone = std::asin(radius / dist);
    }
  }
  const double limit = std::min(kPi, cone * 1.02 + 1e-6);

  if (const auto d = probe.depth(axis)) {
    return Seed{axis, *d, limit};
  }
  // The centre direction misses (concave or hollow shapes): scan rings of
  // the bounding cone in a fixed order for the first hit.
  const Vec3 u = any_orthogonal(axis);
  const Vec3 w = cross(axis, u);
  for (int ring = 1; ring <= kSeedRings; ++ring) {
    const double theta = limit * ring / kSeedRings;
    const int count = 8 * ring;
    for (int j = 0; j < count; ++j) {
      const double phi = 2.0 * kPi * j / count;
      const Vec3 dir = cone_direction(axis, u * std::cos(phi) + w * std::sin(phi), theta);
      if (const auto d = probe.depth(dir)) {
        return Seed{dir, *d, std::min(kPi, theta + limit)};
      }
    }
  }
  return std::nullopt;
}

bool entirely_behind(const WorldGeometry& world, const ViewPose& view) {
  for (const Vec3& v : world.mesh.vertices) {
    if (dot(v - view.origin, view.forward) > 0.0) {
      return false;
    }
  }
  return true;
}

}  // namespace

const NodeSilhouette* SilhouetteCache::find(std::string_view node_id) const {
  for (const NodeSilhouette& n : nodes) {
    if (n.node_id == node_id) {
      return &n;
    }
  }
  return nullptr;
}

SilhouetteCache build_silhouette_cache(const Scene& scene, const ViewPose& view, const EngineConfig& config,
                                       std::span<const std::string> ignore) {
  SilhouetteCache cache;
  cache.view_origin = view.origin;
  const int sample_count = config.silhouette_samples;

  for (std::size_t i = 0; i < scene.size(); ++i) {
    const SceneNode& node = scene.node(i);
    if (!node.interactable || std::find(ignore.begin(), ignore.end(), node.id) != ignore.end()) {
      continue;
    }
    const auto world = scene.world_geometry(i);
    if (world->mesh.empty() || entirely_behind(*world, view)) {
      continue;
    }
    const Probe probe{scene, i, view.origin};
    const auto seed = find_seed(probe, *world, view);
    if (!seed) {
      continue;
    }

    NodeSilhouette entry;
    entry.node_index = i;
    entry.node_id = node.id;
    entry.node_revision = scene.node_revision(i);
    entry.samples.reserve(static_cast<std::size_t>(sample_count));

    const Vec3 u = any_orthogonal(seed->direction);
    const Vec3 w = cross(seed->direction, u);
    const double step = seed->limit / kMarchSteps;
    for (int k = 0; k < sample_count; ++k) {
      const double phi = 2.0 * kPi * k / sample_count;
      const Vec3 axis = u * std::cos(phi) + w * std::sin(phi);

      double theta_in = 0.0;
      double depth_in = seed->depth;
      std::optional<double> theta_out;
      for (int s = 1; s <= kMarchSteps; ++s) {
        const double theta = step * s;
        if (const auto d = probe.depth(cone_direction(seed->direction, axis, theta))) {
          theta_in = theta;
          depth_in = *d;
        } else {
          theta_out = theta;
          break;
        }
      }
      if (theta_out) {
        double hi = *theta_out;
        for (int b = 0; b < kSilhouetteBisections; ++b) {
          const double mid = 0.5 * (theta_in + hi);
          if (const auto d = probe.depth(cone_direction(seed->direction, axis, mid))) {
            theta_in = mid;
            depth_in = *d;
          } else {
            hi = mid;
          }
        }
      }
      entry.samples.push_back({cone_direction(seed->direction, axis, theta_in), depth_in});
    }
    cache.nodes.push_back(std::move(entry));
  }
  return cache;
}

std::optional<AngularGap> angular_gap(const Scene& scene, const SilhouetteCache& cache, const NodeSilhouette& entry,
                                      const Vec3& direction) {
  const auto index = scene.index_of(entry.node_id);
  if (index) {
    if (const auto hit = raycast_node(scene, *index, Ray(cache.view_origin, direction))) {
      return AngularGap{0.0, hit->t};
    }
  }
  if (entry.samples.empty()) {
    return std::nullopt;
  }
  AngularGap best{std::numeric_limits<double>::infinity(), 0.0};
  for (const SilhouetteSample& s : entry.samples) {
    const double a = angle_between(direction, s.direction);
    if (a < best.alpha) {
      best = {a, s.depth};
    }
  }
  return best;
}

std::optional<AngularGap> angular_gap(const Scene& scene, const SilhouetteCache& cache, std::string_view node_id,
                                      const Vec3& direction) {
  const NodeSilhouette* entry = cache.find(node_id);
  if (entry == nullptr) {
    return std::nullopt;
  }
  return angular_gap(scene, cache, *entry, direction);
}

}  // namespace wm
