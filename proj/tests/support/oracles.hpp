// Brute-force reference implementations used as test oracles. None of these
// share code paths with the engine beyond the basic Vec3 arithmetic.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wm/cursor.hpp"
#include "wm/hull.hpp"
#include "wm/mesh.hpp"
#include "wm/scene.hpp"
#include "wm/silhouette.hpp"

namespace oracle {

using wm::Vec3;

struct PlaneHit {
  double t;
  double w0, w1, w2;
};

// Plane crossing followed by a sub-area inside test.
inline std::optional<PlaneHit> plane_triangle(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& b,
                                              const Vec3& c) {
  const Vec3 n = wm::cross(b - a, c - a);
  const double area2 = wm::length(n);
  if (area2 * 0.5 <= wm::kDegenerateArea) return std::nullopt;
  const double denom = wm::dot(n, d);
  if (std::abs(denom) < 1e-15 * area2) return std::nullopt;
  const double t = wm::dot(n, a - o) / denom;
  if (t < 0.0) return std::nullopt;
  const Vec3 p = o + d * t;
  const double nn = wm::dot(n, n);
  const double w0 = wm::dot(wm::cross(b - p, c - p), n) / nn;
  const double w1 = wm::dot(wm::cross(c - p, a - p), n) / nn;
  const double w2 = wm::dot(wm::cross(a - p, b - p), n) / nn;
  constexpr double tol = 1e-9;
  if (w0 < -tol || w1 < -tol || w2 < -tol) return std::nullopt;
  return PlaneHit{t, w0, w1, w2};
}

struct LinearHit {
  double t;
  std::uint32_t triangle;
};

// Exhaustive scan with the global min-t / lowest-index tie rule, using the
// engine's triangle test so that only the acceleration structure is under
// test.
inline std::optional<LinearHit> linear_scan(const wm::TriMesh& mesh, const wm::Ray& ray) {
  std::vector<LinearHit> hits;
  for (std::uint32_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto& tri = mesh.triangles[i];
    const auto r = wm::ray_triangle_intersect(ray, mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                              mesh.vertices[tri[2]]);
    if (r) hits.push_back({r.hit.t, i});
  }
  if (hits.empty()) return std::nullopt;
  double min_t = std::numeric_limits<double>::infinity();
  for (const auto& h : hits) min_t = std::min(min_t, h.t);
  std::optional<LinearHit> best;
  for (const auto& h : hits) {
    if (h.t - min_t < wm::kTieEpsilon && (!best || h.triangle < best->triangle)) best = h;
  }
  return best;
}

struct NodeHit {
  std::size_t node;
  std::uint32_t triangle;
  double t;
};

// Per-node linear scan over freshly built world geometry plus a global min.
inline std::optional<NodeHit> scene_scan(const wm::Scene& scene, const wm::Ray& ray,
                                         std::span<const std::string> ignore = {}) {
  std::vector<NodeHit> hits;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const wm::SceneNode& node = scene.node(i);
    if (!node.interactable || std::find(ignore.begin(), ignore.end(), node.id) != ignore.end()) continue;
    const wm::WorldGeometry world = wm::build_world_geometry(node);
    if (world.single_sided && wm::dot(ray.direction, world.front_normal) >= 0.0) continue;
    if (const auto h = linear_scan(world.mesh, ray)) hits.push_back({i, h->triangle, h->t});
  }
  if (hits.empty()) return std::nullopt;
  double min_t = std::numeric_limits<double>::infinity();
  for (const auto& h : hits) min_t = std::min(min_t, h.t);
  for (const auto& h : hits) {
    if (h.t - min_t < wm::kTieEpsilon) return h;
  }
  return std::nullopt;
}

inline double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Inside the prism: plane distance; otherwise the nearest edge.
  const Vec3 n = wm::normalized(wm::cross(b - a, c - a));
  const Vec3 q = p - n * wm::dot(p - a, n);
  const double w0 = wm::dot(wm::cross(b - q, c - q), n);
  const double w1 = wm::dot(wm::cross(c - q, a - q), n);
  const double w2 = wm::dot(wm::cross(a - q, b - q), n);
  if (w0 >= 0 && w1 >= 0 && w2 >= 0) return std::abs(wm::dot(p - a, n));
  auto seg = [&p](const Vec3& u, const Vec3& v) {
    const Vec3 e = v - u;
    const double s = std::clamp(wm::dot(p - u, e) / wm::dot(e, e), 0.0, 1.0);
    return wm::distance(p, u + e * s);
  };
  return std::min({seg(a, b), seg(b, c), seg(c, a)});
}

inline double mesh_distance(const wm::TriMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : mesh.triangles) {
    best = std::min(best, point_triangle_distance(p, mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]));
  }
  return best;
}

// Max over face planes of the signed point-plane distance.
inline double max_plane_distance(const wm::ConvexHull& hull, const Vec3& p) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& f : hull.faces) {
    const Vec3 a = hull.vertices[f[0]];
    const Vec3 n = wm::normalized(wm::cross(hull.vertices[f[1]] - a, hull.vertices[f[2]] - a));
    worst = std::max(worst, wm::dot(p - a, n));
  }
  return worst;
}

// Every undirected edge used by exactly two faces, once in each direction.
inline bool watertight(const wm::ConvexHull& hull) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const auto& f : hull.faces) {
    for (int k = 0; k < 3; ++k) ++directed[{f[k], f[(k + 1) % 3]}];
  }
  for (const auto& [edge, count] : directed) {
    if (count != 1) return false;
    const auto it = directed.find({edge.second, edge.first});
    if (it == directed.end() || it->second != 1) return false;
  }
  return true;
}

// Divergence theorem over the faces.
inline double enclosed_volume(const wm::ConvexHull& hull) {
  double v = 0.0;
  for (const auto& f : hull.faces) {
    v += wm::dot(hull.vertices[f[0]], wm::cross(hull.vertices[f[1]], hull.vertices[f[2]]));
  }
  return v / 6.0;
}

// Signed distance by dense surface sampling: sample spacing h on every face.
// Inside/outside from the face planes.
inline std::vector<Vec3> sample_surface(const wm::ConvexHull& hull, double h) {
  std::vector<Vec3> samples;
  for (const auto& f : hull.faces) {
    const Vec3 a = hull.vertices[f[0]], b = hull.vertices[f[1]], c = hull.vertices[f[2]];
    const double longest = std::max({wm::distance(a, b), wm::distance(b, c), wm::distance(c, a)});
    const int n = std::max(1, static_cast<int>(std::ceil(longest / h)));
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n - i; ++j) {
        const double u = static_cast<double>(i) / n, v = static_cast<double>(j) / n;
        samples.push_back(a + (b - a) * u + (c - a) * v);
      }
    }
  }
  return samples;
}

inline double sampled_signed_distance(const wm::ConvexHull& hull, const std::vector<Vec3>& samples, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& s : samples) best = std::min(best, wm::distance(p, s));
  return max_plane_distance(hull, p) <= 0.0 ? -best : best;
}

// Void depth from scratch: every node's gap by exhaustive search, a full
// stable sort, then the weighted sum over the first K.
inline double void_depth(const wm::Scene& scene, const wm::SilhouetteCache& cache, const Vec3& dir,
                         const wm::EngineConfig& config) {
  struct Gap {
    double alpha, depth;
  };
  std::vector<Gap> gaps;
  for (const auto& entry : cache.nodes) {
    const wm::Ray ray(cache.view_origin, dir);
    const wm::WorldGeometry world = wm::build_world_geometry(scene.node(*scene.index_of(entry.node_id)));
    bool hit = !(world.single_sided && wm::dot(dir, world.front_normal) >= 0.0);
    std::optional<LinearHit> h;
    if (hit) h = linear_scan(world.mesh, ray);
    if (h) {
      gaps.push_back({0.0, h->t});
      continue;
    }
    if (entry.samples.empty()) continue;
    Gap g{std::numeric_limits<double>::infinity(), 0.0};
    for (const auto& s : entry.samples) {
      const double a = std::acos(std::clamp(wm::dot(dir, s.direction), -1.0, 1.0));
      if (a < g.alpha - 1e-15) g = {a, s.depth};
    }
    gaps.push_back(g);
  }
  if (gaps.empty()) return config.default_depth;
  std::stable_sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) { return a.alpha < b.alpha; });
  const std::size_t k = std::min<std::size_t>(gaps.size(), static_cast<std::size_t>(config.k_nearest));
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double w = std::pow(gaps[i].alpha + config.idw_epsilon, -config.idw_power);
    num += w * gaps[i].depth;
    den += w;
  }
  return num / den;
}

// Closest point between an axis line and a ray line by nested grid search.
inline Vec3 grid_closest_on_axis(const Vec3& origin, const Vec3& axis, const wm::Ray& ray) {
  double s_lo = -20.0, s_hi = 20.0, t_lo = -20.0, t_hi = 20.0;
  double best_s = 0.0, best_t = 0.0;
  for (int level = 0; level < 12; ++level) {
    constexpr int n = 60;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
      const double s = s_lo + (s_hi - s_lo) * i / n;
      for (int j = 0; j <= n; ++j) {
        const double t = t_lo + (t_hi - t_lo) * j / n;
        const Vec3 diff = origin + axis * s - ray.at(t);
        const double d2 = wm::dot(diff, diff);
        if (d2 < best) {
          best = d2;
          best_s = s;
          best_t = t;
        }
      }
    }
    const double ds = (s_hi - s_lo) / n * 2, dt = (t_hi - t_lo) / n * 2;
    s_lo = best_s - ds;
    s_hi = best_s + ds;
    t_lo = best_t - dt;
    t_hi = best_t + dt;
  }
  return origin + axis * best_s;
}

// World-space mesh of a mesh or hull node, transformed vertex by vertex.
inline wm::TriMesh world_mesh(const wm::SceneNode& node) {
  wm::TriMesh m;
  if (const auto* mesh = std::get_if<wm::TriMesh>(&node.geometry)) {
    m = *mesh;
  } else if (const auto* hull = std::get_if<wm::HullGeometry>(&node.geometry)) {
    m = hull->hull.to_mesh();
  }
  for (auto& v : m.vertices) v = node.transform.apply_point(v);
  for (auto& n : m.vertex_normals) n = node.transform.apply_normal(n);
  return m;
}

// Checks the per-mode invariants of a cursor state. Returns an empty string
// when they hold, otherwise a description of the first violation.
inline std::string cursor_violation(const wm::Scene& scene, const wm::ViewPose& view, const wm::CursorFrame& frame,
                                    const wm::EngineConfig& config, const wm::CursorState& s, double tol = 1e-6) {
  if (std::abs(s.pitch) > config.pitch_limit) return "pitch beyond limit";
  if (const auto* surf = s.surface()) {
    const auto idx = scene.index_of(surf->node_id);
    if (!idx) return "surface node missing";
    const wm::TriMesh mesh = world_mesh(scene.node(*idx));
    const auto& tri = mesh.triangles.at(surf->hit.triangle_index);
    const Vec3 a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
    if (point_triangle_distance(s.position, a, b, c) > tol) return "surface point off its triangle";
    if (mesh.has_normals()) {
      // Barycentrics recomputed from the point, then the normal blend.
      const Vec3 n = wm::cross(b - a, c - a);
      const double nn = wm::dot(n, n);
      const double w0 = wm::dot(wm::cross(b - s.position, c - s.position), n) / nn;
      const double w1 = wm::dot(wm::cross(c - s.position, a - s.position), n) / nn;
      const double w2 = 1.0 - w0 - w1;
      const Vec3 blend =
          mesh.vertex_normals[tri[0]] * w0 + mesh.vertex_normals[tri[1]] * w1 + mesh.vertex_normals[tri[2]] * w2;
      if (wm::distance(wm::normalized(blend), s.orientation) > tol) return "orientation is not the interpolated normal";
    }
    return {};
  }
  if (const auto* v = s.in_void()) {
    const Vec3 dir = frame.direction(s.yaw, s.pitch);
    if (wm::distance(s.position, view.origin + dir * v->depth) > tol) return "void position off the ray";
    if (wm::distance(s.orientation, -dir) > tol) return "void orientation does not face the user";
    return {};
  }
  const auto* p = s.panel();
  if (p->u < 0.0 || p->u > 1.0 || p->v < 0.0 || p->v > 1.0) return "panel uv outside [0,1]";
  const wm::SceneNode* node = scene.find(p->node_id);
  if (node == nullptr) return "panel node missing";
  if (wm::distance(s.position, wm::panel_point(*node, p->u, p->v)) > tol) return "panel position mismatch";
  return {};
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  while (true) {
    const Vec3 v{n(rng), n(rng), n(rng)};
    const double l = wm::length(v);
    if (l > 1e-6) return v / l;
  }
}

}  // namespace oracle
