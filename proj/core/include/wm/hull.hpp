#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "wm/math.hpp"
#include "wm/mesh.hpp"

namespace wm {

/// Containment tolerance for hull queries (meters).
inline constexpr double kHullEpsilon = 1e-6;

/// Raised for inputs that do not span a volume. The message names the
/// deficiency: too few points, coincident, collinear or coplanar.
class DegenerateHullError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

struct Plane {
  Vec3 normal{};  // unit, outward
  double offset = 0.0;  // normal . x = offset on the plane

  double signed_distance(const Vec3& p) const { return dot(normal, p) - offset; }
};

struct ConvexHull {
  std::vector<Vec3> vertices;
  /// Input index of each hull vertex; ascending.
  std::vector<std::uint32_t> source_indices;
  /// Outward (counter-clockwise seen from outside) triangles.
  std::vector<Triangle> faces;
  std::vector<Plane> face_planes;

  double volume() const;
  /// The hull as a flat-shaded triangle mesh.
  TriMesh to_mesh() const;
};

/// Incremental 3D hull. Points are inserted in input order after an initial
/// tetrahedron of extreme points, so the result is a pure function of the
/// input sequence.
ConvexHull convex_hull(std::span<const Vec3> points);

/// Negative inside (minus the distance to the nearest face plane), positive
/// outside (Euclidean distance to the hull surface).
double signed_distance_to_hull(const ConvexHull& hull, const Vec3& p);

/// Closest point to `p` on triangle (a, b, c).
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace wm
