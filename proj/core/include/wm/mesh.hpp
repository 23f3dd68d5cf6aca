#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wm/math.hpp"

namespace wm {

using Triangle = std::array<std::uint32_t, 3>;

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  /// Either empty or one unit normal per vertex.
  std::vector<Vec3> vertex_normals;

  bool has_normals() const { return !vertex_normals.empty(); }
  bool empty() const { return triangles.empty(); }

  /// Throws GeometryError on out-of-range indices, non-finite vertices, or
  /// a normal array of the wrong size / non-unit entries.
  void validate() const;

  Aabb bounds() const;

  friend bool operator==(const TriMesh&, const TriMesh&) = default;
};

/// Copy of `mesh` with vertices (and normals) mapped through `xf`.
TriMesh transformed(const TriMesh& mesh, const Transform& xf);

/// Smooth-shaded UV sphere centred at the origin with poles on +/-Z.
TriMesh make_uv_sphere(double radius, int rings, int segments);

/// Axis-aligned box centred at the origin, flat-shaded (no vertex normals).
TriMesh make_box(const Vec3& half_extents);

/// Two-triangle rectangle in the local XY plane facing +Z.
TriMesh make_quad(double width, double height);

}  // namespace wm
