#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "wm/math.hpp"
#include "wm/mesh.hpp"

namespace wm {

/// Triangles below this area are treated as degenerate and skipped.
inline constexpr double kDegenerateArea = 1e-12;

/// Weights of the triangle's three vertices; non-negative, summing to 1.
using Barycentric = std::array<double, 3>;

struct TriangleHit {
  double t = 0.0;
  Barycentric bary{};
};

enum class TriangleTest : std::uint8_t { Hit, Miss, Degenerate };

struct TriangleIntersection {
  TriangleTest status = TriangleTest::Miss;
  TriangleHit hit{};

  explicit operator bool() const { return status == TriangleTest::Hit; }
};

/// Moller-Trumbore intersection. Hits on triangle edges and vertices count.
/// Triangles with area <= kDegenerateArea report TriangleTest::Degenerate.
TriangleIntersection ray_triangle_intersect(const Ray& ray, const Vec3& v0, const Vec3& v1,
                                            const Vec3& v2);

struct SurfaceHit {
  double t = 0.0;
  Vec3 point{};
  Vec3 normal{};
  std::uint32_t triangle_index = 0;
  Barycentric bary{};
};

/// Geometric normal of a triangle following its winding.
Vec3 face_normal(const TriMesh& mesh, std::uint32_t triangle_index);

/// Normalized barycentric blend of the triangle's vertex normals. Falls back
/// to the geometric face normal when the blend cancels out.
Vec3 interpolate_normal(const TriMesh& mesh, std::uint32_t triangle_index, const Barycentric& bary);

/// Builds the full SurfaceHit for a triangle hit: interpolated normal when
/// the mesh has vertex normals, otherwise the face normal turned to face
/// the ray.
SurfaceHit make_surface_hit(const TriMesh& mesh, const Ray& ray, std::uint32_t triangle_index,
                            const TriangleHit& hit);

/// Hit ordering shared by every raycast: nearest t wins, and hits closer
/// than kTieEpsilon in t resolve to the lower triangle index.
inline constexpr double kTieEpsilon = 1e-9;

}  // namespace wm
