#include "wm/intersect.hpp"

#include <algorithm>

namespace wm {

namespace {

// Boundary slack on barycentric coordinates so rays through a shared edge
// are not lost between the two adjacent triangles.
constexpr double kEdgeSlack = 1e-12;

}  // namespace

TriangleIntersection ray_triangle_intersect(const Ray& ray, const Vec3& v0, const Vec3& v1,
                                            const Vec3& v2) {
  const Vec3 e1 = v1 - v0;
  const Vec3 e2 = v2 - v0;
  const Vec3 n = cross(e1, e2);
  if (0.5 * length(n) <= kDegenerateArea) {
    return {TriangleTest::Degenerate, {}};
  }

  const Vec3 p = cross(ray.direction, e2);
  const double det = dot(e1, p);
  // Parallel (or in-plane) rays never report a crossing.
  if (std::abs(det) <= 1e-14 * length(e1) * length(e2)) {
    return {};
  }
  const double inv_det = 1.0 / det;
  const Vec3 s = ray.origin - v0;
  const double u = dot(s, p) * inv_det;
  if (u < -kEdgeSlack || u > 1.0 + kEdgeSlack) {
    return {};
  }
  const Vec3 q = cross(s, e1);
  const double v = dot(ray.direction, q) * inv_det;
  if (v < -kEdgeSlack || u + v > 1.0 + kEdgeSlack) {
    return {};
  }
  const double t = dot(e2, q) * inv_det;
  if (t < 0.0) {
    return {};
  }

  double w1 = std::clamp(u, 0.0, 1.0);
  double w2 = std::clamp(v, 0.0, 1.0);
  double w0 = 1.0 - w1 - w2;
  if (w0 < 0.0) {
    const double sum = w1 + w2;
    w1 /= sum;
    w2 /= sum;
    w0 = 0.0;
  }
  return {TriangleTest::Hit, {t, {w0, w1, w2}}};
}

Vec3 face_normal(const TriMesh& mesh, std::uint32_t triangle_index) {
  const Triangle& tri = mesh.triangles[triangle_index];
  const Vec3& a = mesh.vertices[tri[0]];
  return normalized(cross(mesh.vertices[tri[1]] - a, mesh.vertices[tri[2]] - a));
}

Vec3 interpolate_normal(const TriMesh& mesh, std::uint32_t triangle_index, const Barycentric& bary) {
  const Triangle& tri = mesh.triangles[triangle_index];
  const Vec3 blend = mesh.vertex_normals[tri[0]] * bary[0] + mesh.vertex_normals[tri[1]] * bary[1] +
                     mesh.vertex_normals[tri[2]] * bary[2];
  const double len = length(blend);
  if (!(len > 1e-12)) {
    return face_normal(mesh, triangle_index);
  }
  return blend / len;
}

SurfaceHit make_surface_hit(const TriMesh& mesh, const Ray& ray, std::uint32_t triangle_index,
                            const TriangleHit& hit) {
  SurfaceHit out;
  out.t = hit.t;
  out.point = ray.at(hit.t);
  out.triangle_index = triangle_index;
  out.bary = hit.bary;
  if (mesh.has_normals()) {
    out.normal = interpolate_normal(mesh, triangle_index, hit.bary);
  } else {
    out.normal = face_normal(mesh, triangle_index);
    if (dot(out.normal, ray.direction) > 0.0) {
      out.normal = -out.normal;
    }
  }
  return out;
}

}  // namespace wm
