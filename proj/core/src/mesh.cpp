#include "wm/mesh.hpp"

#include <string>

namespace wm {

void TriMesh::validate() const {
  for (const Vec3& v : vertices) {
    if (!is_finite(v)) {
      throw GeometryError("mesh vertex is not finite");
    }
  }
  const auto count = static_cast<std::uint32_t>(vertices.size());
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    for (std::uint32_t idx : triangles[i]) {
      if (idx >= count) {
        throw GeometryError("triangle " + std::to_string(i) + " references vertex " +
                            std::to_string(idx) + " but the mesh has " + std::to_string(count));
      }
    }
  }
  if (!vertex_normals.empty()) {
    if (vertex_normals.size() != vertices.size()) {
      throw GeometryError("normal count " + std::to_string(vertex_normals.size()) +
                          " does not match vertex count " + std::to_string(vertices.size()));
    }
    for (std::size_t i = 0; i < vertex_normals.size(); ++i) {
      const Vec3& n = vertex_normals[i];
      if (!is_finite(n) || std::abs(length(n) - 1.0) > 1e-6) {
        throw GeometryError("normal " + std::to_string(i) + " is not unit length");
      }
    }
  }
}

Aabb TriMesh::bounds() const {
  Aabb box;
  for (const Vec3& v : vertices) {
    box.expand(v);
  }
  return box;
}

TriMesh transformed(const TriMesh& mesh, const Transform& xf) {
  TriMesh out;
  out.triangles = mesh.triangles;
  out.vertices.reserve(mesh.vertices.size());
  for (const Vec3& v : mesh.vertices) {
    out.vertices.push_back(xf.apply_point(v));
  }
  out.vertex_normals.reserve(mesh.vertex_normals.size());
  for (const Vec3& n : mesh.vertex_normals) {
    out.vertex_normals.push_back(xf.apply_normal(n));
  }
  return out;
}

TriMesh make_uv_sphere(double radius, int rings, int segments) {
  if (radius <= 0.0 || rings < 2 || segments < 3) {
    throw GeometryError("uv sphere needs radius > 0, rings >= 2, segments >= 3");
  }
  TriMesh mesh;
  // Pole at -Z first, then rings from south to north, then pole at +Z.
  mesh.vertices.push_back({0.0, 0.0, -radius});
  mesh.vertex_normals.push_back({0.0, 0.0, -1.0});
  for (int r = 1; r < rings; ++r) {
    const double polar = kPi * static_cast<double>(r) / rings;
    const double z = -std::cos(polar);
    const double ring_radius = std::sin(polar);
    for (int s = 0; s < segments; ++s) {
      const double az = 2.0 * kPi * static_cast<double>(s) / segments;
      const Vec3 n{ring_radius * std::cos(az), ring_radius * std::sin(az), z};
      mesh.vertices.push_back(n * radius);
      mesh.vertex_normals.push_back(normalized(n));
    }
  }
  mesh.vertices.push_back({0.0, 0.0, radius});
  mesh.vertex_normals.push_back({0.0, 0.0, 1.0});

  const auto south = 0u;
  const auto north = static_cast<std::uint32_t>(mesh.vertices.size() - 1);
  auto ring_vertex = [segments](int ring, int seg) {
    return static_cast<std::uint32_t>(1 + (ring - 1) * segments + (seg % segments));
  };
  for (int s = 0; s < segments; ++s) {
    mesh.triangles.push_back({south, ring_vertex(1, s + 1), ring_vertex(1, s)});
  }
  for (int r = 1; r < rings - 1; ++r) {
    for (int s = 0; s < segments; ++s) {
      const auto a = ring_vertex(r, s);
      const auto b = ring_vertex(r, s + 1);
      const auto c = ring_vertex(r + 1, s);
      const auto d = ring_vertex(r + 1, s + 1);
      mesh.triangles.push_back({a, b, d});
      mesh.triangles.push_back({a, d, c});
    }
  }
  for (int s = 0; s < segments; ++s) {
    mesh.triangles.push_back({ring_vertex(rings - 1, s), ring_vertex(rings - 1, s + 1), north});
  }
  return mesh;
}

TriMesh make_box(const Vec3& h) {
  TriMesh mesh;
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.push_back({(i & 1) ? h.x : -h.x, (i & 2) ? h.y : -h.y, (i & 4) ? h.z : -h.z});
  }
  // Outward winding, two triangles per face.
  mesh.triangles = {
      {0, 2, 3}, {0, 3, 1},  // -Z
      {4, 5, 7}, {4, 7, 6},  // +Z
      {0, 1, 5}, {0, 5, 4},  // -Y
      {2, 6, 7}, {2, 7, 3},  // +Y
      {0, 4, 6}, {0, 6, 2},  // -X
      {1, 3, 7}, {1, 7, 5},  // +X
  };
  return mesh;
}

TriMesh make_quad(double width, double height) {
  const double hw = width * 0.5;
  const double hh = height * 0.5;
  TriMesh mesh;
  mesh.vertices = {{-hw, -hh, 0.0}, {hw, -hh, 0.0}, {hw, hh, 0.0}, {-hw, hh, 0.0}};
  mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
  return mesh;
}

}  // namespace wm
