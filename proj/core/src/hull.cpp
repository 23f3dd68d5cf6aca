#include "wm/hull.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace wm {

namespace {

struct WorkFace {
  Triangle v;
  Plane plane;
  bool alive = true;
};

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

Plane plane_through(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = normalized(cross(b - a, c - a));
  return {n, dot(n, a)};
}

double distance_to_line(const Vec3& p, const Vec3& a, const Vec3& unit_dir) {
  const Vec3 d = p - a;
  return length(d - unit_dir * dot(d, unit_dir));
}

class IncrementalHull {
 public:
  IncrementalHull(std::span<const Vec3> pts, double eps) : pts_(pts), eps_(eps) {}

  void add_face(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    const auto index = static_cast<std::uint32_t>(faces_.size());
    faces_.push_back({{a, b, c}, plane_through(pts_[a], pts_[b], pts_[c]), true});
    edges_[edge_key(a, b)] = index;
    edges_[edge_key(b, c)] = index;
    edges_[edge_key(c, a)] = index;
  }

  void add_point(std::uint32_t p) {
    const Vec3& point = pts_[p];
    visible_.clear();
    for (std::uint32_t f = 0; f < faces_.size(); ++f) {
      if (faces_[f].alive && faces_[f].plane.signed_distance(point) > eps_) {
        visible_.push_back(f);
      }
    }
    if (visible_.empty()) {
      return;
    }
    for (std::uint32_t f : visible_) {
      faces_[f].alive = false;
    }
    horizon_.clear();
    for (std::uint32_t f : visible_) {
      const Triangle& t = faces_[f].v;
      for (int e = 0; e < 3; ++e) {
        const std::uint32_t a = t[e];
        const std::uint32_t b = t[(e + 1) % 3];
        const auto it = edges_.find(edge_key(b, a));
        if (it != edges_.end() && faces_[it->second].alive) {
          horizon_.push_back({a, b});
        }
      }
    }
    for (std::uint32_t f : visible_) {
      const Triangle& t = faces_[f].v;
      for (int e = 0; e < 3; ++e) {
        const auto it = edges_.find(edge_key(t[e], t[(e + 1) % 3]));
        if (it != edges_.end() && it->second == f) {
          edges_.erase(it);
        }
      }
    }
    for (const auto& [a, b] : horizon_) {
      add_face(a, b, p);
    }
  }

  const std::vector<WorkFace>& faces() const { return faces_; }

 private:
  std::span<const Vec3> pts_;
  double eps_;
  std::vector<WorkFace> faces_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  std::vector<std::uint32_t> visible_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> horizon_;
};

}  // namespace

double ConvexHull::volume() const {
  double six_v = 0.0;
  for (const Triangle& f : faces) {
    six_v += dot(vertices[f[0]], cross(vertices[f[1]], vertices[f[2]]));
  }
  return six_v / 6.0;
}

TriMesh ConvexHull::to_mesh() const {
  TriMesh mesh;
  mesh.vertices = vertices;
  mesh.triangles = faces;
  return mesh;
}

ConvexHull convex_hull(std::span<const Vec3> points) {
  const std::size_t n = points.size();
  if (n < 4) {
    throw DegenerateHullError("degenerate hull: need at least 4 points, got " + std::to_string(n));
  }
  double scale = 0.0;
  for (const Vec3& p : points) {
    if (!is_finite(p)) {
      throw GeometryError("hull input point is not finite");
    }
    scale = std::max({scale, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
  }
  const double tol = 1e-9 * std::max(1.0, scale);
  const double eps = 1e-10 * std::max(1.0, scale);

  // Initial tetrahedron from extreme points; every argmax keeps the first
  // (lowest) index on ties.
  std::uint32_t i0 = 0;
  for (std::uint32_t i = 1; i < n; ++i) {
    if (points[i].x < points[i0].x) i0 = i;
  }
  std::uint32_t i1 = i0;
  double best = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const double d = distance(points[i], points[i0]);
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (best <= tol) {
    throw DegenerateHullError("degenerate hull: all points coincide");
  }
  const Vec3 axis = normalized(points[i1] - points[i0]);
  std::uint32_t i2 = i0;
  best = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const double d = distance_to_line(points[i], points[i0], axis);
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= tol) {
    throw DegenerateHullError("degenerate hull: points are collinear");
  }
  const Plane base = plane_through(points[i0], points[i1], points[i2]);
  std::uint32_t i3 = i0;
  best = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const double d = std::abs(base.signed_distance(points[i]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= tol) {
    throw DegenerateHullError("degenerate hull: points are coplanar");
  }

  IncrementalHull hull(points, eps);
  if (base.signed_distance(points[i3]) > 0.0) {
    // i3 is in front of (i0, i1, i2): flip the base so it faces away.
    hull.add_face(i0, i2, i1);
    hull.add_face(i0, i1, i3);
    hull.add_face(i1, i2, i3);
    hull.add_face(i2, i0, i3);
  } else {
    hull.add_face(i0, i1, i2);
    hull.add_face(i1, i0, i3);
    hull.add_face(i2, i1, i3);
    hull.add_face(i0, i2, i3);
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i != i0 && i != i1 && i != i2 && i != i3) {
      hull.add_point(i);
    }
  }

  std::vector<bool> used(n, false);
  for (const WorkFace& f : hull.faces()) {
    if (f.alive) {
      for (std::uint32_t v : f.v) used[v] = true;
    }
  }
  ConvexHull out;
  std::vector<std::uint32_t> remap(n, std::numeric_limits<std::uint32_t>::max());
  for (std::uint32_t i = 0; i < n; ++i) {
    if (used[i]) {
      remap[i] = static_cast<std::uint32_t>(out.vertices.size());
      out.vertices.push_back(points[i]);
      out.source_indices.push_back(i);
    }
  }
  for (const WorkFace& f : hull.faces()) {
    if (f.alive) {
      out.faces.push_back({remap[f.v[0]], remap[f.v[1]], remap[f.v[2]]});
      out.face_planes.push_back(f.plane);
    }
  }
  return out;
}

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Voronoi-region walk over the triangle's vertices, edges and face.
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = dot(ab, ap);
  const double d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp);
  const double d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    return a + ab * (d1 / (d1 - d3));
  }

  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp);
  const double d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    return a + ac * (d2 / (d2 - d6));
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
  }

  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

double signed_distance_to_hull(const ConvexHull& hull, const Vec3& p) {
  double max_plane = -std::numeric_limits<double>::infinity();
  for (const Plane& plane : hull.face_planes) {
    max_plane = std::max(max_plane, plane.signed_distance(p));
  }
  if (max_plane <= 0.0) {
    return max_plane;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Triangle& f : hull.faces) {
    const Vec3 q = closest_point_on_triangle(p, hull.vertices[f[0]], hull.vertices[f[1]], hull.vertices[f[2]]);
    best = std::min(best, distance(p, q));
  }
  return best;
}

}  // namespace wm
