#include "wm/math.hpp"

#include <algorithm>

namespace wm {

Vec3 normalized(const Vec3& v) {
  const double len = length(v);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw GeometryError("cannot normalize a zero or non-finite vector");
  }
  return v / len;
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(length(cross(a, b)), dot(a, b));
}

Vec3 any_orthogonal(const Vec3& n) {
  // Cross with the world axis least aligned with n.
  const double ax = std::abs(n.x);
  const double ay = std::abs(n.y);
  const double az = std::abs(n.z);
  Vec3 axis{1.0, 0.0, 0.0};
  if (ay < ax && ay <= az) {
    axis = {0.0, 1.0, 0.0};
  } else if (az < ax && az < ay) {
    axis = {0.0, 0.0, 1.0};
  }
  return normalized(cross(n, axis));
}

Quat Quat::from_axis_angle(const Vec3& axis, double radians) {
  const Vec3 a = normalized(axis);
  const double s = std::sin(radians * 0.5);
  return {a.x * s, a.y * s, a.z * s, std::cos(radians * 0.5)};
}

Quat Quat::from_to(const Vec3& from, const Vec3& to) {
  const double c = dot(from, to);
  if (c > 1.0 - 1e-15) {
    return identity();
  }
  if (c < -1.0 + 1e-15) {
    return from_axis_angle(any_orthogonal(from), kPi);
  }
  const Vec3 axis = cross(from, to);
  Quat q{axis.x, axis.y, axis.z, 1.0 + c};
  const double n = q.norm();
  return {q.x / n, q.y / n, q.z / n, q.w / n};
}

Vec3 Quat::rotate(const Vec3& v) const {
  // v' = v + 2w (q x v) + 2 q x (q x v)
  const Vec3 q{x, y, z};
  const Vec3 t = cross(q, v) * 2.0;
  return v + t * w + cross(q, t);
}

Quat operator*(const Quat& a, const Quat& b) {
  return {
      a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
      a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
      a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
      a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
  };
}

Vec3 Transform::apply_normal(const Vec3& n) const {
  return normalized(rotation.rotate({n.x / scale.x, n.y / scale.y, n.z / scale.z}));
}

void Transform::validate() const {
  if (!is_finite(translation) || !is_finite(scale) || !std::isfinite(rotation.norm())) {
    throw GeometryError("transform has non-finite components");
  }
  if (std::abs(rotation.norm() - 1.0) > 1e-9) {
    throw GeometryError("transform rotation is not a unit quaternion");
  }
  if (!(scale.x > 0.0 && scale.y > 0.0 && scale.z > 0.0)) {
    throw GeometryError("transform scale components must be positive");
  }
}

Ray::Ray(const Vec3& origin_, const Vec3& direction_) : origin(origin_), direction(direction_) {
  if (!is_finite(origin) || !is_finite(direction)) {
    throw GeometryError("ray has non-finite components");
  }
  if (std::abs(length(direction) - 1.0) > 1e-9) {
    throw GeometryError("ray direction must be unit length");
  }
}

void Aabb::expand(const Vec3& p) {
  lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
  hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
}

void Aabb::expand(const Aabb& b) {
  if (b.empty()) {
    return;
  }
  expand(b.lo);
  expand(b.hi);
}

bool Aabb::contains(const Aabb& b) const {
  return lo.x <= b.lo.x && lo.y <= b.lo.y && lo.z <= b.lo.z &&
         hi.x >= b.hi.x && hi.y >= b.hi.y && hi.z >= b.hi.z;
}

int Aabb::longest_axis() const {
  const Vec3 e = extent();
  int axis = 0;
  if (e.y > e[axis]) axis = 1;
  if (e.z > e[axis]) axis = 2;
  return axis;
}

double Aabb::ray_entry(const Ray& ray, double t_max) const {
  if (empty()) {
    return -1.0;
  }
  double t0 = 0.0;
  double t1 = t_max;
  for (int axis = 0; axis < 3; ++axis) {
    const double o = ray.origin[axis];
    const double d = ray.direction[axis];
    if (d == 0.0) {
      if (o < lo[axis] || o > hi[axis]) {
        return -1.0;
      }
      continue;
    }
    const double inv = 1.0 / d;
    double near = (lo[axis] - o) * inv;
    double far = (hi[axis] - o) * inv;
    if (near > far) std::swap(near, far);
    t0 = std::max(t0, near);
    t1 = std::min(t1, far);
    if (t0 > t1) {
      return -1.0;
    }
  }
  return t0;
}

}  // namespace wm
