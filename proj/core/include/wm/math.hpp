#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wm {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Thrown when a value violates a domain invariant (non-finite input,
/// non-unit direction, degenerate geometry handed to a constructor).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
constexpr Vec3 hadamard(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return length(a - b); }
inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Returns v / |v|; throws GeometryError for a zero or non-finite vector.
Vec3 normalized(const Vec3& v);

/// Angle between two unit vectors in radians, stable near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

/// Deterministic unit vector orthogonal to `n` (n must be unit length).
Vec3 any_orthogonal(const Vec3& n);

/// Unit quaternion, xyzw storage order (matches the scene file).
struct Quat {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 1.0;

  static Quat identity() { return {}; }
  static Quat from_axis_angle(const Vec3& axis, double radians);
  /// Shortest-arc rotation taking unit vector `from` onto unit vector `to`.
  static Quat from_to(const Vec3& from, const Vec3& to);

  double norm() const { return std::sqrt(x * x + y * y + z * z + w * w); }
  Quat conjugate() const { return {-x, -y, -z, w}; }
  Vec3 rotate(const Vec3& v) const;

  friend Quat operator*(const Quat& a, const Quat& b);
  friend bool operator==(const Quat&, const Quat&) = default;
};

/// Translation, rotation and positive per-axis scale. Points map as
/// p' = t + R (s * p).
struct Transform {
  Vec3 translation{};
  Quat rotation{};
  Vec3 scale{1.0, 1.0, 1.0};

  static Transform identity() { return {}; }

  Vec3 apply_point(const Vec3& p) const { return translation + rotation.rotate(hadamard(scale, p)); }
  Vec3 apply_vector(const Vec3& v) const { return rotation.rotate(hadamard(scale, v)); }
  /// Transforms a surface normal (inverse-transpose) and renormalizes it.
  Vec3 apply_normal(const Vec3& n) const;

  /// Throws GeometryError when the quaternion is not unit within 1e-9 or a
  /// scale component is not positive.
  void validate() const;

  friend bool operator==(const Transform&, const Transform&) = default;
};

/// A ray with unit-length direction.
struct Ray {
  Vec3 origin{};
  Vec3 direction{0.0, 0.0, 1.0};

  Ray() = default;
  /// Throws GeometryError unless |direction| = 1 within 1e-9 and all
  /// components are finite.
  Ray(const Vec3& origin_, const Vec3& direction_);

  Vec3 at(double t) const { return origin + direction * t; }
};

struct Aabb {
  Vec3 lo{HUGE_VAL, HUGE_VAL, HUGE_VAL};
  Vec3 hi{-HUGE_VAL, -HUGE_VAL, -HUGE_VAL};

  bool empty() const { return lo.x > hi.x; }
  void expand(const Vec3& p);
  void expand(const Aabb& b);
  bool contains(const Aabb& b) const;
  Vec3 center() const { return (lo + hi) * 0.5; }
  Vec3 extent() const { return hi - lo; }
  /// Index of the longest axis; ties resolve to the lower axis index.
  int longest_axis() const;
  /// Slab test. Returns the entry distance if the ray meets the box within
  /// [0, t_max], otherwise a negative value.
  double ray_entry(const Ray& ray, double t_max) const;
};

}  // namespace wm
