#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>

namespace pacnav {

/// Displacements shorter than this are treated as degenerate (no direction).
inline constexpr double kNormEpsilon = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

/// Planar vector in meters (positions) or m/s (velocities), world frame.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << '(' << v.x << ", " << v.y << ')';
  }
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
constexpr double squared_norm(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }
inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Counterclockwise rotation by `angle` radians.
inline Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Cosine of the angle between a and b. Empty when either norm is below
/// kNormEpsilon; callers decide how to treat the degenerate term.
inline std::optional<double> normalized_dot(const Vec2& a, const Vec2& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na < kNormEpsilon || nb < kNormEpsilon) {
    return std::nullopt;
  }
  const double c = dot(a, b) / (na * nb);
  // rounding can push |c| a hair past 1
  return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

/// Index of one agent within a mission, 0 <= value < swarm size.
struct UavId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(const UavId&, const UavId&) = default;
  friend std::ostream& operator<<(std::ostream& os, const UavId& id) {
    return os << "uav" << id.value;
  }
};

/// Discrete time index k; advances by one per simulation step.
using Step = std::int64_t;

}  // namespace pacnav
