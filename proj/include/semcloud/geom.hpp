#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string_view>

namespace semcloud {

/// Point in metres; x runs along the track by convention.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

  friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(Point3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend bool operator==(const Point3&, const Point3&) = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

/// Closed axis-aligned box. Zero extent on an axis is allowed (degenerate).
class Aabb {
 public:
  Aabb() = default;
  /// Throws GeometryError unless min <= max componentwise and both are finite.
  Aabb(Point3 min_corner, Point3 max_corner);
  static Aabb from_center(Point3 center, Point3 extent);

  const Point3& min_corner() const { return min_; }
  const Point3& max_corner() const { return max_; }
  Point3 extent() const { return max_ - min_; }
  Point3 center() const { return (min_ + max_) * 0.5; }
  double diameter() const { return extent().norm(); }
  bool degenerate() const;
  bool contains(const Point3& p) const;
  bool contains(const Aabb& other) const;
  Aabb translated(Point3 offset) const { return Aabb(min_ + offset, max_ + offset); }

  friend bool operator==(const Aabb&, const Aabb&) = default;

 private:
  Point3 min_;
  Point3 max_;
};

enum class OrientationClass { Vertical, Horizontal, Undetermined };

std::string_view to_string(OrientationClass orientation);

/// Tight box around a non-empty point set.
Aabb aabb_from_points(std::span<const Point3> points);

/// Euclidean distance between the closest points of two boxes; 0 when they
/// overlap or touch.
double gap_distance(const Aabb& a, const Aabb& b);

/// Vertical when the z extent dominates the larger horizontal extent by
/// `ratio_threshold` and reaches `min_major_extent`; Horizontal symmetrically.
OrientationClass classify_orientation(const Aabb& box, double ratio_threshold = 2.0,
                                      double min_major_extent = 1.0);

/// Axis (0=x, 1=y, 2=z) of the largest extent; ties go to the lower axis.
int dominant_axis(const Aabb& box);

}  // namespace semcloud
