#include "semcloud/geom.hpp"

#include <algorithm>

#include "semcloud/error.hpp"

namespace semcloud {

Aabb::Aabb(Point3 min_corner, Point3 max_corner) : min_(min_corner), max_(max_corner) {
  if (!min_.finite() || !max_.finite()) throw GeometryError("box corners must be finite");
  if (min_.x > max_.x || min_.y > max_.y || min_.z > max_.z) {
    throw GeometryError("box min corner exceeds max corner");
  }
}

Aabb Aabb::from_center(Point3 center, Point3 extent) {
  const Point3 half = extent * 0.5;
  return Aabb(center - half, center + half);
}

bool Aabb::degenerate() const {
  return min_.x == max_.x || min_.y == max_.y || min_.z == max_.z;
}

bool Aabb::contains(const Point3& p) const {
  return p.x >= min_.x && p.x <= max_.x && p.y >= min_.y && p.y <= max_.y && p.z >= min_.z &&
         p.z <= max_.z;
}

bool Aabb::contains(const Aabb& other) const {
  return contains(other.min_corner()) && contains(other.max_corner());
}

std::string_view to_string(OrientationClass orientation) {
  switch (orientation) {
    case OrientationClass::Vertical: return "Vertical";
    case OrientationClass::Horizontal: return "Horizontal";
    case OrientationClass::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

Aabb aabb_from_points(std::span<const Point3> points) {
  if (points.empty()) throw GeometryError("cannot box an empty point set");
  Point3 lo = points.front();
  Point3 hi = points.front();
  for (const auto& p : points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  return Aabb(lo, hi);
}

double gap_distance(const Aabb& a, const Aabb& b) {
  double sum = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double gap = std::max({0.0, a.min_corner()[axis] - b.max_corner()[axis],
                                 b.min_corner()[axis] - a.max_corner()[axis]});
    sum += gap * gap;
  }
  return std::sqrt(sum);
}

OrientationClass classify_orientation(const Aabb& box, double ratio_threshold,
                                      double min_major_extent) {
  if (!(ratio_threshold > 1.0)) throw GeometryError("ratio_threshold must exceed 1");
  const Point3 e = box.extent();
  const double vertical = e.z;
  const double horizontal = std::max(e.x, e.y);
  if (vertical >= ratio_threshold * horizontal && vertical >= min_major_extent) {
    return OrientationClass::Vertical;
  }
  if (horizontal >= ratio_threshold * vertical && horizontal >= min_major_extent) {
    return OrientationClass::Horizontal;
  }
  return OrientationClass::Undetermined;
}

int dominant_axis(const Aabb& box) {
  const Point3 e = box.extent();
  int axis = 0;
  if (e.y > e[axis]) axis = 1;
  if (e.z > e[axis]) axis = 2;
  return axis;
}

}  // namespace semcloud
