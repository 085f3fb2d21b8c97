#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "semcloud/error.hpp"
#include "semcloud/geom.hpp"

using namespace semcloud;

namespace {

// Closest pair over a dense grid on both box surfaces.
double sampled_gap(const Aabb& a, const Aabb& b, int steps) {
  auto samples = [steps](const Aabb& box) {
    std::vector<Point3> pts;
    const Point3 lo = box.min_corner(), e = box.extent();
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) {
        for (int k = 0; k <= steps; ++k) {
          if (i != 0 && i != steps && j != 0 && j != steps && k != 0 && k != steps) continue;
          pts.push_back({lo.x + e.x * i / steps, lo.y + e.y * j / steps, lo.z + e.z * k / steps});
        }
      }
    }
    return pts;
  };
  double best = std::numeric_limits<double>::max();
  const auto pa = samples(a), pb = samples(b);
  for (const auto& p : pa) {
    for (const auto& q : pb) best = std::min(best, (p - q).norm());
  }
  return best;
}

Aabb cube_at(double x, double y, double z) { return Aabb({x, y, z}, {x + 1, y + 1, z + 1}); }

}  // namespace

TEST_SUITE("geom") {

TEST_CASE("boxes from points") {
  const std::vector<Point3> two{{0, 0, 0}, {1, 2, 3}};
  const Aabb box = aabb_from_points(two);
  CHECK(box.min_corner() == Point3{0, 0, 0});
  CHECK(box.max_corner() == Point3{1, 2, 3});

  const std::vector<Point3> one{{4, 5, 6}};
  CHECK(aabb_from_points(one).degenerate());
  CHECK_THROWS_AS(aabb_from_points(std::vector<Point3>{}), GeometryError);
  CHECK_THROWS_AS(Aabb({1, 0, 0}, {0, 1, 1}), GeometryError);
  CHECK_THROWS_AS(Aabb({0, 0, 0}, {std::nan(""), 1, 1}), GeometryError);
}

TEST_CASE("random points stay inside their box") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point3> pts(1000);
  Point3 lo{1, 1, 1}, hi{0, 0, 0};
  for (auto& p : pts) {
    p = {u(rng), u(rng), u(rng)};
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  const Aabb box = aabb_from_points(pts);
  CHECK(box.min_corner() == lo);
  CHECK(box.max_corner() == hi);
  CHECK(Aabb({0, 0, 0}, {1, 1, 1}).contains(box));
  for (const auto& p : pts) CHECK(box.contains(p));
}

TEST_CASE("gap distance") {
  CHECK(gap_distance(cube_at(0, 0, 0), cube_at(0, 0, 0)) == 0.0);
  CHECK(gap_distance(cube_at(0, 0, 0), cube_at(3, 0, 0)) == doctest::Approx(2.0));
  const double g = gap_distance(cube_at(0, 0, 0), cube_at(3, 4, 0));
  CHECK(g == doctest::Approx(std::sqrt(13.0)));
  CHECK(std::abs(g - sampled_gap(cube_at(0, 0, 0), cube_at(3, 4, 0), 20)) < 1e-2);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(0.0, 4.0), size(0.2, 1.5);
  for (int i = 0; i < 50; ++i) {
    const Aabb a = Aabb::from_center({pos(rng), pos(rng), pos(rng)}, {size(rng), size(rng), size(rng)});
    const Aabb b = Aabb::from_center({pos(rng), pos(rng), pos(rng)}, {size(rng), size(rng), size(rng)});
    const double exact = gap_distance(a, b);
    // Grid spacing bounds the sampled error.
    if (exact > 0) CHECK(std::abs(exact - sampled_gap(a, b, 24)) < 0.1);
  }
}

TEST_CASE("orientation") {
  CHECK(classify_orientation(Aabb::from_center({0, 0, 2.5}, {0.3, 0.3, 5.0})) ==
        OrientationClass::Vertical);
  CHECK(classify_orientation(cube_at(0, 0, 0)) == OrientationClass::Undetermined);
  CHECK(classify_orientation(Aabb::from_center({0, 0, 5}, {6, 0.4, 0.4})) ==
        OrientationClass::Horizontal);
  // Tall but short of the minimum major extent.
  CHECK(classify_orientation(Aabb::from_center({0, 0, 0}, {0.1, 0.1, 0.8})) ==
        OrientationClass::Undetermined);
  CHECK_THROWS_AS(classify_orientation(cube_at(0, 0, 0), 1.0), GeometryError);
  CHECK(to_string(OrientationClass::Vertical) == "Vertical");
}

TEST_CASE("dominant axis ties go to the lower axis") {
  CHECK(dominant_axis(cube_at(0, 0, 0)) == 0);
  CHECK(dominant_axis(Aabb({0, 0, 0}, {1, 2, 2})) == 1);
  CHECK(dominant_axis(Aabb({0, 0, 0}, {1, 1, 3})) == 2);
}

}
