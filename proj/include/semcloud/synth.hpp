#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semcloud/cloud.hpp"
#include "semcloud/geom.hpp"

namespace semcloud {

struct SceneObject {
  std::string cls;
  Point3 center;
  /// Full box dimensions (dx, dy, dz).
  Point3 dims;
};

struct GroundSpec {
  /// xy rectangle; defaults to [0, length] x [-6, 6] when unset.
  std::optional<std::array<double, 4>> extent;  // x_min, y_min, x_max, y_max
  double z = 0.0;
  /// Ground sampling density; the scene density when unset.
  std::optional<double> points_per_m2;
};

struct SceneSpec {
  double length_m = 500.0;
  std::vector<SceneObject> objects;
  GroundSpec ground;
  double points_per_m2 = 400.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;

  std::array<double, 4> ground_extent() const;
  double ground_density() const { return ground.points_per_m2.value_or(points_per_m2); }

  /// Throws SpecError naming offending objects (`obj_<i>`) on overlapping
  /// boxes, boxes outside the scene, or non-positive sizes and densities.
  void validate() const;
};

struct TruthObject {
  std::string id;
  std::string cls;
  Aabb box;
  /// Half-open point index range [begin, end) in the generated cloud.
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct GroundTruth {
  std::vector<TruthObject> objects;
  std::size_t ground_begin = 0;
  std::size_t ground_end = 0;
};

/// Samples every object's box surface and the ground rectangle uniformly at
/// the configured densities, then adds isotropic Gaussian jitter. Object
/// points come first in object order, then the ground. Deterministic per seed.
std::pair<PointCloud, GroundTruth> generate(const SceneSpec& spec);

/// 13 masts, 15 switchgear cabinets and 3 distant/main signal pairs about
/// 1 km apart, on a 2200 m corridor.
SceneSpec reference_spec();

SceneSpec parse_scene_spec(std::string_view json_text);
std::string scene_spec_to_json(const SceneSpec& spec);
std::string truth_to_json(const GroundTruth& truth);
GroundTruth parse_truth(std::string_view json_text);

}  // namespace semcloud
