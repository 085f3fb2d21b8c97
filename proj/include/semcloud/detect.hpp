#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "semcloud/builtins.hpp"
#include "semcloud/cloud.hpp"
#include "semcloud/geom.hpp"
#include "semcloud/kb.hpp"

namespace semcloud {

struct DetectionParams {
  double voxel_resolution = 0.25;
  std::size_t min_points = 30;
  double ratio_threshold = 2.0;
  double min_major_extent = 1.0;
  double ground_slab = 0.30;

  /// Throws GeometryError on a non-positive value or ratio_threshold <= 1.
  void validate() const;
};

struct DetectedElement {
  Name id;
  Aabb box;
  OrientationClass orientation = OrientationClass::Undetermined;
  std::size_t point_count = 0;
  /// Mean of the member points.
  Point3 centroid;
};

/// 26-connected components of occupied voxels, dropped below min_points,
/// boxed and classified; sorted by centroid (x, y, z) and named `geo_<k>`
/// from `first_id` on. The cloud is expected to be ground-free.
std::vector<DetectedElement> detect_elements(const PointCloud& cloud, const DetectionParams& params,
                                             std::size_t first_id = 0);

/// Per-directory detection result cached by SceneDetector.
struct SceneDetection {
  std::string directory;
  std::vector<DetectedElement> elements;
  Name ground_id;
  Aabb ground_box;
  std::size_t ground_points = 0;
};

/// Loads, removes ground and detects once per directory. Element ids stay
/// unique across directories: each new directory continues the numbering.
class SceneDetector {
 public:
  explicit SceneDetector(DetectionParams params);

  const SceneDetection& run(const std::string& directory);
  /// Number of directories actually processed (cache misses).
  std::size_t runs() const { return runs_; }
  const DetectionParams& params() const { return params_; }

  /// Registers the ground and the undetermined elements of a detection as
  /// plain Geometry (idempotent).
  static void assert_common(KnowledgeBase& kb, const SceneDetection& detection);
  /// Asserts an element with its class and box data properties.
  static void assert_element(KnowledgeBase& kb, const DetectedElement& element, const Name& cls);

 private:
  DetectionParams params_;
  std::map<std::string, SceneDetection> cache_;
  std::size_t next_id_ = 0;
  std::size_t runs_ = 0;
};

/// Registers `3D_swrlb_Processing:VerticalElementDetection(?geo, ?scene)` and
/// `HorizontalElementDetection`. The scene argument must be bound to an
/// individual carrying hasPointCloudDirectory; the first argument is bound to
/// each element of the matching orientation. Returns the shared detector.
std::shared_ptr<SceneDetector> register_processing_builtins(BuiltinRegistry& registry,
                                                            const DetectionParams& params = {});

}  // namespace semcloud
