#include "semcloud/detect.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <tuple>
#include <unordered_set>

#include "semcloud/error.hpp"
#include "semcloud/schema.hpp"

namespace semcloud {

namespace {

constexpr std::array<CellIndex, 26> kNeighbours = [] {
  std::array<CellIndex, 26> out{};
  std::size_t n = 0;
  for (std::int64_t di = -1; di <= 1; ++di)
    for (std::int64_t dj = -1; dj <= 1; ++dj)
      for (std::int64_t dk = -1; dk <= 1; ++dk)
        if (di || dj || dk) out[n++] = {di, dj, dk};
  return out;
}();

}  // namespace

void DetectionParams::validate() const {
  if (!(voxel_resolution > 0) || !(min_major_extent > 0) || !(ground_slab > 0)) {
    throw GeometryError("detection parameters must be positive");
  }
  if (min_points < 1) throw GeometryError("min_points must be at least 1");
  if (!(ratio_threshold > 1)) throw GeometryError("ratio_threshold must exceed 1");
}

std::vector<DetectedElement> detect_elements(const PointCloud& cloud, const DetectionParams& params,
                                             std::size_t first_id) {
  params.validate();
  if (cloud.empty()) throw GeometryError("cannot detect elements in an empty cloud");

  const VoxelGrid grid = voxelize(cloud, params.voxel_resolution);

  std::vector<DetectedElement> elements;
  std::unordered_set<CellIndex, CellIndexHash> visited;
  visited.reserve(grid.cells.size());
  for (const auto& [seed, seed_points] : grid.cells) {
    if (!visited.insert(seed).second) continue;

    std::vector<std::size_t> members;
    std::deque<CellIndex> frontier{seed};
    while (!frontier.empty()) {
      const CellIndex cell = frontier.front();
      frontier.pop_front();
      const auto& points = grid.cells.at(cell);
      members.insert(members.end(), points.begin(), points.end());
      for (const auto& d : kNeighbours) {
        const CellIndex next{cell.i + d.i, cell.j + d.j, cell.k + d.k};
        if (grid.cells.contains(next) && visited.insert(next).second) frontier.push_back(next);
      }
    }
    if (members.size() < params.min_points) continue;

    // Fixed summation order keeps centroids bit-stable across runs.
    std::sort(members.begin(), members.end());
    std::vector<Point3> points;
    points.reserve(members.size());
    Point3 sum;
    for (auto idx : members) {
      points.push_back(cloud.points[idx]);
      sum = sum + cloud.points[idx];
    }

    DetectedElement element;
    element.box = aabb_from_points(points);
    element.orientation =
        classify_orientation(element.box, params.ratio_threshold, params.min_major_extent);
    element.point_count = members.size();
    element.centroid = sum * (1.0 / static_cast<double>(members.size()));
    elements.push_back(std::move(element));
  }

  std::sort(elements.begin(), elements.end(), [](const auto& a, const auto& b) {
    const auto key = [](const DetectedElement& e) {
      return std::make_tuple(e.centroid.x, e.centroid.y, e.centroid.z, e.box.min_corner().x,
                             e.box.min_corner().y, e.box.min_corner().z, e.point_count);
    };
    return key(a) < key(b);
  });
  for (std::size_t k = 0; k < elements.size(); ++k) {
    elements[k].id = Name(kDefaultPrefix, "geo_" + std::to_string(first_id + k));
  }
  return elements;
}

SceneDetector::SceneDetector(DetectionParams params) : params_(params) { params_.validate(); }

const SceneDetection& SceneDetector::run(const std::string& directory) {
  if (auto it = cache_.find(directory); it != cache_.end()) return it->second;

  const PointCloud cloud = load_scene_directory(directory);
  const GroundSplit split = remove_ground(cloud, params_.ground_slab);

  SceneDetection detection;
  detection.directory = directory;
  if (!split.rest.empty()) detection.elements = detect_elements(split.rest, params_, next_id_);
  next_id_ += detection.elements.size();
  detection.ground_id = Name(kDefaultPrefix, "ground_" + std::to_string(cache_.size()));
  detection.ground_box = aabb_from_points(split.ground.points);
  detection.ground_points = split.ground.size();
  ++runs_;
  return cache_.emplace(directory, std::move(detection)).first->second;
}

void SceneDetector::assert_element(KnowledgeBase& kb, const DetectedElement& element,
                                   const Name& cls) {
  kb.assert_fact({element.id, KnowledgeBase::type_predicate(), cls});
  assert_box_properties(kb, element.id, element.box);
  kb.assert_fact({element.id, vocab::hasPointCount,
                  Literal::real(static_cast<double>(element.point_count))});
}

void SceneDetector::assert_common(KnowledgeBase& kb, const SceneDetection& detection) {
  kb.assert_fact({detection.ground_id, KnowledgeBase::type_predicate(), vocab::Ground});
  assert_box_properties(kb, detection.ground_id, detection.ground_box);
  kb.assert_fact({detection.ground_id, vocab::hasPointCount,
                  Literal::real(static_cast<double>(detection.ground_points))});
  for (const auto& element : detection.elements) {
    if (element.orientation == OrientationClass::Undetermined) {
      assert_element(kb, element, vocab::Geometry);
    }
  }
}

std::shared_ptr<SceneDetector> register_processing_builtins(BuiltinRegistry& registry,
                                                            const DetectionParams& params) {
  auto detector = std::make_shared<SceneDetector>(params);

  auto make = [&](const char* local, OrientationClass target, const Name& cls) {
    BuiltinSpec spec;
    spec.name = Name("3D_swrlb_Processing", local);
    spec.min_arity = 2;
    spec.max_arity = 2;
    spec.behavior = BuiltinBehavior::Generative;
    spec.bindable = {0};
    spec.evaluate = [detector, target, cls, name = spec.name](KnowledgeBase& kb,
                                                              std::span<const ArgSlot> args) {
      const auto* scene = std::get_if<Name>(&*args[1]);
      if (scene == nullptr) throw EngineError(name.str() + ": scene argument must be an individual");
      const auto directory = kb.data_value(*scene, vocab::hasPointCloudDirectory);
      if (!directory || directory->kind() != Literal::Kind::String) {
        throw EngineError(name.str() + ": " + scene->str() + " has no " +
                          vocab::hasPointCloudDirectory.str());
      }

      const SceneDetection& detection = detector->run(directory->as_string());
      SceneDetector::assert_common(kb, detection);

      std::vector<std::vector<Value>> out;
      for (const auto& element : detection.elements) {
        if (element.orientation != target) continue;
        SceneDetector::assert_element(kb, element, cls);
        if (args[0] && *args[0] != Value(element.id)) continue;
        out.push_back({element.id, *scene});
      }
      return out;
    };
    registry.add(std::move(spec));
  };

  make("VerticalElementDetection", OrientationClass::Vertical, vocab::VerticalBoundingBox);
  make("HorizontalElementDetection", OrientationClass::Horizontal, vocab::HorizontalBoundingBox);
  return detector;
}

}  // namespace semcloud
