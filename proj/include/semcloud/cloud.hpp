#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semcloud/geom.hpp"

namespace semcloud {

struct PointCloud {
  std::vector<Point3> points;
  std::string source_path;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Whole-file helpers; both throw IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// ASCII XYZ: one `x y z` point per line, `#` comments and blank lines
/// skipped, columns past the third ignored. Throws IoError with the line
/// number on a malformed token, and when no point is found.
PointCloud parse_xyz(std::string_view text, std::string source_path = "<memory>");
PointCloud load_xyz(const std::filesystem::path& path);

/// Writes one point per line at 6 decimals.
void write_xyz(std::ostream& out, const PointCloud& cloud);

/// Concatenates every `*.xyz` file of a scene directory in lexicographic
/// path order.
PointCloud load_scene_directory(const std::filesystem::path& directory);

struct CellIndex {
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t k = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

struct CellIndexHash {
  std::size_t operator()(const CellIndex& c) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(c.i) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(c.j) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(c.k) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

struct VoxelGrid {
  double resolution = 1.0;
  Point3 origin;
  std::unordered_map<CellIndex, std::vector<std::size_t>, CellIndexHash> cells;

  /// floor((p - origin) / resolution), componentwise.
  CellIndex cell_of(const Point3& p) const;
  std::size_t point_count() const;
};

/// Buckets point indices by cell; origin is the cloud's componentwise minimum.
VoxelGrid voxelize(const PointCloud& cloud, double resolution);

struct GroundSplit {
  PointCloud ground;
  PointCloud rest;
  std::vector<std::size_t> ground_indices;
  std::vector<std::size_t> rest_indices;
  /// Lower edge of the selected slab.
  double slab_floor = 0.0;
};

/// Separates the densest low z-slab (searched in the lowest quarter of the
/// z-range) from everything else. Throws GeometryError on an empty cloud.
GroundSplit remove_ground(const PointCloud& cloud, double slab_thickness = 0.30);

}  // namespace semcloud
