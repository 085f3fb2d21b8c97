#include "semcloud/cloud.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "semcloud/error.hpp"
#include "semcloud/kb.hpp"

namespace semcloud {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("error while writing " + path.string());
}

PointCloud parse_xyz(std::string_view text, std::string source_path) {
  PointCloud cloud;
  cloud.source_path = std::move(source_path);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size() || line[i] == '#') continue;

    Point3 p;
    for (int axis = 0; axis < 3; ++axis) {
      while (i < line.size() && is_space(line[i])) ++i;
      std::size_t token_end = i;
      while (token_end < line.size() && !is_space(line[token_end])) ++token_end;
      const std::string_view token = line.substr(i, token_end - i);
      if (token.empty()) {
        throw IoError(cloud.source_path + ":" + std::to_string(line_no) +
                      ": expected 3 coordinates");
      }
      const char* first = token.data();
      const char* last = token.data() + token.size();
      if (*first == '+') ++first;
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw IoError(cloud.source_path + ":" + std::to_string(line_no) +
                      ": malformed coordinate '" + std::string(token) + "'");
      }
      p[axis] = value;
      i = token_end;
    }
    cloud.points.push_back(p);
  }

  if (cloud.points.empty()) throw IoError(cloud.source_path + ": no points parsed");
  return cloud;
}

PointCloud load_xyz(const std::filesystem::path& path) {
  return parse_xyz(read_text_file(path), path.string());
}

void write_xyz(std::ostream& out, const PointCloud& cloud) {
  std::string line;
  for (const auto& p : cloud.points) {
    line = format_fixed(p.x, 6);
    line += ' ';
    line += format_fixed(p.y, 6);
    line += ' ';
    line += format_fixed(p.z, 6);
    line += '\n';
    out << line;
  }
}

PointCloud load_scene_directory(const std::filesystem::path& directory) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    throw IoError("not a scene directory: " + directory.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xyz") files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + directory.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  PointCloud scene;
  scene.source_path = directory.string();
  for (const auto& file : files) {
    auto part = load_xyz(file);
    scene.points.insert(scene.points.end(), part.points.begin(), part.points.end());
  }
  if (scene.points.empty()) throw IoError(directory.string() + ": no points parsed");
  return scene;
}

CellIndex VoxelGrid::cell_of(const Point3& p) const {
  return {static_cast<std::int64_t>(std::floor((p.x - origin.x) / resolution)),
          static_cast<std::int64_t>(std::floor((p.y - origin.y) / resolution)),
          static_cast<std::int64_t>(std::floor((p.z - origin.z) / resolution))};
}

std::size_t VoxelGrid::point_count() const {
  std::size_t n = 0;
  for (const auto& [cell, members] : cells) n += members.size();
  return n;
}

VoxelGrid voxelize(const PointCloud& cloud, double resolution) {
  if (!(resolution > 0.0)) throw GeometryError("voxel resolution must be positive");
  VoxelGrid grid;
  grid.resolution = resolution;
  if (cloud.empty()) return grid;
  grid.origin = aabb_from_points(cloud.points).min_corner();
  for (std::size_t idx = 0; idx < cloud.points.size(); ++idx) {
    grid.cells[grid.cell_of(cloud.points[idx])].push_back(idx);
  }
  return grid;
}

GroundSplit remove_ground(const PointCloud& cloud, double slab_thickness) {
  if (cloud.empty()) throw GeometryError("cannot extract ground from an empty cloud");
  if (!(slab_thickness > 0.0)) throw GeometryError("ground slab thickness must be positive");

  double z_min = cloud.points.front().z;
  double z_max = z_min;
  for (const auto& p : cloud.points) {
    z_min = std::min(z_min, p.z);
    z_max = std::max(z_max, p.z);
  }

  // Candidate bins start within the lowest quarter of the z-range.
  const double search_top = 0.25 * (z_max - z_min);
  const auto candidate_bins = static_cast<std::size_t>(std::floor(search_top / slab_thickness)) + 1;
  std::vector<std::size_t> counts(candidate_bins, 0);
  for (const auto& p : cloud.points) {
    const auto bin = static_cast<std::size_t>(std::floor((p.z - z_min) / slab_thickness));
    if (bin < candidate_bins) ++counts[bin];
  }
  const auto best = static_cast<std::size_t>(
      std::distance(counts.begin(), std::max_element(counts.begin(), counts.end())));

  GroundSplit split;
  split.slab_floor = z_min + static_cast<double>(best) * slab_thickness;
  const double slab_top = split.slab_floor + slab_thickness;
  split.ground.source_path = cloud.source_path;
  split.rest.source_path = cloud.source_path;
  for (std::size_t idx = 0; idx < cloud.points.size(); ++idx) {
    const auto& p = cloud.points[idx];
    if (p.z >= split.slab_floor && p.z <= slab_top) {
      split.ground.points.push_back(p);
      split.ground_indices.push_back(idx);
    } else {
      split.rest.points.push_back(p);
      split.rest_indices.push_back(idx);
    }
  }
  return split;
}

}  // namespace semcloud
