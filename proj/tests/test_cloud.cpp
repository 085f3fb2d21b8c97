#include <doctest.h>

#include <fstream>
#include <sstream>

#include "semcloud/cloud.hpp"
#include "semcloud/error.hpp"
#include "semcloud/synth.hpp"
#include "support/checks.hpp"

using namespace semcloud;
using semcloud::testing::TempDir;

TEST_SUITE("cloud") {

TEST_CASE("xyz parsing") {
  CHECK(parse_xyz("0 0 0\n1 2 3").size() == 2);
  CHECK(parse_xyz("# header\n0 0 0\n\n1 2 3 255 0 0\n").size() == 2);
  const auto c = parse_xyz("1.5\t-2 3e1\n");
  CHECK(c.points[0] == Point3{1.5, -2, 30});

  try {
    parse_xyz("1 2 x\n", "bad.xyz");
    FAIL("expected an error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("bad.xyz:1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_xyz("1 2\n"), IoError);
  CHECK_THROWS_AS(parse_xyz("# nothing\n"), IoError);
}

TEST_CASE("files and scene directories") {
  TempDir dir;
  {
    std::ofstream(dir.path() / "b.xyz") << "5 5 5\n";
    std::ofstream(dir.path() / "a.xyz") << "1 1 1\n2 2 2\n";
    std::ofstream(dir.path() / "notes.txt") << "ignored\n";
  }
  const auto scene = load_scene_directory(dir.path());
  REQUIRE(scene.size() == 3);
  CHECK(scene.points[0] == Point3{1, 1, 1});
  CHECK(scene.points[2] == Point3{5, 5, 5});
  CHECK_THROWS_AS(load_scene_directory(dir.path() / "missing"), IoError);
  CHECK_THROWS_AS(load_xyz(dir.path() / "missing.xyz"), IoError);

  std::ostringstream out;
  write_xyz(out, scene);
  CHECK(parse_xyz(out.str()).points == scene.points);
}

TEST_CASE("voxelize") {
  PointCloud near{{{0, 0, 0}, {0.3, 0, 0}}, ""};
  CHECK(voxelize(near, 1.0).cells.size() == 1);
  PointCloud apart{{{0, 0, 0}, {1.5, 0, 0}}, ""};
  CHECK(voxelize(apart, 1.0).cells.size() == 2);

  PointCloud grid;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 10; ++k) grid.points.push_back({i + 0.5, j + 0.5, k + 0.5});
  const auto v = voxelize(grid, 1.0);
  CHECK(v.cells.size() == 1000);
  CHECK(v.point_count() == 1000);
  for (const auto& [cell, members] : v.cells) CHECK(members.size() == 1);
  CHECK_THROWS(voxelize(grid, 0.0));
}

TEST_CASE("ground removal") {
  SceneSpec spec;
  spec.length_m = 20;
  spec.ground.extent = std::array<double, 4>{0, -3, 20, 3};
  spec.objects.push_back({"Mast", {10, 0, 3}, {0.3, 0.3, 6}});
  const auto [cloud, truth] = generate(spec);
  const auto split = remove_ground(cloud, 0.30);

  std::size_t plane_in_ground = 0;
  for (auto i : split.ground_indices) {
    if (i >= truth.ground_begin && i < truth.ground_end) ++plane_in_ground;
  }
  const std::size_t plane = truth.ground_end - truth.ground_begin;
  CHECK(plane_in_ground >= plane * 99 / 100);
  CHECK(split.ground.size() + split.rest.size() == cloud.size());
  CHECK(split.ground_indices.size() == split.ground.size());

  // Uniform z: the lowest bin wins and the split is still a partition.
  PointCloud column;
  for (int i = 0; i < 100; ++i) column.points.push_back({0, 0, i * 0.1});
  const auto s = remove_ground(column, 0.3);
  CHECK(s.slab_floor == doctest::Approx(0.0));
  CHECK(s.ground.size() + s.rest.size() == 100);
  CHECK(s.ground.size() >= 3);

  CHECK_THROWS_AS(remove_ground(PointCloud{}), GeometryError);
}

}
