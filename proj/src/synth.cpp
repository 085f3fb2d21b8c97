#include "semcloud/synth.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

#include "semcloud/error.hpp"

namespace semcloud {

namespace {

using nlohmann::json;

std::string object_id(std::size_t index) { return "obj_" + std::to_string(index); }

Aabb object_box(const SceneObject& o) { return Aabb::from_center(o.center, o.dims); }

bool boxes_overlap(const Aabb& a, const Aabb& b) {
  for (int axis = 0; axis < 3; ++axis) {
    if (std::min(a.max_corner()[axis], b.max_corner()[axis]) -
            std::max(a.min_corner()[axis], b.min_corner()[axis]) <=
        0.0) {
      return false;
    }
  }
  return true;
}

class Sampler {
 public:
  Sampler(std::uint64_t seed, double noise_sigma)
      : rng_(seed), noise_(0.0, noise_sigma > 0 ? noise_sigma : 1.0), jitter_(noise_sigma > 0) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  Point3 jitter(Point3 p) {
    if (!jitter_) return p;
    return {p.x + noise_(rng_), p.y + noise_(rng_), p.z + noise_(rng_)};
  }

  // Uniform samples on the rectangle spanned from `origin` by `u` and `v`.
  void face(std::vector<Point3>& out, Point3 origin, Point3 u, Point3 v, double density) {
    const double area = u.norm() * v.norm();
    const auto n = static_cast<std::size_t>(std::llround(area * density));
    for (std::size_t i = 0; i < n; ++i) {
      const double s = uniform(0.0, 1.0);
      const double t = uniform(0.0, 1.0);
      out.push_back(jitter(origin + u * s + v * t));
    }
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> noise_;
  bool jitter_;
};

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

Point3 point_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw SpecError(std::string(what) + " must be an array of 3 numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

std::array<double, 4> SceneSpec::ground_extent() const {
  return ground.extent.value_or(std::array<double, 4>{0.0, -6.0, length_m, 6.0});
}

void SceneSpec::validate() const {
  if (!(length_m > 0)) throw SpecError("length_m must be positive");
  if (!(points_per_m2 > 0) || !(ground_density() > 0)) {
    throw SpecError("sampling densities must be positive");
  }
  if (!(noise_sigma >= 0)) throw SpecError("noise_sigma must be non-negative");
  const auto extent = ground_extent();
  if (!(extent[0] < extent[2]) || !(extent[1] < extent[3])) {
    throw SpecError("ground extent must have x_min < x_max and y_min < y_max");
  }

  std::vector<Aabb> boxes;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& o = objects[i];
    if (!(o.dims.x > 0) || !(o.dims.y > 0) || !(o.dims.z > 0) || !o.center.finite()) {
      throw SpecError(object_id(i) + " needs a finite centre and positive dimensions");
    }
    const Aabb box = object_box(o);
    if (box.min_corner().x < extent[0] || box.max_corner().x > extent[2] ||
        box.min_corner().y < extent[1] || box.max_corner().y > extent[3] ||
        box.min_corner().x < 0.0 || box.max_corner().x > length_m) {
      throw SpecError(object_id(i) + " lies outside the scene extent");
    }
    boxes.push_back(box);
  }

  std::string clashes;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      if (boxes_overlap(boxes[i], boxes[j])) {
        clashes += (clashes.empty() ? "" : ", ") + object_id(i) + "/" + object_id(j);
      }
    }
  }
  if (!clashes.empty()) throw SpecError("overlapping objects: " + clashes);
}

std::pair<PointCloud, GroundTruth> generate(const SceneSpec& spec) {
  spec.validate();
  Sampler sampler(spec.seed, spec.noise_sigma);
  PointCloud cloud;
  cloud.source_path = "<synthetic>";
  GroundTruth truth;

  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    const auto& o = spec.objects[i];
    const Aabb box = object_box(o);
    const Point3 lo = box.min_corner();
    const Point3 hi = box.max_corner();
    const Point3 ux{o.dims.x, 0, 0};
    const Point3 uy{0, o.dims.y, 0};
    const Point3 uz{0, 0, o.dims.z};
    const double d = spec.points_per_m2;

    TruthObject t{object_id(i), o.cls, box, cloud.size(), 0};
    auto& pts = cloud.points;
    sampler.face(pts, lo, ux, uy, d);
    sampler.face(pts, {lo.x, lo.y, hi.z}, ux, uy, d);
    sampler.face(pts, lo, ux, uz, d);
    sampler.face(pts, {lo.x, hi.y, lo.z}, ux, uz, d);
    sampler.face(pts, lo, uy, uz, d);
    sampler.face(pts, {hi.x, lo.y, lo.z}, uy, uz, d);
    t.end = cloud.size();
    truth.objects.push_back(std::move(t));
  }

  const auto extent = spec.ground_extent();
  truth.ground_begin = cloud.size();
  sampler.face(cloud.points, {extent[0], extent[1], spec.ground.z},
               {extent[2] - extent[0], 0, 0}, {0, extent[3] - extent[1], 0},
               spec.ground_density());
  truth.ground_end = cloud.size();
  return {std::move(cloud), std::move(truth)};
}

SceneSpec reference_spec() {
  SceneSpec spec;
  spec.length_m = 2200.0;
  spec.points_per_m2 = 400.0;
  spec.noise_sigma = 0.0;
  spec.seed = 42;
  spec.ground.extent = std::array<double, 4>{0.0, -6.0, 2200.0, 6.0};
  spec.ground.z = 0.0;
  spec.ground.points_per_m2 = 25.0;

  // Catenary masts on the +y side.
  for (int i = 0; i < 13; ++i) {
    const double height = 6.5 + 0.25 * (i % 7);
    spec.objects.push_back({"Mast", {50.0 + 160.0 * i, 3.5, height / 2}, {0.3, 0.3, height}});
  }
  // Switchgear cabinets on the -y side.
  for (int i = 0; i < 15; ++i) {
    const Point3 dims{0.8 + 0.1 * (i % 5), 0.6 + 0.1 * (i % 3), 1.5 + 0.1 * (i % 6)};
    spec.objects.push_back({"Schaltanlage", {80.0 + 140.0 * i, -4.0, dims.z / 2}, dims});
  }
  // Distant/main signal pairs, 1000, 1005 and 995 m apart.
  const double pairs[3][2] = {{150.0, 1150.0}, {400.0, 1405.0}, {640.0, 1635.0}};
  for (const auto& pair : pairs) {
    spec.objects.push_back({"DistantSignal", {pair[0], 2.5, 1.7}, {0.3, 0.3, 3.4}});
    spec.objects.push_back({"MainSignal", {pair[1], 2.5, 1.7}, {0.3, 0.3, 3.4}});
  }
  return spec;
}

SceneSpec parse_scene_spec(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw SpecError("scene spec must be a JSON object");
    SceneSpec spec;
    spec.length_m = j.value("length_m", spec.length_m);
    spec.points_per_m2 = j.value("points_per_m2", spec.points_per_m2);
    spec.noise_sigma = j.value("noise_sigma", spec.noise_sigma);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("ground")) {
      const auto& g = j.at("ground");
      if (g.contains("extent")) {
        const auto& e = g.at("extent");
        if (!e.is_array() || e.size() != 4) throw SpecError("ground.extent must hold 4 numbers");
        spec.ground.extent = std::array<double, 4>{e[0].get<double>(), e[1].get<double>(),
                                                   e[2].get<double>(), e[3].get<double>()};
      }
      spec.ground.z = g.value("z", 0.0);
      if (g.contains("points_per_m2")) spec.ground.points_per_m2 = g.at("points_per_m2").get<double>();
    }
    for (const auto& o : j.value("objects", json::array())) {
      spec.objects.push_back({o.at("class").get<std::string>(),
                              point_from_json(o.at("center"), "center"),
                              point_from_json(o.at("dims"), "dims")});
    }
    return spec;
  } catch (const json::exception& e) {
    throw SpecError(std::string("invalid scene spec: ") + e.what());
  }
}

std::string scene_spec_to_json(const SceneSpec& spec) {
  json j;
  j["length_m"] = spec.length_m;
  j["points_per_m2"] = spec.points_per_m2;
  j["noise_sigma"] = spec.noise_sigma;
  j["seed"] = spec.seed;
  const auto extent = spec.ground_extent();
  j["ground"] = {{"extent", extent}, {"z", spec.ground.z}, {"points_per_m2", spec.ground_density()}};
  j["objects"] = json::array();
  for (const auto& o : spec.objects) {
    j["objects"].push_back({{"class", o.cls}, {"center", point_json(o.center)},
                            {"dims", point_json(o.dims)}});
  }
  return j.dump(2) + "\n";
}

std::string truth_to_json(const GroundTruth& truth) {
  json j;
  j["objects"] = json::array();
  for (const auto& t : truth.objects) {
    j["objects"].push_back({{"id", t.id},
                            {"class", t.cls},
                            {"min", point_json(t.box.min_corner())},
                            {"max", point_json(t.box.max_corner())},
                            {"begin", t.begin},
                            {"end", t.end}});
  }
  j["ground"] = {{"begin", truth.ground_begin}, {"end", truth.ground_end}};
  return j.dump(2) + "\n";
}

GroundTruth parse_truth(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    GroundTruth truth;
    for (const auto& o : j.at("objects")) {
      truth.objects.push_back({o.at("id").get<std::string>(), o.at("class").get<std::string>(),
                               Aabb(point_from_json(o.at("min"), "min"),
                                    point_from_json(o.at("max"), "max")),
                               o.at("begin").get<std::size_t>(), o.at("end").get<std::size_t>()});
    }
    truth.ground_begin = j.at("ground").at("begin").get<std::size_t>();
    truth.ground_end = j.at("ground").at("end").get<std::size_t>();
    return truth;
  } catch (const json::exception& e) {
    throw SpecError(std::string("invalid ground truth: ") + e.what());
  }
}

}  // namespace semcloud
