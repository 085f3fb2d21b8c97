#include "semcloud/topo.hpp"

#include <algorithm>
#include <utility>

#include "semcloud/error.hpp"
#include "semcloud/schema.hpp"

namespace semcloud {

namespace {

double overlap(const Aabb& a, const Aabb& b, int axis) {
  return std::min(a.max_corner()[axis], b.max_corner()[axis]) -
         std::max(a.min_corner()[axis], b.min_corner()[axis]);
}

using PairTest = bool (*)(const Aabb&, const Aabb&, std::span<const double>);

struct Relation {
  const char* local;
  const Name* property;
  std::size_t required_extras;
  std::size_t optional_extras;
  PairTest test;
};

std::vector<std::pair<Name, Aabb>> boxed_geometry(const KnowledgeBase& kb) {
  std::vector<std::pair<Name, Aabb>> out;
  for (const auto& individual : kb.individuals_of(vocab::Geometry)) {
    if (auto box = box_of(kb, individual)) out.emplace_back(individual, *box);
  }
  return out;
}

BuiltinSpec relation_builtin(const Relation& relation, std::vector<double> defaults) {
  BuiltinSpec spec;
  spec.name = Name("3D_swrlb_Topology", relation.local);
  spec.min_arity = 2 + relation.required_extras;
  spec.max_arity = spec.min_arity + relation.optional_extras;
  spec.behavior = BuiltinBehavior::Relational;
  spec.bindable = {0, 1};
  spec.evaluate = [relation, defaults = std::move(defaults), name = spec.name](
                      KnowledgeBase& kb, std::span<const ArgSlot> args) {
    std::vector<double> extras = defaults;
    for (std::size_t i = 2; i < args.size(); ++i) {
      const auto* lit = std::get_if<Literal>(&*args[i]);
      if (lit == nullptr || !lit->is_real()) {
        throw EngineError("argument " + std::to_string(i + 1) + " of " + name.str() +
                          " must be a real literal");
      }
      extras[i - 2] = lit->as_real();
    }
    if (std::any_of(extras.begin(), extras.end(), [](double v) { return v < 0.0; })) {
      throw EngineError(name.str() + " tolerances must be non-negative");
    }

    std::optional<std::vector<std::pair<Name, Aabb>>> universe;
    auto side = [&](const ArgSlot& slot) -> std::vector<std::pair<Name, Aabb>> {
      if (slot) {
        const auto* individual = std::get_if<Name>(&*slot);
        if (individual == nullptr) return {};
        auto box = box_of(kb, *individual);
        if (!box) return {};
        return {{*individual, *box}};
      }
      if (!universe) universe = boxed_geometry(kb);
      return *universe;
    };
    const auto lhs = side(args[0]);
    const auto rhs = side(args[1]);
    const bool both_bound = args[0].has_value() && args[1].has_value();

    std::vector<std::vector<Value>> out;
    for (const auto& [a, box_a] : lhs) {
      for (const auto& [b, box_b] : rhs) {
        if (a == b && !both_bound) continue;
        if (!relation.test(box_a, box_b, extras)) continue;
        kb.assert_fact({a, *relation.property, b});
        std::vector<Value> tuple{a, b};
        for (std::size_t i = 2; i < args.size(); ++i) tuple.push_back(*args[i]);
        out.push_back(std::move(tuple));
      }
    }
    return out;
  };
  return spec;
}

}  // namespace

void TopoParams::validate() const {
  if (contact_eps < 0 || upper_eps < 0 || distance_tolerance < 0) {
    throw GeometryError("topology tolerances must be non-negative");
  }
}

bool intersect(const Aabb& a, const Aabb& b) {
  return overlap(a, b, 0) > 0 && overlap(a, b, 1) > 0 && overlap(a, b, 2) > 0;
}

bool touch(const Aabb& a, const Aabb& b, double contact_eps) {
  return !intersect(a, b) && gap_distance(a, b) <= contact_eps;
}

bool upper(const Aabb& a, const Aabb& b, double upper_eps) {
  return a.min_corner().z >= b.max_corner().z - upper_eps && overlap(a, b, 0) > 0 &&
         overlap(a, b, 1) > 0;
}

bool perpendicular(const Aabb& a, const Aabb& b) { return dominant_axis(a) != dominant_axis(b); }

bool is_distant_from(const Aabb& a, const Aabb& b, double distance, double tolerance) {
  return std::abs((a.center() - b.center()).norm() - distance) <= tolerance;
}

bool is_connected(const Aabb& a, const Aabb& b, double contact_eps) {
  return intersect(a, b) || touch(a, b, contact_eps);
}

void register_topology_builtins(BuiltinRegistry& registry, const TopoParams& params) {
  params.validate();
  using namespace vocab;
  static const Relation intersect_rel{
      "Intersect", &Intersect, 0, 0,
      [](const Aabb& a, const Aabb& b, std::span<const double>) { return intersect(a, b); }};
  static const Relation touch_rel{
      "Touch", &Touch, 0, 1,
      [](const Aabb& a, const Aabb& b, std::span<const double> x) { return touch(a, b, x[0]); }};
  static const Relation upper_rel{
      "Upper", &Upper, 0, 1,
      [](const Aabb& a, const Aabb& b, std::span<const double> x) { return upper(a, b, x[0]); }};
  static const Relation perpendicular_rel{
      "Perpendicular", &Perpendicular, 0, 0,
      [](const Aabb& a, const Aabb& b, std::span<const double>) { return perpendicular(a, b); }};
  static const Relation distant_rel{"IsDistantFrom", &IsDistantFrom, 1, 1,
                                    [](const Aabb& a, const Aabb& b, std::span<const double> x) {
                                      return is_distant_from(a, b, x[0], x[1]);
                                    }};
  static const Relation connected_rel{
      "IsConnected", &IsConnected, 0, 1, [](const Aabb& a, const Aabb& b, std::span<const double> x) {
        return is_connected(a, b, x[0]);
      }};

  registry.add(relation_builtin(intersect_rel, {}));
  registry.add(relation_builtin(touch_rel, {params.contact_eps}));
  registry.add(relation_builtin(upper_rel, {params.upper_eps}));
  registry.add(relation_builtin(perpendicular_rel, {}));
  registry.add(relation_builtin(distant_rel, {0.0, params.distance_tolerance}));
  registry.add(relation_builtin(connected_rel, {params.contact_eps}));
}

}  // namespace semcloud
