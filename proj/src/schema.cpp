#include "semcloud/schema.hpp"

#include <algorithm>

namespace semcloud {

void seed_schema(KnowledgeBase& kb) {
  using namespace vocab;
  for (const auto& cls : {Algorithm, Geometry, DomainConcept, Characteristics, Scene}) {
    kb.declare_class(cls);
  }
  kb.declare_class(Furniture, {DomainConcept});
  kb.declare_class(FacilityElement, {DomainConcept});
  kb.declare_class(VerticalBoundingBox, {Geometry});
  kb.declare_class(HorizontalBoundingBox, {Geometry});
  kb.declare_class(Ground, {Geometry});

  for (const auto& p : {hasTopologicRelation, IsDeseignedFor, hasGeometry, hasCharacteristics}) {
    kb.declare_property(p, PropertyKind::Object);
  }
  for (const auto& p : {Intersect, Touch, Upper, Perpendicular, IsDistantFrom, IsConnected}) {
    kb.declare_property(p, PropertyKind::Object, hasTopologicRelation);
  }
  for (const auto& p : {hasPointCloudDirectory, hasHeight, hasWidth, hasDepth, hasFootprint,
                        hasCentroidX, hasCentroidY, hasCentroidZ, hasPointCount}) {
    kb.declare_property(p, PropertyKind::Data);
  }
}

void assert_box_properties(KnowledgeBase& kb, const Name& individual, const Aabb& box) {
  using namespace vocab;
  const Point3 e = box.extent();
  const Point3 c = box.center();
  auto put = [&](const Name& property, double value) {
    kb.assert_fact({individual, property, Literal::real(value)});
  };
  put(hasWidth, e.x);
  put(hasDepth, e.y);
  put(hasHeight, e.z);
  put(hasFootprint, std::max(e.x, e.y));
  put(hasCentroidX, c.x);
  put(hasCentroidY, c.y);
  put(hasCentroidZ, c.z);
}

std::optional<Aabb> box_of(const KnowledgeBase& kb, const Name& individual) {
  using namespace vocab;
  double values[6];
  const Name* properties[6] = {&hasCentroidX, &hasCentroidY, &hasCentroidZ,
                               &hasWidth,     &hasDepth,     &hasHeight};
  for (int i = 0; i < 6; ++i) {
    auto lit = kb.data_value(individual, *properties[i]);
    if (!lit || !lit->is_real()) return std::nullopt;
    values[i] = lit->as_real();
  }
  if (values[3] < 0 || values[4] < 0 || values[5] < 0) return std::nullopt;
  return Aabb::from_center({values[0], values[1], values[2]}, {values[3], values[4], values[5]});
}

}  // namespace semcloud
