#pragma once

#include <optional>

#include "semcloud/geom.hpp"
#include "semcloud/kb.hpp"

namespace semcloud::vocab {

// Top-level classes.
inline const Name Algorithm{"dbb", "Algorithm"};
inline const Name Geometry{"dbb", "Geometry"};
inline const Name DomainConcept{"dbb", "DomainConcept"};
inline const Name Characteristics{"dbb", "Characteristics"};
inline const Name Scene{"dbb", "Scene"};

inline const Name Furniture{"dbb", "Furniture"};
inline const Name FacilityElement{"dbb", "FacilityElement"};

// Geometry produced by the processing built-ins.
inline const Name VerticalBoundingBox{"dbb", "Vertical_BoundingBox"};
inline const Name HorizontalBoundingBox{"dbb", "Horizontal_BoundingBox"};
inline const Name Ground{"dbb", "Ground"};

// General object properties.
inline const Name hasTopologicRelation{"dbb", "hasTopologicRelation"};
inline const Name IsDeseignedFor{"dbb", "IsDeseignedFor"};
inline const Name hasGeometry{"dbb", "hasGeometry"};
inline const Name hasCharacteristics{"dbb", "hasCharacteristics"};

// Topological relations, all under hasTopologicRelation.
inline const Name Intersect{"dbb", "Intersect"};
inline const Name Touch{"dbb", "Touch"};
inline const Name Upper{"dbb", "Upper"};
inline const Name Perpendicular{"dbb", "Perpendicular"};
inline const Name IsDistantFrom{"dbb", "IsDistantFrom"};
inline const Name IsConnected{"dbb", "IsConnected"};

// Data properties.
inline const Name hasPointCloudDirectory{"dbb", "hasPointCloudDirectory"};
inline const Name hasHeight{"dbb", "hasHeight"};
inline const Name hasWidth{"dbb", "hasWidth"};
inline const Name hasDepth{"dbb", "hasDepth"};
inline const Name hasFootprint{"dbb", "hasFootprint"};
inline const Name hasCentroidX{"dbb", "hasCentroidX"};
inline const Name hasCentroidY{"dbb", "hasCentroidY"};
inline const Name hasCentroidZ{"dbb", "hasCentroidZ"};
inline const Name hasPointCount{"dbb", "hasPointCount"};

}  // namespace semcloud::vocab

namespace semcloud {

/// Declares the top-level classes, the general and topological object
/// properties, the geometry classes and the box data properties.
void seed_schema(KnowledgeBase& kb);

/// Asserts the box data properties of `individual`: extents (width = x,
/// depth = y, height = z), footprint = max(width, depth), and the box centre.
void assert_box_properties(KnowledgeBase& kb, const Name& individual, const Aabb& box);

/// Rebuilds the box from its data properties; nullopt if any is missing.
std::optional<Aabb> box_of(const KnowledgeBase& kb, const Name& individual);

}  // namespace semcloud
